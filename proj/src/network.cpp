#include "network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "errors.hpp"
#include "json.hpp"

namespace wsnloc {

std::vector<NodeId> Deployment::anchor_ids() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes)
        if (n.kind == NodeKind::Anchor) out.push_back(n.id);
    return out;
}

std::vector<NodeId> Deployment::unknown_ids() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes)
        if (n.kind == NodeKind::Unknown) out.push_back(n.id);
    return out;
}

bool CommGraph::has_edge(NodeId j, NodeId k) const {
    for (const auto& e : adjacency[static_cast<std::size_t>(j)])
        if (e.neighbor == k) return true;
    return false;
}

Deployment deploy(int n_nodes, double anchor_ratio, Rect area,
                  double comm_range, RandomStream& rng) {
    if (n_nodes < 3)
        throw_error(ErrorCode::InvalidArgument, "n_nodes must be >= 3");
    if (!(anchor_ratio > 0.0 && anchor_ratio < 1.0))
        throw_error(ErrorCode::InvalidArgument,
                    "anchor_ratio must be in (0, 1)");
    if (!(comm_range > 0.0))
        throw_error(ErrorCode::InvalidArgument, "comm_range must be > 0");
    int n_anchors = static_cast<int>(std::lround(n_nodes * anchor_ratio));
    if (n_anchors < 1)
        throw_error(ErrorCode::InvalidArgument,
                    "anchor_ratio yields zero anchors");

    Deployment d;
    d.area = area;
    d.comm_range = comm_range;
    d.nodes.resize(static_cast<std::size_t>(n_nodes));
    for (int i = 0; i < n_nodes; ++i) {
        d.nodes[static_cast<std::size_t>(i)].id = i;
        d.nodes[static_cast<std::size_t>(i)].true_pos = {
            rng.uniform(0.0, area.width), rng.uniform(0.0, area.height)};
    }

    // Partial Fisher-Yates picks the anchor set uniformly.
    std::vector<int> ids(static_cast<std::size_t>(n_nodes));
    for (int i = 0; i < n_nodes; ++i) ids[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < n_anchors; ++i) {
        int j = i + static_cast<int>(rng.next_u64() %
                                     static_cast<std::uint64_t>(n_nodes - i));
        std::swap(ids[static_cast<std::size_t>(i)],
                  ids[static_cast<std::size_t>(j)]);
        d.nodes[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])]
            .kind = NodeKind::Anchor;
    }
    return d;
}

CommGraph build_graph(const Deployment& d) {
    const auto n = d.nodes.size();
    CommGraph g;
    g.adjacency.resize(n);
    g.hop_table.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            double dist = distance(d.nodes[j].true_pos, d.nodes[k].true_pos);
            if (dist <= d.comm_range) {
                g.adjacency[j].push_back({d.nodes[k].id, dist});
                g.adjacency[k].push_back({d.nodes[j].id, dist});
            }
        }
    }

    for (const auto& anchor : d.nodes) {
        if (anchor.kind != NodeKind::Anchor) continue;
        std::vector<int> hops(n, -1);
        std::deque<NodeId> queue;
        hops[static_cast<std::size_t>(anchor.id)] = 0;
        queue.push_back(anchor.id);
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (const auto& e : g.adjacency[static_cast<std::size_t>(u)]) {
                if (hops[static_cast<std::size_t>(e.neighbor)] < 0) {
                    hops[static_cast<std::size_t>(e.neighbor)] =
                        hops[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(e.neighbor);
                }
            }
        }
        for (std::size_t v = 0; v < n; ++v)
            if (hops[v] >= 0) g.hop_table[v][anchor.id] = hops[v];
    }
    return g;
}

std::pair<NodeId, int> nearest_anchor(const CommGraph& g, NodeId node) {
    const auto& row = g.hop_table[static_cast<std::size_t>(node)];
    if (row.empty())
        throw_error(ErrorCode::Unlocalizable,
                    "node " + std::to_string(node) + " reaches no anchor");
    NodeId best = -1;
    int best_hops = std::numeric_limits<int>::max();
    for (const auto& [anchor, hops] : row) {
        if (hops < best_hops) {  // map iterates in id order, so ties keep
            best = anchor;       // the smallest anchor id
            best_hops = hops;
        }
    }
    return {best, best_hops};
}

double measure_distance(const Deployment& d, const CommGraph& g, NodeId j,
                        NodeId k, double noise_sigma, RandomStream& rng) {
    const auto& row = g.adjacency[static_cast<std::size_t>(j)];
    auto it = std::find_if(row.begin(), row.end(),
                           [k](const Edge& e) { return e.neighbor == k; });
    if (it == row.end())
        throw_error(ErrorCode::NotNeighbors,
                    "nodes " + std::to_string(j) + " and " +
                        std::to_string(k) + " are not one-hop neighbors");
    double dist = it->true_distance;
    if (noise_sigma > 0.0) dist += noise_sigma * rng.normal();
    return std::max(dist, 0.0);
}

std::string deployment_to_json(const Deployment& d) {
    nlohmann::ordered_json j;
    j["area_width"] = d.area.width;
    j["area_height"] = d.area.height;
    j["comm_range"] = d.comm_range;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : d.nodes) {
        j["nodes"].push_back({{"id", n.id},
                              {"x", n.true_pos.x},
                              {"y", n.true_pos.y},
                              {"kind", n.kind == NodeKind::Anchor
                                           ? "anchor"
                                           : "unknown"}});
    }
    return j.dump(2);
}

Deployment deployment_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw_error(ErrorCode::ParseError,
                    std::string("deployment JSON: ") + e.what());
    }
    auto require = [&](const char* key) {
        if (!j.contains(key))
            throw_error(ErrorCode::ParseError,
                        std::string("deployment JSON: missing field '") + key +
                            "'");
    };
    require("area_width");
    require("area_height");
    require("comm_range");
    require("nodes");

    Deployment d;
    try {
        d.area = {j["area_width"].get<double>(), j["area_height"].get<double>()};
        d.comm_range = j["comm_range"].get<double>();
        for (const auto& jn : j["nodes"]) {
            Node n;
            n.id = jn.at("id").get<NodeId>();
            n.true_pos = {jn.at("x").get<double>(), jn.at("y").get<double>()};
            auto kind = jn.at("kind").get<std::string>();
            if (kind == "anchor")
                n.kind = NodeKind::Anchor;
            else if (kind == "unknown")
                n.kind = NodeKind::Unknown;
            else
                throw_error(ErrorCode::ParseError,
                            "deployment JSON: bad 'kind' value '" + kind + "'");
            d.nodes.push_back(n);
        }
    } catch (const nlohmann::json::exception& e) {
        throw_error(ErrorCode::ParseError,
                    std::string("deployment JSON: ") + e.what());
    }

    // Validate the Deployment invariants.
    if (d.nodes.empty())
        throw_error(ErrorCode::ParseError, "deployment JSON: empty 'nodes'");
    if (!(d.comm_range > 0.0))
        throw_error(ErrorCode::ParseError,
                    "deployment JSON: 'comm_range' must be > 0");
    bool any_anchor = false;
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (d.nodes[i].id != static_cast<NodeId>(i))
            throw_error(ErrorCode::ParseError,
                        "deployment JSON: node ids must be dense 0..n-1 "
                        "(offending id " +
                            std::to_string(d.nodes[i].id) + ")");
        if (!d.area.contains(d.nodes[i].true_pos))
            throw_error(ErrorCode::ParseError,
                        "deployment JSON: node " + std::to_string(d.nodes[i].id) +
                            " lies outside the area");
        any_anchor |= d.nodes[i].kind == NodeKind::Anchor;
    }
    if (!any_anchor)
        throw_error(ErrorCode::ParseError,
                    "deployment JSON: at least one node must be an anchor");
    return d;
}

std::uint64_t fnv1a(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t deployment_hash(const Deployment& d) {
    auto text = deployment_to_json(d);
    return fnv1a(text.data(), text.size());
}

}  // namespace wsnloc
