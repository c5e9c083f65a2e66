#include "baselines.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace wsnloc {

DvHopTables dvhop_tables(const Deployment& d, const CommGraph& g) {
    auto anchors = d.anchor_ids();

    DvHopTables t;
    for (NodeId a : anchors) {
        double dist_sum = 0.0;
        long hop_sum = 0;
        for (NodeId b : anchors) {
            if (b == a) continue;
            const auto& row = g.hop_table[static_cast<std::size_t>(b)];
            auto it = row.find(a);
            if (it == row.end()) continue;  // peer anchor unreachable
            dist_sum += distance(d.nodes[static_cast<std::size_t>(a)].true_pos,
                                 d.nodes[static_cast<std::size_t>(b)].true_pos);
            hop_sum += it->second;
        }
        if (hop_sum > 0) t.hop_size[a] = dist_sum / static_cast<double>(hop_sum);
    }
    if (t.hop_size.empty())
        throw_error(ErrorCode::InsufficientAnchors,
                    "DV-Hop needs at least two mutually reachable anchors");

    for (NodeId u : d.unknown_ids()) {
        const auto& row = g.hop_table[static_cast<std::size_t>(u)];
        if (row.empty()) continue;
        NodeId nearest = nearest_anchor(g, u).first;
        auto hs = t.hop_size.find(nearest);
        if (hs == t.hop_size.end()) continue;  // isolated anchor cluster
        for (const auto& [anchor, hops] : row)
            t.est_dist[{u, anchor}] = hs->second * static_cast<double>(hops);
    }
    return t;
}

bool multilaterate(const std::vector<Vec2>& anchors,
                   const std::vector<double>& dists, Vec2& out) {
    const std::size_t m = anchors.size();
    if (m < 3) return false;

    // Subtract the last circle equation from the others to linearize.
    const Vec2 ref = anchors[m - 1];
    const double dref = dists[m - 1];
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        double ax = 2.0 * (ref.x - anchors[i].x);
        double ay = 2.0 * (ref.y - anchors[i].y);
        double rhs = dists[i] * dists[i] - dref * dref -
                     (anchors[i].x * anchors[i].x + anchors[i].y * anchors[i].y) +
                     (ref.x * ref.x + ref.y * ref.y);
        a11 += ax * ax;
        a12 += ax * ay;
        a22 += ay * ay;
        b1 += ax * rhs;
        b2 += ay * rhs;
    }
    double det = a11 * a22 - a12 * a12;
    double scale = a11 + a22;
    if (!(det > 1e-9 * scale * scale)) return false;  // collinear anchors
    out = {(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det};
    return true;
}

LocalizationResult dvhop_localize(const Deployment& d, const CommGraph& g,
                                  const DvHopTables& tables) {
    LocalizationResult result;
    for (NodeId u : d.unknown_ids()) {
        std::vector<Vec2> anchors;
        std::vector<double> dists;
        for (const auto& [anchor, hops] :
             g.hop_table[static_cast<std::size_t>(u)]) {
            auto it = tables.est_dist.find({u, anchor});
            if (it == tables.est_dist.end()) continue;
            anchors.push_back(d.nodes[static_cast<std::size_t>(anchor)].true_pos);
            dists.push_back(it->second);
        }
        if (anchors.size() < 3) {
            result.skipped.push_back(u);
            result.status[u] = anchors.empty() ? NodeStatus::NoAnchor
                                               : NodeStatus::TooFewAnchors;
            continue;
        }
        Vec2 est;
        if (!multilaterate(anchors, dists, est)) {
            result.skipped.push_back(u);
            result.status[u] = NodeStatus::DegenerateGeometry;
            continue;
        }
        result.estimates[u] = d.area.clamp(est);
        result.status[u] = NodeStatus::Ok;
    }
    return result;
}

std::pair<LocalizationResult, std::map<NodeId, Trace>> baseline_localize(
    BaselineMethod method, const Deployment& d, const CommGraph& g,
    const DvHopTables& tables, const SwarmParams& p, RandomStream& rng) {
    SwarmParams bp = p;
    bp.c1 = 2.0;  // conventional defaults for the non-tuned baselines
    bp.c2 = 2.0;
    SelectorPolicy policy =
        method == BaselineMethod::PSO ? pso_only_policy() : coin_flip_policy();

    LocalizationResult result;
    std::map<NodeId, Trace> traces;
    for (NodeId u : d.unknown_ids()) {
        std::vector<Vec2> anchors;
        std::vector<double> dists;
        for (const auto& [anchor, hops] :
             g.hop_table[static_cast<std::size_t>(u)]) {
            auto it = tables.est_dist.find({u, anchor});
            if (it == tables.est_dist.end()) continue;
            anchors.push_back(d.nodes[static_cast<std::size_t>(anchor)].true_pos);
            dists.push_back(it->second);
        }
        if (anchors.empty()) {
            result.skipped.push_back(u);
            result.status[u] = NodeStatus::NoAnchor;
            continue;
        }

        double inv_m = 1.0 / static_cast<double>(anchors.size());
        auto fitness = [&](Vec2 x) {
            double sum = 0.0;
            for (std::size_t i = 0; i < anchors.size(); ++i) {
                double r = dists[i] - distance(x, anchors[i]);
                sum += r * r;
            }
            return sum * inv_m;
        };

        std::vector<Particle> swarm;
        swarm.reserve(static_cast<std::size_t>(bp.n_particles));
        for (int i = 0; i < bp.n_particles; ++i) {
            Particle pt;
            pt.pos = {rng.uniform(0.0, d.area.width),
                      rng.uniform(0.0, d.area.height)};
            pt.vel = {rng.uniform(-bp.comm_range, bp.comm_range),
                      rng.uniform(-bp.comm_range, bp.comm_range)};
            pt.pbest = pt.pos;
            swarm.push_back(pt);
        }
        auto opt = optimize(fitness, std::move(swarm), d.area, bp, policy, rng);
        result.estimates[u] = opt.best;
        result.per_node_fitness[u] = opt.best_fitness;
        result.status[u] = anchors.size() >= 3 ? NodeStatus::Ok
                                               : NodeStatus::AmbiguousGeometry;
        traces[u] = std::move(opt.trace);
    }
    return {std::move(result), std::move(traces)};
}

}  // namespace wsnloc
