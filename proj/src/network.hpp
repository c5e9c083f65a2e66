#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace wsnloc {

using NodeId = int;

enum class NodeKind { Anchor, Unknown };

struct Node {
    NodeId id = 0;
    Vec2 true_pos;
    NodeKind kind = NodeKind::Unknown;
};

// A static sensor deployment. Immutable after construction.
struct Deployment {
    Rect area;
    std::vector<Node> nodes;
    double comm_range = 0.0;  // maximum one-hop range L

    std::vector<NodeId> anchor_ids() const;
    std::vector<NodeId> unknown_ids() const;
};

struct Edge {
    NodeId neighbor;
    double true_distance;
};

// One-hop adjacency plus per-node hop counts to every reachable anchor.
struct CommGraph {
    std::vector<std::vector<Edge>> adjacency;         // indexed by node id
    std::vector<std::map<NodeId, int>> hop_table;     // node -> (anchor -> hops)

    bool has_edge(NodeId j, NodeId k) const;
};

// Uniform random deployment with round(n_nodes * anchor_ratio) anchors.
Deployment deploy(int n_nodes, double anchor_ratio, Rect area,
                  double comm_range, RandomStream& rng);

// Edges where Euclidean distance <= L (boundary inclusive); hop counts by
// BFS from each anchor. Unreachable anchors are simply absent from a row.
CommGraph build_graph(const Deployment& d);

// The reachable anchor with the fewest hops; ties broken by smallest anchor
// id. Throws Unlocalizable when the node reaches no anchor.
std::pair<NodeId, int> nearest_anchor(const CommGraph& g, NodeId node);

// True distance plus N(0, sigma^2) noise, floored at 0. sigma = 0 consumes
// no draws and returns the exact distance. Throws NotNeighbors when (j,k)
// is not an edge.
double measure_distance(const Deployment& d, const CommGraph& g, NodeId j,
                        NodeId k, double noise_sigma, RandomStream& rng);

// JSON (de)serialization so experiments can be replayed bit-exactly.
std::string deployment_to_json(const Deployment& d);
Deployment deployment_from_json(const std::string& json_text);

// FNV-1a over the canonical JSON form; used for paired-design assertions
// and run manifests.
std::uint64_t deployment_hash(const Deployment& d);

std::uint64_t fnv1a(const void* data, std::size_t len);

}  // namespace wsnloc
