#pragma once

#include <map>
#include <string>
#include <vector>

#include "network.hpp"
#include "swarm.hpp"

namespace wsnloc {

// Per-node outcome recorded in result CSVs.
enum class NodeStatus {
    Ok,
    NoAnchor,            // no anchor reachable through the graph
    EmptyContext,        // no usable one-hop neighbor after all passes
    TooFewAnchors,       // DV-Hop multilateration needs >= 3 anchors
    DegenerateGeometry,  // rank-deficient multilateration system
    AmbiguousGeometry,   // swarm baseline solved with < 3 anchors
};

const char* node_status_name(NodeStatus s);

struct NeighborEntry {
    NodeId neighbor;
    double measured_distance;
    Vec2 neighbor_pos;   // true position for anchors, current estimate otherwise
    double weight;       // 0.8 anchor, 0.2 estimated unknown
};

struct NeighborContext {
    std::vector<NeighborEntry> entries;
};

struct LocalizationResult {
    std::map<NodeId, Vec2> estimates;
    std::vector<NodeId> skipped;
    std::map<NodeId, double> per_node_fitness;
    std::map<NodeId, NodeStatus> status;
};

// Hop-aware swarm initialization: positions uniform over the one-hop disk
// around the nearest anchor (then clamped into the area), velocity
// components delta * h_i * (2r - 1). Throws Unlocalizable when the node
// reaches no anchor.
std::vector<Particle> init_swarm(NodeId node, const CommGraph& g,
                                 const Deployment& d, const SwarmParams& p,
                                 RandomStream& rng);

// Weighted squared ranging residual over one-hop neighbors.
double fitness_weighted_ranging(Vec2 candidate, const NeighborContext& ctx);

inline constexpr double kAnchorNeighborWeight = 0.8;
inline constexpr double kUnknownNeighborWeight = 0.2;

// Full adaptive hybrid localizer: unknowns solved in ascending order of
// nearest-anchor hop count, reusing earlier estimates as weighted neighbor
// positions. With refine_passes >= 2 the first pass grows the solved set
// outward from well-conditioned contexts (three non-collinear references)
// and later passes re-estimate every node; nodes whose context stays empty
// through all passes are skipped.
std::pair<LocalizationResult, std::map<NodeId, Trace>> localize_all(
    const Deployment& d, const CommGraph& g, const SwarmParams& p,
    const SelectorPolicy& policy, int refine_passes, double noise_sigma,
    RandomStream& rng);

// Per-node results CSV: node_id,true_x,true_y,est_x,est_y,error_m,status
// with an extra method column.
std::string result_to_csv(const LocalizationResult& r, const Deployment& d,
                          const std::string& method);

}  // namespace wsnloc
