#pragma once

#include <map>

#include "localization.hpp"

namespace wsnloc {

// Standard three-phase DV-Hop: hop flood (already in CommGraph), per-anchor
// average hop size, distance estimates via the nearest anchor's hop size.
struct DvHopTables {
    std::map<NodeId, double> hop_size;                      // anchor -> m/hop
    std::map<std::pair<NodeId, NodeId>, double> est_dist;   // (unknown, anchor)
};

// hop_size(a) = sum of distances to reachable peer anchors / sum of hops.
// Throws InsufficientAnchors when no two anchors can reach each other.
DvHopTables dvhop_tables(const Deployment& d, const CommGraph& g);

// Linear least-squares multilateration over all reachable anchors
// (differences-of-circles linearization). Nodes reaching fewer than three
// anchors, or with a rank-deficient system, are skipped with a status.
LocalizationResult dvhop_localize(const Deployment& d, const CommGraph& g,
                                  const DvHopTables& tables);

enum class BaselineMethod { PSO, SCAPSO };

// Swarm baselines with the DV-Hop residual fitness, random initialization
// over the whole area, and conventional c1 = c2 = 2.0. SCAPSO flips a fair
// coin between the SCA and PSO moves at every step.
std::pair<LocalizationResult, std::map<NodeId, Trace>> baseline_localize(
    BaselineMethod method, const Deployment& d, const CommGraph& g,
    const DvHopTables& tables, const SwarmParams& p, RandomStream& rng);

// Closed-form least-squares position from anchor positions and distances;
// shared by DV-Hop and exposed for oracle-style checks. Returns false when
// the linear system is rank deficient.
bool multilaterate(const std::vector<Vec2>& anchors,
                   const std::vector<double>& dists, Vec2& out);

}  // namespace wsnloc
