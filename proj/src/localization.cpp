#include "localization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "format.hpp"

namespace wsnloc {

const char* node_status_name(NodeStatus s) {
    switch (s) {
        case NodeStatus::Ok: return "ok";
        case NodeStatus::NoAnchor: return "no_anchor";
        case NodeStatus::EmptyContext: return "empty_context";
        case NodeStatus::TooFewAnchors: return "too_few_anchors";
        case NodeStatus::DegenerateGeometry: return "degenerate_geometry";
        case NodeStatus::AmbiguousGeometry: return "ambiguous_geometry";
    }
    return "unknown";
}

std::vector<Particle> init_swarm(NodeId node, const CommGraph& g,
                                 const Deployment& d, const SwarmParams& p,
                                 RandomStream& rng) {
    auto [anchor, hops] = nearest_anchor(g, node);
    Vec2 center = d.nodes[static_cast<std::size_t>(anchor)].true_pos;
    double radius = p.comm_range;
    double vmax = p.delta * static_cast<double>(hops);

    std::vector<Particle> swarm;
    swarm.reserve(static_cast<std::size_t>(p.n_particles));
    for (int i = 0; i < p.n_particles; ++i) {
        // Uniform over the one-hop disk by rejection from its bounding square.
        Vec2 pos;
        do {
            pos = {center.x + rng.uniform(-radius, radius),
                   center.y + rng.uniform(-radius, radius)};
        } while (distance(pos, center) > radius);
        pos = d.area.clamp(pos);

        Particle pt;
        pt.pos = pos;
        pt.vel = {vmax * (2.0 * rng.uniform01() - 1.0),
                  vmax * (2.0 * rng.uniform01() - 1.0)};
        pt.pbest = pt.pos;
        swarm.push_back(pt);
    }
    return swarm;
}

double fitness_weighted_ranging(Vec2 candidate, const NeighborContext& ctx) {
    if (ctx.entries.empty())
        throw_error(ErrorCode::EmptyNeighborhood,
                    "ranging fitness needs at least one neighbor");
    double sum = 0.0;
    for (const auto& e : ctx.entries) {
        double residual = e.measured_distance - distance(candidate, e.neighbor_pos);
        sum += e.weight * residual * residual;
    }
    return sum;
}

namespace {

NeighborContext build_context(NodeId node, const Deployment& d,
                              const CommGraph& g,
                              const std::map<NodeId, Vec2>& estimates,
                              double noise_sigma, RandomStream& rng) {
    NeighborContext ctx;
    for (const auto& edge : g.adjacency[static_cast<std::size_t>(node)]) {
        const Node& nb = d.nodes[static_cast<std::size_t>(edge.neighbor)];
        if (nb.kind == NodeKind::Anchor) {
            double meas =
                measure_distance(d, g, node, nb.id, noise_sigma, rng);
            ctx.entries.push_back(
                {nb.id, meas, nb.true_pos, kAnchorNeighborWeight});
        } else if (auto it = estimates.find(nb.id); it != estimates.end()) {
            double meas =
                measure_distance(d, g, node, nb.id, noise_sigma, rng);
            ctx.entries.push_back(
                {nb.id, meas, it->second, kUnknownNeighborWeight});
        }
        // Unknown neighbors without an estimate yet are omitted; later
        // refine passes pick them up once they are solved.
    }
    return ctx;
}

// A context pins a unique position only if it holds three references that
// are not close to collinear; solving a thinner context picks one of two
// mirror intersections at random and the error then propagates to every
// later node. The area threshold scales with the one-hop range since that
// is the neighbor spacing scale.
bool well_conditioned(const NeighborContext& ctx, double comm_range) {
    const double min_area = 0.05 * comm_range * comm_range;
    const auto& e = ctx.entries;
    if (e.size() < 3) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            for (std::size_t k = j + 1; k < e.size(); ++k) {
                Vec2 ab = e[j].neighbor_pos - e[i].neighbor_pos;
                Vec2 ac = e[k].neighbor_pos - e[i].neighbor_pos;
                if (std::fabs(ab.x * ac.y - ab.y * ac.x) * 0.5 > min_area)
                    return true;
            }
    return false;
}

}  // namespace

std::pair<LocalizationResult, std::map<NodeId, Trace>> localize_all(
    const Deployment& d, const CommGraph& g, const SwarmParams& p,
    const SelectorPolicy& policy, int refine_passes, double noise_sigma,
    RandomStream& rng) {
    if (refine_passes < 1)
        throw_error(ErrorCode::InvalidArgument, "refine_passes must be >= 1");

    LocalizationResult result;
    std::map<NodeId, Trace> traces;

    struct Target {
        NodeId node;
        int hops;
    };
    std::vector<Target> pending;
    for (NodeId u : d.unknown_ids()) {
        if (g.hop_table[static_cast<std::size_t>(u)].empty()) {
            result.skipped.push_back(u);
            result.status[u] = NodeStatus::NoAnchor;
            continue;
        }
        pending.push_back({u, nearest_anchor(g, u).second});
    }
    // Near-anchor nodes first; their estimates feed later contexts.
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Target& a, const Target& b) {
                         return a.hops != b.hops ? a.hops < b.hops
                                                 : a.node < b.node;
                     });

    auto solve = [&](NodeId node, const NeighborContext& ctx) {
        auto swarm = init_swarm(node, g, d, p, rng);
        auto opt = optimize(
            [&ctx](Vec2 x) { return fitness_weighted_ranging(x, ctx); },
            std::move(swarm), d.area, p, policy, rng);
        result.estimates[node] = opt.best;
        result.per_node_fitness[node] = opt.best_fitness;
        result.status[node] = NodeStatus::Ok;
        // the node's convergence curve is its initial localization solve;
        // refinement re-solves start from an already-placed neighborhood
        // and would not reflect the optimizer's search behavior
        if (!traces.count(node)) traces[node] = std::move(opt.trace);
    };

    // With two or more passes, the first pass grows the solved set outward
    // from regions whose contexts pin a unique position, sweeping in hop
    // order until no node qualifies. Thin or near-collinear contexts wait:
    // solving them early picks a mirror branch at random and the offset then
    // propagates through every downstream context.
    if (refine_passes >= 2) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (const Target& tgt : pending) {
                if (result.estimates.count(tgt.node)) continue;
                NeighborContext ctx = build_context(
                    tgt.node, d, g, result.estimates, noise_sigma, rng);
                if (!well_conditioned(ctx, p.comm_range)) continue;
                solve(tgt.node, ctx);
                progress = true;
            }
        }
    }
    // Remaining passes re-estimate every reachable node in hop order, so
    // early estimates get corrected once their neighbors are placed. Nodes
    // whose context is still empty this pass are picked up in a later one.
    for (int pass = refine_passes >= 2 ? 1 : 0; pass < refine_passes; ++pass) {
        for (const Target& tgt : pending) {
            NeighborContext ctx = build_context(tgt.node, d, g,
                                                result.estimates, noise_sigma,
                                                rng);
            if (ctx.entries.empty()) continue;
            solve(tgt.node, ctx);
        }
    }
    for (const Target& tgt : pending) {
        if (result.estimates.count(tgt.node)) continue;
        result.skipped.push_back(tgt.node);
        result.status[tgt.node] = NodeStatus::EmptyContext;
    }
    std::sort(result.skipped.begin(), result.skipped.end());
    return {std::move(result), std::move(traces)};
}

std::string result_to_csv(const LocalizationResult& r, const Deployment& d,
                          const std::string& method) {
    std::ostringstream out;
    out << "node_id,true_x,true_y,est_x,est_y,error_m,status,method\n";
    for (NodeId u : d.unknown_ids()) {
        const Node& n = d.nodes[static_cast<std::size_t>(u)];
        auto st = r.status.count(u) ? r.status.at(u) : NodeStatus::NoAnchor;
        out << u << ',' << fmt_g(n.true_pos.x) << ',' << fmt_g(n.true_pos.y)
            << ',';
        if (auto it = r.estimates.find(u); it != r.estimates.end()) {
            double err = distance(n.true_pos, it->second);
            out << fmt_g(it->second.x) << ',' << fmt_g(it->second.y) << ','
                << fmt_g(err);
        } else {
            out << ",,";
        }
        out << ',' << node_status_name(st) << ',' << method << '\n';
    }
    return out.str();
}

}  // namespace wsnloc
