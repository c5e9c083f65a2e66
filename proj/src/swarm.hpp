#pragma once

#include <functional>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace wsnloc {

// All optimizer constants. Defaults are the tuned settings for the adaptive
// hybrid; baselines override c1/c2.
struct SwarmParams {
    double omega_max = 0.9;
    double omega_min = 0.4;
    double c1 = 2.2;
    double c2 = 1.8;
    double amplitude = 2.5;   // initial maximum SCA amplitude (a)
    double beta = 3.0;        // module-selector decay rate
    int max_iters = 60;       // T
    int n_particles = 30;     // i_max
    double delta = 0.5;       // base velocity coefficient, meters/hop
    double comm_range = 30.0; // L, also the per-component velocity clamp

    void validate() const;
};

struct Particle {
    Vec2 pos;
    Vec2 vel;
    Vec2 pbest;
    double pbest_fitness = 0.0;
};

struct Trace {
    std::vector<double> best_fitness_per_iter;
};

enum class Module { SCA, PSO };

// Which update module a particle uses at iteration t. Policies must be pure
// functions of (t, params, stream draws) for reproducibility.
using SelectorPolicy =
    std::function<Module(int t, const SwarmParams& p, RandomStream& rng)>;

using FitnessFn = std::function<double(Vec2)>;

// Linear inertia schedule: omega_max at t = 0 down to omega_min at t = T.
double inertia_weight(int t, const SwarmParams& p);

// Linear amplitude decay: a at t = 0 down to 0 at t = T.
double sca_amplitude(int t, const SwarmParams& p);

// Velocity/position update toward pbest and gbest. Consumes two uniform
// draws, one per attraction term, shared across dimensions. The new
// velocity is clamped per component to [-L, L] and the position to bounds.
Particle pso_step(const Particle& pt, Vec2 gbest, double omega,
                  const SwarmParams& p, Rect bounds, RandomStream& rng);

// Sine/cosine move toward gbest. Consumes r2 ~ U[0,2pi], r3 ~ U[-1,1],
// r4 ~ U[0,1], shared across dimensions; velocity is left unchanged.
Particle sca_step(const Particle& pt, Vec2 gbest, int t, const SwarmParams& p,
                  Rect bounds, RandomStream& rng);

// SCA with probability exp(-beta * t / T), else PSO. One uniform draw.
Module select_module(int t, const SwarmParams& p, RandomStream& rng);

inline SelectorPolicy adaptive_policy() {
    return [](int t, const SwarmParams& p, RandomStream& rng) {
        return select_module(t, p, rng);
    };
}

inline SelectorPolicy pso_only_policy() {
    return [](int, const SwarmParams&, RandomStream&) { return Module::PSO; };
}

// Constant 50/50 module draw, used by the non-adaptive hybrid baseline.
inline SelectorPolicy coin_flip_policy() {
    return [](int, const SwarmParams&, RandomStream& rng) {
        return rng.uniform01() < 0.5 ? Module::SCA : Module::PSO;
    };
}

struct OptimizeResult {
    Vec2 best;
    double best_fitness = 0.0;
    Trace trace;
};

// Global-best swarm loop: T sweeps, per-particle module draw, synchronous
// gbest update after each sweep. The trace records gbest fitness per sweep
// and is non-increasing by pbest/gbest retention.
OptimizeResult optimize(const FitnessFn& fitness, std::vector<Particle> init,
                        Rect bounds, const SwarmParams& p,
                        const SelectorPolicy& policy, RandomStream& rng);

}  // namespace wsnloc
