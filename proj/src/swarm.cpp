#include "swarm.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace wsnloc {

void SwarmParams::validate() const {
    if (!(omega_max >= omega_min && omega_min > 0.0))
        throw_error(ErrorCode::InvalidConfig,
                    "require omega_max >= omega_min > 0");
    if (max_iters < 1)
        throw_error(ErrorCode::InvalidConfig, "max_iters must be >= 1");
    if (n_particles < 1)
        throw_error(ErrorCode::InvalidConfig, "n_particles must be >= 1");
    if (!(amplitude > 0.0))
        throw_error(ErrorCode::InvalidConfig, "amplitude must be > 0");
    if (beta < 0.0)
        throw_error(ErrorCode::InvalidConfig, "beta must be >= 0");
    if (!(comm_range > 0.0))
        throw_error(ErrorCode::InvalidConfig, "comm_range must be > 0");
    if (c1 < 0.0 || c2 < 0.0)
        throw_error(ErrorCode::InvalidConfig, "c1 and c2 must be >= 0");
    if (delta < 0.0)
        throw_error(ErrorCode::InvalidConfig, "delta must be >= 0");
}

double inertia_weight(int t, const SwarmParams& p) {
    return p.omega_max -
           (p.omega_max - p.omega_min) * static_cast<double>(t) /
               static_cast<double>(p.max_iters);
}

double sca_amplitude(int t, const SwarmParams& p) {
    return p.amplitude *
           (1.0 - static_cast<double>(t) / static_cast<double>(p.max_iters));
}

Particle pso_step(const Particle& pt, Vec2 gbest, double omega,
                  const SwarmParams& p, Rect bounds, RandomStream& rng) {
    double r_personal = rng.uniform01();
    double r_global = rng.uniform01();
    Particle out = pt;
    out.vel = pt.vel * omega + (pt.pbest - pt.pos) * (p.c1 * r_personal) +
              (gbest - pt.pos) * (p.c2 * r_global);
    out.pos = pt.pos + out.vel;
    out.vel.x = std::clamp(out.vel.x, -p.comm_range, p.comm_range);
    out.vel.y = std::clamp(out.vel.y, -p.comm_range, p.comm_range);
    out.pos = bounds.clamp(out.pos);
    return out;
}

Particle sca_step(const Particle& pt, Vec2 gbest, int t, const SwarmParams& p,
                  Rect bounds, RandomStream& rng) {
    double r1 = sca_amplitude(t, p);
    double r2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double r3 = rng.uniform(-1.0, 1.0);
    double r4 = rng.uniform01();
    double wave = r4 < 0.5 ? std::sin(r2) : std::cos(r2);
    Particle out = pt;
    out.pos = {pt.pos.x + r1 * wave * std::abs(r3 * gbest.x - pt.pos.x),
               pt.pos.y + r1 * wave * std::abs(r3 * gbest.y - pt.pos.y)};
    out.pos = bounds.clamp(out.pos);
    return out;
}

Module select_module(int t, const SwarmParams& p, RandomStream& rng) {
    double s = rng.uniform01();
    double threshold = std::exp(-p.beta * static_cast<double>(t) /
                                static_cast<double>(p.max_iters));
    return s < threshold ? Module::SCA : Module::PSO;
}

OptimizeResult optimize(const FitnessFn& fitness, std::vector<Particle> init,
                        Rect bounds, const SwarmParams& p,
                        const SelectorPolicy& policy, RandomStream& rng) {
    if (init.empty())
        throw_error(ErrorCode::InvalidArgument,
                    "optimize requires a non-empty initial swarm");

    auto& swarm = init;
    Vec2 gbest{};
    double gbest_fitness = 0.0;
    bool first = true;
    for (auto& pt : swarm) {
        pt.pbest = pt.pos;
        pt.pbest_fitness = fitness(pt.pos);
        if (first || pt.pbest_fitness < gbest_fitness) {
            gbest = pt.pbest;
            gbest_fitness = pt.pbest_fitness;
            first = false;
        }
    }

    Trace trace;
    trace.best_fitness_per_iter.reserve(static_cast<std::size_t>(p.max_iters));
    for (int t = 0; t < p.max_iters; ++t) {
        double omega = inertia_weight(t, p);
        for (auto& pt : swarm) {
            Module m = policy(t, p, rng);
            pt = m == Module::SCA
                     ? sca_step(pt, gbest, t, p, bounds, rng)
                     : pso_step(pt, gbest, omega, p, bounds, rng);
            double f = fitness(pt.pos);
            if (f < pt.pbest_fitness) {
                pt.pbest = pt.pos;
                pt.pbest_fitness = f;
            }
        }
        // Synchronous gbest update after the full sweep.
        for (const auto& pt : swarm) {
            if (pt.pbest_fitness < gbest_fitness) {
                gbest = pt.pbest;
                gbest_fitness = pt.pbest_fitness;
            }
        }
        trace.best_fitness_per_iter.push_back(gbest_fitness);
    }
    return {gbest, gbest_fitness, std::move(trace)};
}

}  // namespace wsnloc
