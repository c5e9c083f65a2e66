#include "config.hpp"

#include <set>

#include "errors.hpp"
#include "json.hpp"

namespace wsnloc {

namespace {

const std::set<std::string> kTopLevelKeys = {
    "scenario",     "n_nodes",     "anchor_ratio", "comm_range",
    "area_width",   "area_height", "n_runs",       "noise_sigma",
    "methods",      "master_seed", "refine_passes", "threads",
    "params"};

const std::set<std::string> kParamKeys = {
    "omega_max", "omega_min", "c1",          "c2",    "amplitude",
    "beta",      "max_iters", "n_particles", "delta"};

template <typename T>
void take(const nlohmann::json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw_error(ErrorCode::InvalidConfig,
                    std::string("config: bad value for '") + key + "'");
    }
}

}  // namespace

RunConfig run_config_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw_error(ErrorCode::ParseError, std::string("config JSON: ") + e.what());
    }
    if (!j.is_object())
        throw_error(ErrorCode::InvalidConfig, "config must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kTopLevelKeys.count(key))
            throw_error(ErrorCode::InvalidConfig,
                        "config: unknown key '" + key + "'");

    RunConfig cfg;
    if (j.contains("scenario")) {
        std::string name;
        take(j, "scenario", name);
        if (name != "custom") cfg.scenario = scenario_preset(name);
        cfg.scenario.name = name;
    }
    take(j, "n_nodes", cfg.scenario.n_nodes);
    take(j, "anchor_ratio", cfg.scenario.anchor_ratio);
    take(j, "comm_range", cfg.scenario.comm_range);
    take(j, "area_width", cfg.scenario.area.width);
    take(j, "area_height", cfg.scenario.area.height);
    take(j, "n_runs", cfg.scenario.n_runs);
    take(j, "noise_sigma", cfg.scenario.noise_sigma);
    take(j, "master_seed", cfg.master_seed);
    take(j, "refine_passes", cfg.options.refine_passes);
    take(j, "threads", cfg.options.n_threads);

    if (j.contains("methods")) {
        std::vector<std::string> names;
        take(j, "methods", names);
        if (names.empty())
            throw_error(ErrorCode::InvalidConfig, "config: 'methods' is empty");
        cfg.methods.clear();
        for (const auto& n : names) {
            auto m = method_from_name(n);
            if (!m)
                throw_error(ErrorCode::InvalidConfig,
                            "config: unknown method '" + n + "'");
            cfg.methods.push_back(*m);
        }
    }

    if (j.contains("params")) {
        const auto& pj = j.at("params");
        if (!pj.is_object())
            throw_error(ErrorCode::InvalidConfig,
                        "config: 'params' must be an object");
        for (const auto& [key, value] : pj.items())
            if (!kParamKeys.count(key))
                throw_error(ErrorCode::InvalidConfig,
                            "config: unknown key 'params." + key + "'");
        auto& p = cfg.options.params;
        take(pj, "omega_max", p.omega_max);
        take(pj, "omega_min", p.omega_min);
        take(pj, "c1", p.c1);
        take(pj, "c2", p.c2);
        take(pj, "amplitude", p.amplitude);
        take(pj, "beta", p.beta);
        take(pj, "max_iters", p.max_iters);
        take(pj, "n_particles", p.n_particles);
        take(pj, "delta", p.delta);
    }
    // The one-hop range doubles as the optimizer's velocity clamp.
    cfg.options.params.comm_range = cfg.scenario.comm_range;

    if (cfg.scenario.n_nodes < 3)
        throw_error(ErrorCode::InvalidConfig, "config: 'n_nodes' must be >= 3");
    if (!(cfg.scenario.anchor_ratio > 0.0 && cfg.scenario.anchor_ratio < 1.0))
        throw_error(ErrorCode::InvalidConfig,
                    "config: 'anchor_ratio' must be in (0, 1)");
    if (!(cfg.scenario.comm_range > 0.0))
        throw_error(ErrorCode::InvalidConfig,
                    "config: 'comm_range' must be > 0");
    if (!(cfg.scenario.area.width > 0.0 && cfg.scenario.area.height > 0.0))
        throw_error(ErrorCode::InvalidConfig,
                    "config: area dimensions must be > 0");
    if (cfg.scenario.n_runs < 1)
        throw_error(ErrorCode::InvalidConfig, "config: 'n_runs' must be >= 1");
    if (cfg.scenario.noise_sigma < 0.0)
        throw_error(ErrorCode::InvalidConfig,
                    "config: 'noise_sigma' must be >= 0");
    if (cfg.options.refine_passes < 1)
        throw_error(ErrorCode::InvalidConfig,
                    "config: 'refine_passes' must be >= 1");
    if (cfg.options.n_threads < 0)
        throw_error(ErrorCode::InvalidConfig, "config: 'threads' must be >= 0");
    try {
        cfg.options.params.validate();
    } catch (const Error& e) {
        throw_error(ErrorCode::InvalidConfig,
                    std::string("config: params: ") + e.what());
    }
    return cfg;
}

std::string run_config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["scenario"] = cfg.scenario.name;
    j["n_nodes"] = cfg.scenario.n_nodes;
    j["anchor_ratio"] = cfg.scenario.anchor_ratio;
    j["comm_range"] = cfg.scenario.comm_range;
    j["area_width"] = cfg.scenario.area.width;
    j["area_height"] = cfg.scenario.area.height;
    j["n_runs"] = cfg.scenario.n_runs;
    j["noise_sigma"] = cfg.scenario.noise_sigma;
    j["methods"] = nlohmann::ordered_json::array();
    for (Method m : cfg.methods) j["methods"].push_back(method_name(m));
    j["master_seed"] = cfg.master_seed;
    j["refine_passes"] = cfg.options.refine_passes;
    j["threads"] = cfg.options.n_threads;
    const auto& p = cfg.options.params;
    j["params"] = {{"omega_max", p.omega_max}, {"omega_min", p.omega_min},
                   {"c1", p.c1},               {"c2", p.c2},
                   {"amplitude", p.amplitude}, {"beta", p.beta},
                   {"max_iters", p.max_iters}, {"n_particles", p.n_particles},
                   {"delta", p.delta}};
    return j.dump(2);
}

}  // namespace wsnloc
