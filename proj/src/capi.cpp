#include "wsnloc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "config.hpp"
#include "errors.hpp"

using namespace wsnloc;

struct wsnloc_sim {
    RunConfig config;
    std::optional<ScenarioReport> report;
};

namespace {

thread_local std::string g_last_error;

wsnloc_status map_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return WSNLOC_ERR_INVALID_ARGUMENT;
        case ErrorCode::InvalidConfig: return WSNLOC_ERR_INVALID_CONFIG;
        case ErrorCode::Unlocalizable: return WSNLOC_ERR_UNLOCALIZABLE;
        case ErrorCode::NotNeighbors: return WSNLOC_ERR_NOT_NEIGHBORS;
        case ErrorCode::InsufficientAnchors:
            return WSNLOC_ERR_INSUFFICIENT_ANCHORS;
        case ErrorCode::EmptyNeighborhood: return WSNLOC_ERR_EMPTY_NEIGHBORHOOD;
        case ErrorCode::NoEstimates: return WSNLOC_ERR_NO_ESTIMATES;
        case ErrorCode::ParseError: return WSNLOC_ERR_PARSE;
        case ErrorCode::IoError: return WSNLOC_ERR_IO;
    }
    return WSNLOC_ERR_INTERNAL;
}

wsnloc_status fail(wsnloc_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

// Runs the body, translating C++ exceptions into status codes.
template <typename Fn>
wsnloc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return fail(map_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(WSNLOC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(WSNLOC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(WSNLOC_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

wsnloc_status report_string(const wsnloc_sim* sim, char** out,
                            std::string (*make)(const ScenarioReport&)) {
    if (!sim || !out)
        return fail(WSNLOC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() -> wsnloc_status {
        if (!sim->report)
            return fail(WSNLOC_ERR_NOT_RUN, "simulation has not been run");
        *out = dup_string(make(*sim->report));
        return WSNLOC_OK;
    });
}

}  // namespace

extern "C" {

const char* wsnloc_version(void) { return "wsnloc 1.0.0"; }

const char* wsnloc_status_name(wsnloc_status status) {
    switch (status) {
        case WSNLOC_OK: return "ok";
        case WSNLOC_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case WSNLOC_ERR_INVALID_CONFIG: return "invalid_config";
        case WSNLOC_ERR_UNLOCALIZABLE: return "unlocalizable";
        case WSNLOC_ERR_NOT_NEIGHBORS: return "not_neighbors";
        case WSNLOC_ERR_INSUFFICIENT_ANCHORS: return "insufficient_anchors";
        case WSNLOC_ERR_EMPTY_NEIGHBORHOOD: return "empty_neighborhood";
        case WSNLOC_ERR_NO_ESTIMATES: return "no_estimates";
        case WSNLOC_ERR_PARSE: return "parse_error";
        case WSNLOC_ERR_IO: return "io_error";
        case WSNLOC_ERR_NOT_RUN: return "not_run";
        case WSNLOC_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* wsnloc_last_error(void) { return g_last_error.c_str(); }

void wsnloc_string_free(char* s) { std::free(s); }

wsnloc_status wsnloc_sim_create(const char* config_json, wsnloc_sim** out_sim) {
    if (!config_json || !out_sim)
        return fail(WSNLOC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() -> wsnloc_status {
        auto sim = new wsnloc_sim{run_config_from_json(config_json), {}};
        *out_sim = sim;
        return WSNLOC_OK;
    });
}

void wsnloc_sim_destroy(wsnloc_sim* sim) { delete sim; }

wsnloc_status wsnloc_sim_load_deployment(wsnloc_sim* sim,
                                         const char* deployment_json) {
    if (!sim || !deployment_json)
        return fail(WSNLOC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() -> wsnloc_status {
        Deployment d = deployment_from_json(deployment_json);
        sim->config.options.fixed_deployment = std::move(d);
        sim->report.reset();
        return WSNLOC_OK;
    });
}

wsnloc_status wsnloc_sim_run(wsnloc_sim* sim) {
    if (!sim) return fail(WSNLOC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() -> wsnloc_status {
        sim->report = run_scenario(sim->config.scenario, sim->config.methods,
                                   sim->config.master_seed, sim->config.options);
        return WSNLOC_OK;
    });
}

wsnloc_status wsnloc_sim_resolved_config_json(const wsnloc_sim* sim,
                                              char** out) {
    if (!sim || !out)
        return fail(WSNLOC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() -> wsnloc_status {
        *out = dup_string(run_config_to_json(sim->config));
        return WSNLOC_OK;
    });
}

wsnloc_status wsnloc_sim_runs_csv(const wsnloc_sim* sim, char** out) {
    return report_string(sim, out, runs_csv);
}

wsnloc_status wsnloc_sim_convergence_csv(const wsnloc_sim* sim, char** out) {
    return report_string(sim, out, convergence_csv);
}

wsnloc_status wsnloc_sim_summary_json(const wsnloc_sim* sim, char** out) {
    return report_string(sim, out, summary_json);
}

wsnloc_status wsnloc_sim_summary_text(const wsnloc_sim* sim, char** out) {
    return report_string(sim, out, summary_text);
}

wsnloc_status wsnloc_sim_nodes_csv(const wsnloc_sim* sim, char** out) {
    return report_string(sim, out, nodes_csv);
}

wsnloc_status wsnloc_sim_deployment_json(const wsnloc_sim* sim, int run_index,
                                         char** out) {
    if (!sim || !out)
        return fail(WSNLOC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() -> wsnloc_status {
        if (!sim->report)
            return fail(WSNLOC_ERR_NOT_RUN, "simulation has not been run");
        if (run_index < 0 || run_index >= sim->report->scenario.n_runs)
            return fail(WSNLOC_ERR_INVALID_ARGUMENT,
                        "run_index out of range");
        *out = dup_string(
            deployment_to_json(deployment_for_run(*sim->report, run_index)));
        return WSNLOC_OK;
    });
}

uint64_t wsnloc_hash_bytes(const void* data, size_t len) {
    return fnv1a(data, len);
}

}  // extern "C"
