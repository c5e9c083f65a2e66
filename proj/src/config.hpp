#pragma once

#include <string>

#include "experiments.hpp"

namespace wsnloc {

// Fully resolved run configuration: a scenario, the method list, the seed
// and every optimizer knob. The JSON form is the wire format shared by the
// C API, the CLI and run manifests.
struct RunConfig {
    Scenario scenario;
    std::vector<Method> methods{Method::DVHop, Method::PSO, Method::SCAPSO,
                                Method::AdapSCAPSO};
    std::uint64_t master_seed = 0;
    RunOptions options;
};

// Parses and validates a config document. Starts from the named preset (or
// the built-in defaults), then applies any explicit fields on top. Unknown
// keys are rejected with the offending key named.
RunConfig run_config_from_json(const std::string& json_text);

// Canonical resolved form; parsing it back yields the identical config.
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace wsnloc
