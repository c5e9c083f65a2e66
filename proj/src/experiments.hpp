#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "baselines.hpp"

namespace wsnloc {

enum class Method { DVHop, PSO, SCAPSO, AdapSCAPSO };

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

struct Scenario {
    std::string name = "custom";
    int n_nodes = 100;
    double anchor_ratio = 0.10;
    double comm_range = 30.0;
    Rect area{100.0, 100.0};
    int n_runs = 50;
    double noise_sigma = 0.0;
};

// The four shipped presets s1..s4.
Scenario scenario_preset(const std::string& name);

struct RunOptions {
    SwarmParams params;
    int refine_passes = 2;
    int n_threads = 0;  // 0 = hardware concurrency; runs are independent
    // When set, every run reuses this deployment (replay mode).
    std::optional<Deployment> fixed_deployment;
};

struct ScenarioReport {
    Scenario scenario;
    std::vector<Method> methods;
    std::uint64_t master_seed = 0;
    // Per-run average error per method; NaN when a run localized nothing.
    std::map<Method, std::vector<double>> per_run_error;
    std::map<Method, std::vector<int>> per_run_skipped;
    // Mean best-fitness trace over nodes and runs (swarm methods only).
    std::map<Method, std::vector<double>> mean_trace;
    std::vector<std::uint64_t> deployment_hashes;  // paired design witness
    // Per-node results from run 0, for replay/regression CSVs.
    std::map<Method, LocalizationResult> first_run_results;
    std::optional<Deployment> fixed_deployment;  // set in replay mode

    double mean_error(Method m) const;
    double std_error(Method m) const;
};

// Mean Euclidean error over localized unknown nodes. Skipped nodes are
// excluded from the denominator. Throws NoEstimates when nothing was
// localized.
double avg_error(const LocalizationResult& result, const Deployment& d);

// Monte-Carlo harness: per run, one deployment shared by all methods.
// Run r uses seeds derived from (master_seed, r), so adding runs never
// perturbs earlier ones; runs execute in parallel but aggregate in index
// order.
ScenarioReport run_scenario(const Scenario& s, const std::vector<Method>& methods,
                            std::uint64_t master_seed, const RunOptions& opts);

// Percentage error reduction of the adaptive hybrid vs each baseline:
// 100 * (mean(m) - mean(adap)) / mean(m). NaN when undefined.
std::map<Method, double> compare(const ScenarioReport& report);

// Unweighted mean of scenario-level reductions.
double pooled_reduction(const std::vector<ScenarioReport>& reports, Method m);

// Regenerates the deployment used by a given run of a report.
Deployment deployment_for_run(const ScenarioReport& report, int run);

std::string runs_csv(const ScenarioReport& report);
std::string convergence_csv(const ScenarioReport& report);
std::string summary_json(const ScenarioReport& report);
std::string summary_text(const ScenarioReport& report);
std::string nodes_csv(const ScenarioReport& report);

}  // namespace wsnloc
