#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "format.hpp"
#include "json.hpp"

namespace wsnloc {

const char* method_name(Method m) {
    switch (m) {
        case Method::DVHop: return "dvhop";
        case Method::PSO: return "pso";
        case Method::SCAPSO: return "scapso";
        case Method::AdapSCAPSO: return "adapscapso";
    }
    return "unknown";
}

std::optional<Method> method_from_name(const std::string& name) {
    if (name == "dvhop") return Method::DVHop;
    if (name == "pso") return Method::PSO;
    if (name == "scapso") return Method::SCAPSO;
    if (name == "adapscapso") return Method::AdapSCAPSO;
    return std::nullopt;
}

Scenario scenario_preset(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "s1") {
        s.n_nodes = 100; s.anchor_ratio = 0.10; s.comm_range = 30.0;
    } else if (name == "s2") {
        s.n_nodes = 100; s.anchor_ratio = 0.20; s.comm_range = 30.0;
    } else if (name == "s3") {
        s.n_nodes = 200; s.anchor_ratio = 0.10; s.comm_range = 15.0;
    } else if (name == "s4") {
        s.n_nodes = 200; s.anchor_ratio = 0.20; s.comm_range = 15.0;
    } else {
        throw_error(ErrorCode::InvalidConfig,
                    "unknown scenario preset '" + name + "' (expected s1..s4)");
    }
    return s;
}

double avg_error(const LocalizationResult& result, const Deployment& d) {
    if (result.estimates.empty())
        throw_error(ErrorCode::NoEstimates, "no node was localized");
    double sum = 0.0;
    for (const auto& [id, est] : result.estimates)
        sum += distance(d.nodes[static_cast<std::size_t>(id)].true_pos, est);
    return sum / static_cast<double>(result.estimates.size());
}

namespace {

bool is_swarm_method(Method m) { return m != Method::DVHop; }

std::vector<double> mean_node_trace(const std::map<NodeId, Trace>& traces,
                                    int iters) {
    std::vector<double> mean(static_cast<std::size_t>(iters), 0.0);
    if (traces.empty()) return {};
    for (const auto& [id, tr] : traces)
        for (std::size_t t = 0; t < mean.size(); ++t)
            mean[t] += tr.best_fitness_per_iter[t];
    for (auto& v : mean) v /= static_cast<double>(traces.size());
    return mean;
}

struct RunOutcome {
    std::map<Method, double> error;
    std::map<Method, int> skipped;
    std::map<Method, std::vector<double>> node_trace;
    std::uint64_t deployment_hash = 0;
    std::map<Method, LocalizationResult> results;  // kept for run 0 only
};

RunOutcome execute_run(const Scenario& s, const std::vector<Method>& methods,
                       std::uint64_t master_seed, const RunOptions& opts,
                       int run, bool keep_results) {
    std::uint64_t seed_run = derive_seed(master_seed, static_cast<std::uint64_t>(run));

    Deployment d;
    if (opts.fixed_deployment) {
        d = *opts.fixed_deployment;
    } else {
        RandomStream deploy_rng(derive_seed(seed_run, 0));
        d = deploy(s.n_nodes, s.anchor_ratio, s.area, s.comm_range, deploy_rng);
    }
    CommGraph g = build_graph(d);

    bool needs_tables = std::any_of(methods.begin(), methods.end(),
                                    [](Method m) { return m != Method::AdapSCAPSO; });
    std::optional<DvHopTables> tables;
    if (needs_tables) {
        try {
            tables = dvhop_tables(d, g);
        } catch (const Error&) {
            // Degenerate anchor connectivity; DV-Hop-based methods record
            // empty runs below.
        }
    }

    RunOutcome out;
    out.deployment_hash = deployment_hash(d);
    std::size_t n_unknown = d.unknown_ids().size();
    for (Method m : methods) {
        RandomStream rng(derive_seed(seed_run, 1 + static_cast<std::uint64_t>(m)));
        LocalizationResult result;
        std::map<NodeId, Trace> traces;
        if (m == Method::AdapSCAPSO) {
            std::tie(result, traces) =
                localize_all(d, g, opts.params, adaptive_policy(),
                             opts.refine_passes, s.noise_sigma, rng);
        } else if (m == Method::DVHop) {
            if (tables) result = dvhop_localize(d, g, *tables);
        } else {
            if (tables)
                std::tie(result, traces) = baseline_localize(
                    m == Method::PSO ? BaselineMethod::PSO
                                     : BaselineMethod::SCAPSO,
                    d, g, *tables, opts.params, rng);
        }
        out.error[m] = result.estimates.empty()
                           ? std::numeric_limits<double>::quiet_NaN()
                           : avg_error(result, d);
        out.skipped[m] = static_cast<int>(n_unknown - result.estimates.size());
        if (is_swarm_method(m))
            out.node_trace[m] = mean_node_trace(traces, opts.params.max_iters);
        if (keep_results) out.results[m] = std::move(result);
    }
    return out;
}

}  // namespace

ScenarioReport run_scenario(const Scenario& s, const std::vector<Method>& methods,
                            std::uint64_t master_seed, const RunOptions& opts) {
    if (methods.empty())
        throw_error(ErrorCode::InvalidConfig, "methods list is empty");
    if (s.n_runs < 1)
        throw_error(ErrorCode::InvalidConfig, "n_runs must be >= 1");
    opts.params.validate();
    if (opts.refine_passes < 1)
        throw_error(ErrorCode::InvalidConfig, "refine_passes must be >= 1");

    std::vector<RunOutcome> outcomes(static_cast<std::size_t>(s.n_runs));
    unsigned n_threads = opts.n_threads > 0
                             ? static_cast<unsigned>(opts.n_threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(s.n_runs));

    std::atomic<int> next_run{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            int r = next_run.fetch_add(1);
            if (r >= s.n_runs) return;
            try {
                outcomes[static_cast<std::size_t>(r)] =
                    execute_run(s, methods, master_seed, opts, r, r == 0);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    // Deterministic fold in run order.
    ScenarioReport report;
    report.scenario = s;
    report.methods = methods;
    report.master_seed = master_seed;
    report.fixed_deployment = opts.fixed_deployment;
    for (Method m : methods) {
        auto& errs = report.per_run_error[m];
        auto& skipped = report.per_run_skipped[m];
        std::vector<double> trace_sum;
        int trace_count = 0;
        for (const auto& o : outcomes) {
            errs.push_back(o.error.at(m));
            skipped.push_back(o.skipped.at(m));
            if (is_swarm_method(m)) {
                const auto& tr = o.node_trace.at(m);
                if (!tr.empty()) {
                    if (trace_sum.empty()) trace_sum.assign(tr.size(), 0.0);
                    for (std::size_t t = 0; t < tr.size(); ++t)
                        trace_sum[t] += tr[t];
                    ++trace_count;
                }
            }
        }
        if (trace_count > 0) {
            for (auto& v : trace_sum) v /= static_cast<double>(trace_count);
            report.mean_trace[m] = std::move(trace_sum);
        }
    }
    for (const auto& o : outcomes)
        report.deployment_hashes.push_back(o.deployment_hash);
    report.first_run_results = std::move(outcomes.front().results);
    return report;
}

double ScenarioReport::mean_error(Method m) const {
    const auto& errs = per_run_error.at(m);
    double sum = 0.0;
    int n = 0;
    for (double e : errs)
        if (!std::isnan(e)) { sum += e; ++n; }
    return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

double ScenarioReport::std_error(Method m) const {
    const auto& errs = per_run_error.at(m);
    double mean = mean_error(m);
    if (std::isnan(mean)) return std::numeric_limits<double>::quiet_NaN();
    double sq = 0.0;
    int n = 0;
    for (double e : errs)
        if (!std::isnan(e)) { sq += (e - mean) * (e - mean); ++n; }
    return n > 1 ? std::sqrt(sq / (n - 1)) : 0.0;
}

std::map<Method, double> compare(const ScenarioReport& report) {
    if (!report.per_run_error.count(Method::AdapSCAPSO))
        throw_error(ErrorCode::InvalidArgument,
                    "comparison requires an adapscapso column");
    double adap = report.mean_error(Method::AdapSCAPSO);
    std::map<Method, double> out;
    for (Method m : report.methods) {
        if (m == Method::AdapSCAPSO) continue;
        double base = report.mean_error(m);
        out[m] = (std::isnan(base) || std::isnan(adap) || base == 0.0)
                     ? std::numeric_limits<double>::quiet_NaN()
                     : 100.0 * (base - adap) / base;
    }
    return out;
}

double pooled_reduction(const std::vector<ScenarioReport>& reports, Method m) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : reports) {
        double red = compare(r).at(m);
        if (!std::isnan(red)) { sum += red; ++n; }
    }
    return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

Deployment deployment_for_run(const ScenarioReport& report, int run) {
    if (report.fixed_deployment) return *report.fixed_deployment;
    std::uint64_t seed_run =
        derive_seed(report.master_seed, static_cast<std::uint64_t>(run));
    RandomStream rng(derive_seed(seed_run, 0));
    const Scenario& s = report.scenario;
    return deploy(s.n_nodes, s.anchor_ratio, s.area, s.comm_range, rng);
}

std::string runs_csv(const ScenarioReport& report) {
    std::ostringstream out;
    out << "scenario,run,method,avg_error_m,skipped\n";
    for (int r = 0; r < report.scenario.n_runs; ++r) {
        for (Method m : report.methods) {
            double e = report.per_run_error.at(m)[static_cast<std::size_t>(r)];
            out << report.scenario.name << ',' << r << ',' << method_name(m)
                << ',';
            if (!std::isnan(e)) out << fmt_g(e);
            out << ','
                << report.per_run_skipped.at(m)[static_cast<std::size_t>(r)]
                << '\n';
        }
    }
    return out.str();
}

std::string convergence_csv(const ScenarioReport& report) {
    std::ostringstream out;
    out << "scenario,method,iteration,mean_best_fitness\n";
    for (Method m : report.methods) {
        auto it = report.mean_trace.find(m);
        if (it == report.mean_trace.end()) continue;
        for (std::size_t t = 0; t < it->second.size(); ++t)
            out << report.scenario.name << ',' << method_name(m) << ',' << t
                << ',' << fmt_g(it->second[t]) << '\n';
    }
    return out.str();
}

std::string summary_json(const ScenarioReport& report) {
    nlohmann::ordered_json j;
    j["scenario"] = report.scenario.name;
    j["n_nodes"] = report.scenario.n_nodes;
    j["anchor_ratio"] = report.scenario.anchor_ratio;
    j["comm_range"] = report.scenario.comm_range;
    j["n_runs"] = report.scenario.n_runs;
    j["noise_sigma"] = report.scenario.noise_sigma;
    j["master_seed"] = report.master_seed;
    auto& methods = j["methods"];
    for (Method m : report.methods) {
        nlohmann::ordered_json mj;
        double mean = report.mean_error(m);
        double sd = report.std_error(m);
        mj["mean_error_m"] = std::isnan(mean) ? nlohmann::ordered_json()
                                              : nlohmann::ordered_json(mean);
        mj["std_error_m"] = std::isnan(sd) ? nlohmann::ordered_json()
                                           : nlohmann::ordered_json(sd);
        long total_skipped = 0;
        for (int v : report.per_run_skipped.at(m)) total_skipped += v;
        mj["mean_skipped"] =
            static_cast<double>(total_skipped) / report.scenario.n_runs;
        methods[method_name(m)] = mj;
    }
    if (report.per_run_error.count(Method::AdapSCAPSO)) {
        auto reductions = compare(report);
        auto& rj = j["reduction_vs_adapscapso_pct"];
        for (const auto& [m, red] : reductions)
            rj[method_name(m)] = std::isnan(red) ? nlohmann::ordered_json()
                                                 : nlohmann::ordered_json(red);
    }
    return j.dump(2);
}

std::string summary_text(const ScenarioReport& report) {
    std::ostringstream out;
    const Scenario& s = report.scenario;
    out << "scenario " << s.name << ": " << s.n_nodes << " nodes, "
        << fmt_g(100.0 * s.anchor_ratio) << "% anchors, L=" << fmt_g(s.comm_range)
        << " m, " << s.n_runs << " runs, seed " << report.master_seed << "\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %14s %12s %14s\n", "method",
                  "mean_error_m", "std_m", "mean_skipped");
    out << line;
    for (Method m : report.methods) {
        long total_skipped = 0;
        for (int v : report.per_run_skipped.at(m)) total_skipped += v;
        std::snprintf(line, sizeof(line), "%-12s %14.4f %12.4f %14.2f\n",
                      method_name(m), report.mean_error(m), report.std_error(m),
                      static_cast<double>(total_skipped) / s.n_runs);
        out << line;
    }
    if (report.per_run_error.count(Method::AdapSCAPSO) &&
        report.methods.size() > 1) {
        out << "error reduction vs adapscapso:";
        for (const auto& [m, red] : compare(report)) {
            std::snprintf(line, sizeof(line), " %s %.2f%%", method_name(m), red);
            out << line;
        }
        out << "\n";
    }
    return out.str();
}

std::string nodes_csv(const ScenarioReport& report) {
    Deployment d = deployment_for_run(report, 0);
    std::ostringstream out;
    bool first = true;
    for (Method m : report.methods) {
        auto it = report.first_run_results.find(m);
        if (it == report.first_run_results.end()) continue;
        std::string csv = result_to_csv(it->second, d, method_name(m));
        if (!first) csv.erase(0, csv.find('\n') + 1);  // drop repeated header
        out << csv;
        first = false;
    }
    return out.str();
}

}  // namespace wsnloc
