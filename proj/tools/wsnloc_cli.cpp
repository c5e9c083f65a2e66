// Command-line front end for the wsnloc shared library. Builds a config
// document from flags and optional config file, executes it through the C
// API, and writes the CSV/JSON artifacts plus a reproducibility manifest.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsnloc.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Flags {
    std::optional<std::string> scenario;
    std::optional<int> nodes;
    std::optional<double> anchor_ratio;
    std::optional<double> range;
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> methods;
    std::optional<int> refine_passes;
    std::optional<double> noise_sigma;
    std::optional<int> threads;
    std::optional<double> omega_max, omega_min, c1, c2, amplitude, beta, delta;
    std::optional<int> iters, particles;
    std::string out_dir;
    std::string config_file;
    bool save_deployment = false;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--scenario", f.scenario, "Scenario preset (s1..s4)");
    cmd->add_option("--nodes", f.nodes, "Total node count");
    cmd->add_option("--anchor-ratio", f.anchor_ratio, "Anchor fraction in (0,1)");
    cmd->add_option("--range", f.range, "One-hop communication range L (m)");
    cmd->add_option("--runs", f.runs, "Monte-Carlo runs");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--methods", f.methods,
                    "Comma-separated methods (dvhop,pso,scapso,adapscapso)");
    cmd->add_option("--refine-passes", f.refine_passes,
                    "Localization refine passes");
    cmd->add_option("--noise-sigma", f.noise_sigma,
                    "Ranging noise std deviation (m)");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = auto)");
    cmd->add_option("--omega-max", f.omega_max, "Inertia weight upper bound");
    cmd->add_option("--omega-min", f.omega_min, "Inertia weight lower bound");
    cmd->add_option("--c1", f.c1, "Personal-best acceleration coefficient");
    cmd->add_option("--c2", f.c2, "Global-best acceleration coefficient");
    cmd->add_option("--amplitude", f.amplitude, "Initial SCA amplitude");
    cmd->add_option("--beta", f.beta, "Module-selector decay rate");
    cmd->add_option("--iters", f.iters, "Iterations per swarm (T)");
    cmd->add_option("--particles", f.particles, "Particles per swarm");
    cmd->add_option("--delta", f.delta, "Base velocity coefficient (m/hop)");
    cmd->add_option("--out", f.out_dir,
                    "Output directory (default: $WSNLOC_OUT_DIR or .)");
    cmd->add_option("--config", f.config_file,
                    "Config or manifest JSON file; flags override it");
}

[[noreturn]] void die(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(1);
}

void check(wsnloc_status st) {
    if (st != WSNLOC_OK)
        die(std::string(wsnloc_status_name(st)) + ": " + wsnloc_last_error());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Flags take precedence over the config file, which takes precedence over
// the preset named by "scenario".
ordered_json build_config(const Flags& f) {
    ordered_json cfg = ordered_json::object();
    if (!f.config_file.empty()) {
        ordered_json file = ordered_json::parse(read_file(f.config_file),
                                                nullptr, false);
        if (file.is_discarded()) die("config file is not valid JSON");
        // A manifest written by a previous invocation works as a config.
        if (file.contains("resolved_config")) file = file["resolved_config"];
        cfg = file;
    }
    auto set = [&cfg](const char* key, const auto& opt) {
        if (opt) cfg[key] = *opt;
    };
    set("scenario", f.scenario);
    set("n_nodes", f.nodes);
    set("anchor_ratio", f.anchor_ratio);
    set("comm_range", f.range);
    set("n_runs", f.runs);
    set("master_seed", f.seed);
    set("refine_passes", f.refine_passes);
    set("noise_sigma", f.noise_sigma);
    set("threads", f.threads);
    if (f.methods) {
        ordered_json arr = ordered_json::array();
        std::stringstream ss(*f.methods);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) arr.push_back(item);
        cfg["methods"] = arr;
    }
    ordered_json params =
        cfg.contains("params") ? cfg["params"] : ordered_json::object();
    auto setp = [&params](const char* key, const auto& opt) {
        if (opt) params[key] = *opt;
    };
    setp("omega_max", f.omega_max);
    setp("omega_min", f.omega_min);
    setp("c1", f.c1);
    setp("c2", f.c2);
    setp("amplitude", f.amplitude);
    setp("beta", f.beta);
    setp("max_iters", f.iters);
    setp("n_particles", f.particles);
    setp("delta", f.delta);
    if (!params.empty()) cfg["params"] = params;
    return cfg;
}

fs::path resolve_out_dir(const Flags& f) {
    if (!f.out_dir.empty()) return f.out_dir;
    if (const char* env = std::getenv("WSNLOC_OUT_DIR")) return env;
    return ".";
}

std::string fetch(const wsnloc_sim* sim,
                  wsnloc_status (*fn)(const wsnloc_sim*, char**)) {
    char* s = nullptr;
    check(fn(sim, &s));
    std::string out(s);
    wsnloc_string_free(s);
    return out;
}

char hex_digit(unsigned v) { return "0123456789abcdef"[v & 0xF]; }

std::string hash_hex(const std::string& data) {
    std::uint64_t h = wsnloc_hash_bytes(data.data(), data.size());
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<size_t>(i)] = hex_digit(h & 0xF);
    return out;
}

// Writes artifacts atomically as a set: any failure removes everything
// written by this invocation.
class ArtifactWriter {
public:
    explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
    }

    void write(const std::string& name, const std::string& content) {
        fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << content)) {
            rollback();
            die("cannot write " + path.string());
        }
        written_.push_back(path);
        hashes_[name] = hash_hex(content);
    }

    void write_manifest(const std::string& command,
                        const std::string& resolved_config) {
        ordered_json m;
        m["command"] = command;
        m["resolved_config"] = ordered_json::parse(resolved_config);
        m["artifacts"] = hashes_;
        write("manifest.json", m.dump(2) + "\n");
    }

    void rollback() {
        for (const auto& p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        written_.clear();
    }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
    ordered_json hashes_ = ordered_json::object();
};

struct SimHandle {
    wsnloc_sim* sim = nullptr;
    ~SimHandle() { wsnloc_sim_destroy(sim); }
};

int cmd_run(const Flags& f) {
    ordered_json cfg = build_config(f);
    SimHandle h;
    check(wsnloc_sim_create(cfg.dump().c_str(), &h.sim));
    check(wsnloc_sim_run(h.sim));

    ArtifactWriter out(resolve_out_dir(f));
    out.write("runs.csv", fetch(h.sim, wsnloc_sim_runs_csv));
    out.write("convergence.csv", fetch(h.sim, wsnloc_sim_convergence_csv));
    out.write("summary.json", fetch(h.sim, wsnloc_sim_summary_json) + "\n");
    if (f.save_deployment) {
        char* dep = nullptr;
        check(wsnloc_sim_deployment_json(h.sim, 0, &dep));
        std::string text(dep);
        wsnloc_string_free(dep);
        out.write("deployment_run0.json", text + "\n");
    }
    out.write_manifest("run", fetch(h.sim, wsnloc_sim_resolved_config_json));

    std::cout << fetch(h.sim, wsnloc_sim_summary_text);
    return 0;
}

int cmd_convergence(const Flags& f) {
    ordered_json cfg = build_config(f);
    if (!cfg.contains("methods"))
        cfg["methods"] = {"pso", "scapso", "adapscapso"};
    for (const auto& m : cfg["methods"])
        if (m == "dvhop")
            die("convergence: dvhop has no iterative trace; "
                "use swarm methods only");

    SimHandle h;
    check(wsnloc_sim_create(cfg.dump().c_str(), &h.sim));
    check(wsnloc_sim_run(h.sim));

    ArtifactWriter out(resolve_out_dir(f));
    out.write("convergence.csv", fetch(h.sim, wsnloc_sim_convergence_csv));
    out.write_manifest("convergence",
                       fetch(h.sim, wsnloc_sim_resolved_config_json));
    std::cout << fetch(h.sim, wsnloc_sim_summary_text);
    return 0;
}

int cmd_replay(const Flags& f, const std::string& deployment_file) {
    ordered_json cfg = build_config(f);
    SimHandle h;
    check(wsnloc_sim_create(cfg.dump().c_str(), &h.sim));
    check(wsnloc_sim_load_deployment(h.sim,
                                     read_file(deployment_file).c_str()));
    check(wsnloc_sim_run(h.sim));

    ArtifactWriter out(resolve_out_dir(f));
    out.write("runs.csv", fetch(h.sim, wsnloc_sim_runs_csv));
    out.write("nodes.csv", fetch(h.sim, wsnloc_sim_nodes_csv));
    out.write("summary.json", fetch(h.sim, wsnloc_sim_summary_json) + "\n");
    out.write_manifest("replay", fetch(h.sim, wsnloc_sim_resolved_config_json));
    std::cout << fetch(h.sim, wsnloc_sim_summary_text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"WSN node-localization simulator (adaptive hybrid SCA-PSO "
                 "with DV-Hop, PSO and SCAPSO baselines)"};
    app.require_subcommand(1);

    Flags run_flags, conv_flags, replay_flags;
    std::string deployment_file;

    auto* run = app.add_subcommand(
        "run", "Run a scenario and write runs.csv, convergence.csv, "
               "summary.json and manifest.json");
    add_common_flags(run, run_flags);
    run->add_flag("--save-deployment", run_flags.save_deployment,
                  "Also write the run-0 deployment for later replay");

    auto* conv = app.add_subcommand(
        "convergence", "Emit mean convergence curves for the swarm methods");
    add_common_flags(conv, conv_flags);

    auto* replay = app.add_subcommand(
        "replay", "Re-run methods on a saved deployment (no redeploy)");
    replay->add_option("deployment", deployment_file, "Deployment JSON file")
        ->required();
    add_common_flags(replay, replay_flags);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(run_flags);
    if (conv->parsed()) return cmd_convergence(conv_flags);
    return cmd_replay(replay_flags, deployment_file);
}
