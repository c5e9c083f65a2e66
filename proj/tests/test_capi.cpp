#include <cstring>
#include <string>

#include "doctest.h"
#include "wsnloc.h"

namespace {

constexpr const char* kTinyConfig =
    R"({"scenario":"custom","n_nodes":20,"anchor_ratio":0.25,
        "comm_range":40,"n_runs":2,"master_seed":42,
        "methods":["dvhop","adapscapso"],"params":{"max_iters":20}})";

struct Sim {
    wsnloc_sim* ptr = nullptr;
    ~Sim() { wsnloc_sim_destroy(ptr); }
};

std::string fetch(const wsnloc_sim* sim,
                  wsnloc_status (*fn)(const wsnloc_sim*, char**)) {
    char* s = nullptr;
    REQUIRE(fn(sim, &s) == WSNLOC_OK);
    std::string out(s);
    wsnloc_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("create rejects bad configs with a named offending key") {
    wsnloc_sim* sim = nullptr;
    CHECK(wsnloc_sim_create(nullptr, &sim) == WSNLOC_ERR_INVALID_ARGUMENT);
    CHECK(wsnloc_sim_create("{", &sim) == WSNLOC_ERR_PARSE);
    CHECK(wsnloc_sim_create(R"({"bogus_key":1})", &sim) ==
          WSNLOC_ERR_INVALID_CONFIG);
    CHECK(std::string(wsnloc_last_error()).find("bogus_key") !=
          std::string::npos);
    CHECK(wsnloc_sim_create(R"({"n_nodes":1})", &sim) ==
          WSNLOC_ERR_INVALID_CONFIG);
}

TEST_CASE("reports require a completed run") {
    Sim sim;
    REQUIRE(wsnloc_sim_create(kTinyConfig, &sim.ptr) == WSNLOC_OK);
    char* out = nullptr;
    CHECK(wsnloc_sim_runs_csv(sim.ptr, &out) == WSNLOC_ERR_NOT_RUN);
    // resolved config is available before running
    CHECK(wsnloc_sim_resolved_config_json(sim.ptr, &out) == WSNLOC_OK);
    CHECK(std::string(out).find("\"n_nodes\": 20") != std::string::npos);
    wsnloc_string_free(out);
}

TEST_CASE("a full run produces all artifacts deterministically") {
    Sim a, b;
    REQUIRE(wsnloc_sim_create(kTinyConfig, &a.ptr) == WSNLOC_OK);
    REQUIRE(wsnloc_sim_create(kTinyConfig, &b.ptr) == WSNLOC_OK);
    REQUIRE(wsnloc_sim_run(a.ptr) == WSNLOC_OK);
    REQUIRE(wsnloc_sim_run(b.ptr) == WSNLOC_OK);

    auto runs = fetch(a.ptr, wsnloc_sim_runs_csv);
    CHECK(runs == fetch(b.ptr, wsnloc_sim_runs_csv));
    CHECK(runs.rfind("scenario,run,method,", 0) == 0);
    CHECK(fetch(a.ptr, wsnloc_sim_convergence_csv) ==
          fetch(b.ptr, wsnloc_sim_convergence_csv));
    CHECK(fetch(a.ptr, wsnloc_sim_summary_json)
              .find("\"adapscapso\"") != std::string::npos);
    CHECK(fetch(a.ptr, wsnloc_sim_summary_text).find("mean_error_m") !=
          std::string::npos);
    CHECK(fetch(a.ptr, wsnloc_sim_nodes_csv).rfind("node_id,", 0) == 0);
}

TEST_CASE("deployment export feeds replay mode") {
    Sim a;
    REQUIRE(wsnloc_sim_create(kTinyConfig, &a.ptr) == WSNLOC_OK);
    REQUIRE(wsnloc_sim_run(a.ptr) == WSNLOC_OK);

    char* dep = nullptr;
    REQUIRE(wsnloc_sim_deployment_json(a.ptr, 0, &dep) == WSNLOC_OK);
    std::string deployment(dep);
    wsnloc_string_free(dep);
    CHECK(wsnloc_sim_deployment_json(a.ptr, 99, &dep) ==
          WSNLOC_ERR_INVALID_ARGUMENT);

    Sim b;
    REQUIRE(wsnloc_sim_create(kTinyConfig, &b.ptr) == WSNLOC_OK);
    REQUIRE(wsnloc_sim_load_deployment(b.ptr, deployment.c_str()) == WSNLOC_OK);
    REQUIRE(wsnloc_sim_run(b.ptr) == WSNLOC_OK);
    // every run replays the same deployment
    char* dep2 = nullptr;
    REQUIRE(wsnloc_sim_deployment_json(b.ptr, 1, &dep2) == WSNLOC_OK);
    CHECK(deployment == dep2);
    wsnloc_string_free(dep2);

    CHECK(wsnloc_sim_load_deployment(b.ptr, "{\"nodes\":[]}") ==
          WSNLOC_ERR_PARSE);
}

TEST_CASE("status names and hashing helpers") {
    CHECK(std::string(wsnloc_status_name(WSNLOC_OK)) == "ok");
    CHECK(std::string(wsnloc_status_name(WSNLOC_ERR_NOT_RUN)) == "not_run");
    CHECK(std::string(wsnloc_version()).find("wsnloc") == 0);
    // FNV-1a of the empty string
    CHECK(wsnloc_hash_bytes("", 0) == 0xCBF29CE484222325ULL);
    CHECK(wsnloc_hash_bytes("abc", 3) == wsnloc_hash_bytes("abc", 3));
    CHECK(wsnloc_hash_bytes("abc", 3) != wsnloc_hash_bytes("abd", 3));
}
