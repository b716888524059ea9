#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <regex>
#include <string>

#include <json.hpp>

#include "qseries/registry.hpp"
#include "qseries/runner.hpp"

using namespace qseries;

namespace {

const Registry &registry() {
    static Registry reg = load_registry(QSV_REGISTRY_PATH);
    return reg;
}

RunConfig small_config() {
    RunConfig cfg;
    cfg.N = 60;
    cfg.n_terms = 40;
    cfg.family_terms = 4;
    cfg.enum_limit = 12;
    return cfg;
}

std::string strip_timing(std::string text) {
    static const std::regex ms("\"elapsed_ms\": [0-9]+");
    return std::regex_replace(text, ms, "\"elapsed_ms\": 0");
}

int run_tool(const std::string &args) {
    std::string cmd = std::string(QSV_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("suite orchestration and summaries") {
    RunConfig cfg = small_config();
    cfg.suites = {"identities", "intermediates"};
    auto results = run_suites(registry(), cfg);
    REQUIRE(results.size() == 2);
    CHECK(results[0].name == "identities");
    CHECK(results[1].name == "intermediates");
    for (const auto &suite : results) {
        int tally = suite.count(CheckStatus::Pass) +
                    suite.count(CheckStatus::Fail) +
                    suite.count(CheckStatus::Skip);
        CHECK(tally == static_cast<int>(suite.checks.size()));
        CHECK(suite.count(CheckStatus::Fail) == 0);
    }
    CHECK(exit_code_for(results) == 0);

    CHECK_THROWS_AS(
        [&] {
            RunConfig bad = cfg;
            bad.suites = {"nonsense"};
            return run_suites(registry(), bad);
        }(),
        std::invalid_argument);
}

TEST_CASE("json report schema") {
    RunConfig cfg = small_config();
    cfg.suites = {"interpretations"};
    auto results = run_suites(registry(), cfg);
    auto text = emit_report(results, cfg, "json");
    auto root = nlohmann::json::parse(text);
    CHECK(root.contains("run"));
    CHECK(root["run"]["N"] == 60);
    REQUIRE(root.contains("checks"));
    REQUIRE(root["checks"].is_array());
    REQUIRE(root["checks"].size() == registry().interpretations.size());
    for (const auto &c : root["checks"]) {
        CHECK(c.contains("id"));
        CHECK(c.contains("paper_label"));
        CHECK(c.contains("params"));
        CHECK(c.contains("status"));
        CHECK(c.contains("elapsed_ms"));
        if (c["status"] == "pass")
            CHECK(!c.contains("first_failure"));
    }
    int pass = root["summary"]["pass"].get<int>();
    CHECK(pass == static_cast<int>(root["checks"].size()));
    CHECK(root["summary"]["fail"] == 0);
}

TEST_CASE("reports are deterministic modulo timing") {
    RunConfig cfg = small_config();
    cfg.suites = {"identities", "congruences"};
    auto r1 = run_suites(registry(), cfg);
    auto r2 = run_suites(registry(), cfg);
    CHECK(strip_timing(emit_report(r1, cfg, "json")) ==
          strip_timing(emit_report(r2, cfg, "json")));
    CHECK(emit_report(r1, cfg, "csv").substr(0, 40) ==
          emit_report(r2, cfg, "csv").substr(0, 40));
}

TEST_CASE("parallel execution returns the same report") {
    RunConfig seq = small_config();
    seq.suites = {"congruences"};
    RunConfig par = seq;
    par.jobs = 2;
    auto r1 = run_suites(registry(), seq);
    auto r2 = run_suites(registry(), par);
    /* the run configs differ (jobs), so compare only the checks arrays */
    auto c1 = nlohmann::json::parse(strip_timing(emit_report(r1, seq, "json")));
    auto c2 = nlohmann::json::parse(strip_timing(emit_report(r2, par, "json")));
    CHECK(c1["checks"] == c2["checks"]);
    CHECK(c1["summary"] == c2["summary"]);
}

TEST_CASE("csv and text formats") {
    RunConfig cfg = small_config();
    cfg.suites = {"lemmas"};
    cfg.primes = {3, 5};
    auto results = run_suites(registry(), cfg);
    auto csv = emit_report(results, cfg, "csv");
    CHECK(csv.rfind("suite,id,paper_label,status", 0) == 0);
    std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == results[0].checks.size() + 1);
    auto text = emit_report(results, cfg, "text");
    CHECK(text.find("PASS") != std::string::npos);
    CHECK(text.find("== suite lemmas ==") != std::string::npos);
    CHECK_THROWS_AS(emit_report(results, cfg, "yaml"), std::invalid_argument);
}

TEST_CASE("budget exhaustion skips rather than passes") {
    RunConfig cfg = small_config();
    cfg.suites = {"congruences"};
    cfg.coeff_budget = 8;
    auto results = run_suites(registry(), cfg);
    REQUIRE(results.size() == 1);
    CHECK(results[0].count(CheckStatus::Fail) == 0);
    CHECK(results[0].count(CheckStatus::Pass) == 0);
    CHECK(results[0].count(CheckStatus::Skip) ==
          static_cast<int>(results[0].checks.size()));
    CHECK(exit_code_for(results) == 0);
    for (const auto &c : results[0].checks)
        CHECK(c.note.find("budget") != std::string::npos);
}

TEST_CASE("failures drive the exit code") {
    std::vector<SuiteResult> results(1);
    results[0].name = "synthetic";
    results[0].checks.push_back(VerificationReport::pass("ok", "x"));
    CHECK(exit_code_for(results) == 0);
    results[0].checks.push_back(VerificationReport::fail(
        "bad", "x", FirstFailure{3, "1", "0"}));
    CHECK(exit_code_for(results) == 1);
}

TEST_CASE("registry parsing rejects malformed documents") {
    CHECK_THROWS(parse_registry("{"));
    CHECK_THROWS(parse_registry("{\"interpretations\":[],\"congruences\":[],"
                                "\"intermediates\":[{\"id\":\"x\"}]}"));
    CHECK_THROWS(load_registry("/nonexistent/path.json"));
}

TEST_CASE("cli exit codes") {
    CHECK(run_tool("expand l1 -N 5") == 0);
    CHECK(run_tool("expand 'l1 + zork' -N 5") == 2);
    CHECK(run_tool("expand 'l1/q^1'") == 2);
    CHECK(run_tool("verify --suite identities -N 60") == 0);
    CHECK(run_tool("verify --suite nonsense") == 2);
    CHECK(run_tool("verify --registry /nonexistent.json") == 2);
    CHECK(run_tool("verify --suite lemmas --format json -N 40 --primes 3,5") == 0);
}
