#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "qseries/partitions.hpp"
#include "qseries/registry.hpp"
#include "qseries/runner.hpp"

using namespace qseries;

/* Acceptance runs: one test case per criterion, each printing a single
 * PASS/FAIL line. Everything is exact arithmetic, tolerance zero. */

namespace {

const Registry &registry() {
    static Registry reg = load_registry(QSV_REGISTRY_PATH);
    return reg;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

bool all_pass(const SuiteResult &suite, std::string *why = nullptr) {
    for (const auto &c : suite.checks) {
        if (c.status != CheckStatus::Pass) {
            if (why)
                *why = c.id + " " + status_name(c.status) +
                       (c.note.empty() ? "" : " (" + c.note + ")");
            return false;
        }
    }
    return !suite.checks.empty();
}

void announce(int criterion, const char *what, bool ok, double secs,
              const std::string &detail = {}) {
    std::printf("criterion %d (%s): %s in %.2fs%s\n", criterion, what,
                ok ? "PASS" : "FAIL", secs,
                detail.empty() ? "" : ("  - " + detail).c_str());
    std::fflush(stdout);
}

CongruenceCheck::Kind kind_of(const std::string &run_id) {
    std::string base = run_id.substr(0, run_id.find(".p"));
    for (const auto &c : registry().congruences)
        if (c.id == base)
            return c.kind;
    return CongruenceCheck::Kind::ApVanishing;
}

} // namespace

TEST_CASE("criterion 1: identity suite, orders 0..200") {
    Timer timer;
    RunConfig cfg;
    cfg.N = 200;
    auto suite = run_identity_suite(cfg);
    std::string why;
    bool ok = all_pass(suite, &why);
    double secs = timer.seconds();
    announce(1, "identities", ok && secs < 10.0, secs, why);
    CHECK(ok);
    CHECK(secs < 10.0);
}

TEST_CASE("criterion 2: interpretation suite, counts to 500, enumeration to 30") {
    Timer timer;
    RunConfig cfg;
    cfg.n_terms = 500;
    cfg.enum_limit = 30;
    auto suite = run_interpretation_suite(registry(), cfg);
    std::string why;
    bool ok = all_pass(suite, &why);
    CHECK(suite.checks.size() == 4);
    double secs = timer.seconds();
    announce(2, "interpretations", ok && secs < 30.0, secs, why);
    CHECK(ok);
    CHECK(secs < 30.0);
}

TEST_CASE("criterion 3: lemma suite exact to 300, scans to 97") {
    Timer timer;
    RunConfig cfg;
    cfg.N = 300;
    auto suite = run_lemma_suite(cfg);
    std::string why;
    bool ok = all_pass(suite, &why);
    /* 5 psi primes + 4 l1 primes + 3 identities + 24 binomial pairs
     * + avoidance + unique-solution scan */
    CHECK(suite.checks.size() == 38);
    double secs = timer.seconds();
    announce(3, "lemmas", ok && secs < 60.0, secs, why);
    CHECK(ok);
    CHECK(secs < 60.0);
}

TEST_CASE("criterion 4: intermediate steps to 300") {
    Timer timer;
    RunConfig cfg;
    cfg.N = 300;
    auto suite = run_intermediate_suite(registry(), cfg);
    std::string why;
    bool ok = all_pass(suite, &why);
    CHECK(suite.checks.size() == registry().intermediates.size());
    double secs = timer.seconds();
    announce(4, "intermediates", ok && secs < 60.0, secs, why);
    CHECK(ok);
    CHECK(secs < 60.0);
}

static SuiteResult &congruence_suite_run() {
    static SuiteResult suite = [] {
        RunConfig cfg;
        cfg.n_terms = 500;
        cfg.family_terms = 20;
        return run_congruence_suite(registry(), cfg);
    }();
    return suite;
}

TEST_CASE("criterion 5: congruence families at alpha 0, 500 terms") {
    Timer timer;
    SuiteResult &suite = congruence_suite_run();
    double secs = timer.seconds();
    int seen = 0;
    bool ok = true;
    std::string why;
    for (const auto &c : suite.checks) {
        if (c.id != "g1" && kind_of(c.id) == CongruenceCheck::Kind::JFamily)
            continue;
        ++seen;
        if (c.status != CheckStatus::Pass) {
            ok = false;
            why = c.id + " " + status_name(c.status);
            break;
        }
    }
    /* 17 series congruences + 6 plain progressions + the g1 display */
    CHECK(seen == 24);
    announce(5, "congruence families", ok && secs < 120.0, secs, why);
    CHECK(ok);
    CHECK(secs < 120.0);
}

TEST_CASE("criterion 6: j-family vanishing at the smallest admitted prime") {
    Timer timer;
    SuiteResult &suite = congruence_suite_run();
    int seen = 0;
    bool ok = true;
    std::string why;
    for (const auto &c : suite.checks) {
        if (c.id == "g1" || kind_of(c.id) != CongruenceCheck::Kind::JFamily)
            continue;
        ++seen;
        if (c.status != CheckStatus::Pass) {
            ok = false;
            why = c.id + " " + status_name(c.status);
            break;
        }
    }
    /* 18 displayed vanishing families plus the repaired m family */
    CHECK(seen == 19);
    double secs = timer.seconds();
    announce(6, "j-family spot checks", ok && secs < 300.0, secs, why);
    CHECK(ok);
    CHECK(secs < 300.0);
}

TEST_CASE("criterion 7: mutation sanity, every strengthened modulus refuted") {
    Timer timer;
    RunConfig cfg;
    cfg.n_terms = 500;
    cfg.N = 300;
    auto suite = run_mutation_suite(registry(), cfg);
    bool ok = true;
    std::string why;
    int sharp = 0;
    bool e29_refuted_at_double = false;
    for (const auto &c : suite.checks) {
        if (c.status != CheckStatus::Pass) {
            ok = false;
            why = c.id + " " + status_name(c.status) + " (" + c.note + ")";
            break;
        }
        bool survived_double =
            c.note.find("true congruence") != std::string::npos;
        sharp += survived_double;
        if (c.id == "mut.e29")
            e29_refuted_at_double = !survived_double;
    }
    /* the canonical example: eq 29 strengthened to mod 32 must be caught
     * directly at the doubled modulus */
    CHECK(e29_refuted_at_double);
    double secs = timer.seconds();
    announce(7, "mutation sanity", ok && e29_refuted_at_double && secs < 30.0,
             secs,
             why.empty() ? std::to_string(sharp) +
                               " strengthened claims hold at the doubled "
                               "modulus; each refuted at its sharp power"
                         : why);
    CHECK(ok);
    CHECK(secs < 30.0);
}

TEST_CASE("criterion 8: dp and enumeration agree on 100 random constraints") {
    Timer timer;
    std::mt19937 rng(987654321);
    int done = 0;
    bool ok = true;
    std::string why;
    while (done < 100 && ok) {
        PartitionConstraint c;
        c.modulus = 1 + (rng() % 10);
        c.colours.resize(c.modulus);
        bool any = false;
        for (auto &col : c.colours) {
            col = (rng() % 4 == 0) ? 0 : (rng() % 3) + 1;
            any = any || col > 0;
        }
        if (!any)
            c.colours[rng() % c.modulus] = 1 + (rng() % 3);
        c.overlined = rng() % 2 == 0;
        auto brute = count_exhaustive_table(c, 25);
        auto dp = count_dp(c, 25);
        for (int n = 0; n <= 25; ++n) {
            if (dp.counts[n] != mpz_class(static_cast<unsigned long>(brute[n]))) {
                ok = false;
                why = "constraint " + std::to_string(done) + " at n=" +
                      std::to_string(n);
                break;
            }
        }
        ++done;
    }
    double secs = timer.seconds();
    announce(8, "oracle independence", ok, secs, why);
    CHECK(ok);
    CHECK(done == 100);
}
