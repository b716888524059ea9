#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qseries/registry.hpp"
#include "qseries/report.hpp"

namespace qseries {

struct RunConfig {
    std::int64_t N = 300;            /* truncation order for identity work */
    std::int64_t n_terms = 500;      /* terms per congruence / AP check */
    std::int64_t family_terms = 20;  /* terms per j-family check */
    std::int64_t enum_limit = 30;    /* exhaustive-enumeration ceiling */
    std::int64_t prime_bound = 100;  /* admissible-prime search bound */
    std::vector<int> alphas = {0};
    std::vector<std::int64_t> primes; /* empty = smallest admitted prime */
    std::vector<std::string> suites = {"all"};
    int jobs = 1;
    std::int64_t coeff_budget = 2'000'000;
};

SuiteResult run_identity_suite(const RunConfig &cfg);
SuiteResult run_interpretation_suite(const Registry &reg, const RunConfig &cfg);
SuiteResult run_lemma_suite(const RunConfig &cfg);
SuiteResult run_intermediate_suite(const Registry &reg, const RunConfig &cfg);
SuiteResult run_congruence_suite(const Registry &reg, const RunConfig &cfg);
/* Not part of `all`: reruns every modular claim with its modulus doubled and
 * expects a refutation. */
SuiteResult run_mutation_suite(const Registry &reg, const RunConfig &cfg);

/* Runs the configured suites in registry order. Unknown suite names throw. */
std::vector<SuiteResult> run_suites(const Registry &reg, const RunConfig &cfg);

std::string emit_report(const std::vector<SuiteResult> &results,
                        const RunConfig &cfg, const std::string &format);

/* 0 = all pass, 1 = at least one failure. */
int exit_code_for(const std::vector<SuiteResult> &results);

} // namespace qseries
