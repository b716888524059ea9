#include "qseries/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qseries/dissection.hpp"
#include "qseries/named_series.hpp"
#include "qseries/qexpr.hpp"
#include "qseries/qobjects.hpp"

namespace qseries {

namespace {

using Task = std::function<VerificationReport()>;

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

/* Runs tasks (possibly in parallel) and collects reports in task order.
 * A task that throws becomes a failing report rather than taking down the
 * run. */
SuiteResult run_tasks(const std::string &name, std::vector<Task> tasks,
                      int jobs) {
    SuiteResult result;
    result.name = name;
    result.checks.resize(tasks.size());
    auto run_one = [&](std::size_t i) {
        std::int64_t c0 = now_ms();
        try {
            result.checks[i] = tasks[i]();
        } catch (const std::exception &err) {
            result.checks[i] = VerificationReport::fail(
                name + ".task" + std::to_string(i), "",
                FirstFailure{-1, "", ""},
                std::string("unexpected error: ") + err.what());
        }
        result.checks[i].elapsed_ms = now_ms() - c0;
    };
    std::int64_t t0 = now_ms();
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size())
                    return;
                run_one(i);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    result.elapsed_ms = now_ms() - t0;
    return result;
}

VerificationReport triple_identity_check(const std::string &id,
                                         std::int64_t N) {
    const NamedSeries &ns = named_series(id);
    VerificationReport rep =
        VerificationReport::pass("id." + id, id + " sum = product = eta");
    rep.add_param("N", N);
    Series sum = ns.sum_side(N);
    Series prod = ns.product_side(N);
    Series eta = ns.eta_side(N);
    if (auto bad = first_mismatch(sum, prod, N)) {
        rep.status = CheckStatus::Fail;
        rep.first_failure =
            FirstFailure{*bad, sum.coeff_str(*bad), prod.coeff_str(*bad)};
        rep.note = "sum side vs product side";
        return rep;
    }
    if (auto bad = first_mismatch(prod, eta, N)) {
        rep.status = CheckStatus::Fail;
        rep.first_failure =
            FirstFailure{*bad, prod.coeff_str(*bad), eta.coeff_str(*bad)};
        rep.note = "product side vs eta form";
        return rep;
    }
    return rep;
}

VerificationReport jtp_check(const ThetaAtom &atom, std::int64_t N) {
    QExprPtr as_expr = qx_theta(atom);
    VerificationReport rep = VerificationReport::pass(
        "jtp." + print_qexpr(as_expr), "jaco");
    rep.add_param("N", N);
    Series sum = theta_series(atom, N);
    Series prod = jacobi_product_series(atom, N);
    if (auto bad = first_mismatch(sum, prod, N)) {
        rep.status = CheckStatus::Fail;
        rep.first_failure =
            FirstFailure{*bad, sum.coeff_str(*bad), prod.coeff_str(*bad)};
    }
    return rep;
}

VerificationReport expr_identity_check(const std::string &id,
                                       const std::string &label,
                                       const Series &lhs, const Series &rhs,
                                       std::int64_t N) {
    VerificationReport rep = VerificationReport::pass(id, label);
    rep.add_param("N", N);
    if (auto bad = first_mismatch(lhs, rhs, N)) {
        rep.status = CheckStatus::Fail;
        rep.first_failure =
            FirstFailure{*bad, lhs.coeff_str(*bad), rhs.coeff_str(*bad)};
    }
    return rep;
}

std::vector<std::int64_t> family_primes(const CongruenceCheck &c,
                                        const RunConfig &cfg) {
    if (!cfg.primes.empty()) {
        std::vector<std::int64_t> out;
        for (std::int64_t p : cfg.primes)
            if (c.prime.admits(p))
                out.push_back(p);
        std::sort(out.begin(), out.end());
        return out;
    }
    auto all = admissible_primes(c.prime, cfg.prime_bound);
    if (all.size() > 1)
        all.resize(1); /* smallest admitted prime */
    return all;
}

} // namespace

SuiteResult run_identity_suite(const RunConfig &cfg) {
    std::vector<Task> tasks;
    for (const auto &id : named_series_ids())
        tasks.push_back([id, N = cfg.N] { return triple_identity_check(id, N); });

    std::vector<ThetaAtom> atoms;
    for (std::int64_t k = 1; k <= 4; ++k)
        atoms.push_back(ThetaAtom::phi(k));
    for (std::int64_t k : {1, 2, 3, 4, 6})
        atoms.push_back(ThetaAtom::psi(k));
    atoms.push_back(ThetaAtom::general(-1, 1, -1, 2)); /* = l1 */
    atoms.push_back(ThetaAtom::general(-1, 2, -1, 4)); /* = l2 */
    atoms.push_back(ThetaAtom::general(1, 1, 1, 5));
    atoms.push_back(ThetaAtom::general(-1, 1, -1, 5));
    atoms.push_back(ThetaAtom::general(-1, 3, -1, 9));
    atoms.push_back(ThetaAtom::general(-1, 1, -1, 1)); /* = phi(-q) */
    for (const auto &atom : atoms)
        tasks.push_back([atom, N = cfg.N] { return jtp_check(atom, N); });

    tasks.push_back([N = cfg.N] {
        Series lhs = mul(theta_series(ThetaAtom::psi(1), N), eta_series(1, N));
        Series rhs = eval_qexpr(parse_qexpr("l2^2"), N);
        return expr_identity_check("theta.psi-eta", "eq5", lhs, rhs, N);
    });
    tasks.push_back([N = cfg.N] {
        Series phi_neg = theta_series(ThetaAtom::general(-1, 1, -1, 1), N);
        Series lhs = mul(phi_neg, eta_series(2, N));
        Series rhs = eval_qexpr(parse_qexpr("l1^2"), N);
        return expr_identity_check("theta.phineg-eta", "eq6", lhs, rhs, N);
    });
    tasks.push_back([N = cfg.N] {
        /* phi(q) as the quotient (-q;q^2)(q^2;q^2) / ((q;q^2)(-q^2;q^2)). */
        Series num = mul(pochhammer_series({-1, 1, 2}, N),
                         pochhammer_series({1, 2, 2}, N));
        Series den = mul(pochhammer_series({1, 1, 2}, N),
                         pochhammer_series({-1, 2, 2}, N));
        Series lhs = div_unit(num, den);
        Series rhs = theta_series(ThetaAtom::phi(1), N);
        return expr_identity_check("theta.phi-quotient", "eq4", lhs, rhs, N);
    });
    tasks.push_back([N = cfg.N] {
        Series lhs = theta_series(ThetaAtom::phi(1), N);
        Series rhs = eval_qexpr(parse_qexpr("l2^5/(l1^2*l4^2)"), N);
        return expr_identity_check("theta.phi-eta", "eq4", lhs, rhs, N);
    });
    tasks.push_back([N = cfg.N] {
        /* phi(-q) as (q;q)_inf / (-q;q)_inf */
        Series lhs = theta_series(ThetaAtom::general(-1, 1, -1, 1), N);
        Series rhs = div_unit(pochhammer_series({1, 1, 1}, N),
                              pochhammer_series({-1, 1, 1}, N));
        return expr_identity_check("theta.phineg-quotient", "eq6", lhs, rhs, N);
    });
    tasks.push_back([N = cfg.N] {
        VerificationReport rep = VerificationReport::pass(
            "overpartition.parity", "overpartition generating function");
        rep.add_param("N", N);
        Series o = overpartition_series(N);
        for (std::int64_t n = 0; n <= N; ++n) {
            const mpz_class &v = o.zcoeff(n);
            bool ok = v >= 0 && (n == 0 || mpz_even_p(v.get_mpz_t()));
            if (!ok) {
                rep.status = CheckStatus::Fail;
                rep.first_failure =
                    FirstFailure{n, v.get_str(), "nonnegative even"};
                return rep;
            }
        }
        return rep;
    });

    return run_tasks("identities", std::move(tasks), cfg.jobs);
}

SuiteResult run_interpretation_suite(const Registry &reg,
                                     const RunConfig &cfg) {
    auto cache = std::make_shared<SeriesCache>();
    std::vector<Task> tasks;
    for (const auto &c : reg.interpretations)
        tasks.push_back([c, cache, n = cfg.n_terms, e = cfg.enum_limit] {
            return check_interpretation(c, n, e, *cache);
        });
    return run_tasks("interpretations", std::move(tasks), cfg.jobs);
}

SuiteResult run_lemma_suite(const RunConfig &cfg) {
    std::vector<Task> tasks;
    std::vector<std::int64_t> psi_primes = {3, 5, 7, 11, 13};
    std::vector<std::int64_t> l1_primes = {5, 7, 11, 13};
    if (!cfg.primes.empty()) {
        psi_primes.clear();
        l1_primes.clear();
        for (std::int64_t p : cfg.primes) {
            if (p >= 3 && p % 2 == 1 && is_prime(p))
                psi_primes.push_back(p);
            if (p >= 5 && is_prime(p))
                l1_primes.push_back(p);
        }
    }
    for (std::int64_t p : psi_primes)
        tasks.push_back([p, N = cfg.N] { return verify_psi_dissection(p, N); });
    for (std::int64_t p : l1_primes)
        tasks.push_back([p, N = cfg.N] { return verify_l1_dissection(p, N); });
    tasks.push_back([N = cfg.N] {
        auto reps = verify_2_3_dissections(N);
        return reps[0];
    });
    tasks.push_back([N = cfg.N] { return verify_2_3_dissections(N)[1]; });
    tasks.push_back([N = cfg.N] { return verify_2_3_dissections(N)[2]; });
    for (std::int64_t k = 1; k <= 6; ++k)
        for (std::int64_t m = 1; m <= 4; ++m)
            tasks.push_back(
                [k, m, N = cfg.N] { return verify_binomial_congruence(k, m, N); });
    tasks.push_back([] { return verify_residue_avoidance(97); });
    tasks.push_back([] { return verify_g3_unique_solution(97); });
    return run_tasks("lemmas", std::move(tasks), cfg.jobs);
}

SuiteResult run_intermediate_suite(const Registry &reg, const RunConfig &cfg) {
    auto cache = std::make_shared<SeriesCache>();
    std::vector<Task> tasks;
    for (const auto &c : reg.intermediates)
        tasks.push_back(
            [c, cache, N = cfg.N] { return check_intermediate(c, N, *cache); });
    return run_tasks("intermediates", std::move(tasks), cfg.jobs);
}

SuiteResult run_congruence_suite(const Registry &reg, const RunConfig &cfg) {
    auto cache = std::make_shared<SeriesCache>();
    std::vector<Task> tasks;
    for (const auto &c : reg.congruences) {
        if (c.kind == CongruenceCheck::Kind::ApVanishing) {
            tasks.push_back([c, cache, &cfg] {
                return check_ap_vanishing(c, cfg.n_terms, *cache,
                                          cfg.coeff_budget);
            });
            continue;
        }
        auto primes = family_primes(c, cfg);
        if (primes.empty()) {
            tasks.push_back([c, &cfg] {
                auto rep = VerificationReport::skip(
                    c.id, c.paper_label,
                    "no admitted prime within bound " +
                        std::to_string(cfg.prime_bound));
                return rep;
            });
            continue;
        }
        for (std::int64_t p : primes) {
            for (int alpha : cfg.alphas) {
                std::string run_id = c.id + ".p" + std::to_string(p) + ".a" +
                                     std::to_string(alpha);
                if (c.kind == CongruenceCheck::Kind::SeriesCongruence) {
                    tasks.push_back([c, p, alpha, run_id, cache, &cfg] {
                        auto rep = check_series_congruence(
                            c, p, alpha, cfg.n_terms, *cache, cfg.coeff_budget);
                        rep.id = run_id;
                        return rep;
                    });
                } else {
                    if (c.alpha_max >= 0 && alpha > c.alpha_max) {
                        tasks.push_back([c, run_id] {
                            return VerificationReport::skip(
                                run_id, c.paper_label,
                                "family stated for alpha <= " +
                                    std::to_string(c.alpha_max) + " only");
                        });
                        continue;
                    }
                    tasks.push_back([c, p, alpha, run_id, cache, &cfg] {
                        auto rep =
                            check_j_family(c, p, alpha, cfg.family_terms,
                                           *cache, cfg.coeff_budget);
                        rep.id = run_id;
                        return rep;
                    });
                }
            }
        }
    }
    /* The alpha-step proof display for the first g2 family. */
    {
        std::int64_t p = cfg.primes.empty() ? 3 : cfg.primes.front();
        tasks.push_back([p, cache, &cfg] {
            return check_g1_display(p, cfg.n_terms, *cache, cfg.coeff_budget);
        });
    }
    return run_tasks("congruences", std::move(tasks), cfg.jobs);
}

SuiteResult run_mutation_suite(const Registry &reg, const RunConfig &cfg) {
    auto cache = std::make_shared<SeriesCache>();
    std::vector<Task> tasks;
    std::int64_t terms = std::min<std::int64_t>(cfg.n_terms, 500);
    for (const auto &c : reg.congruences) {
        if (c.kind == CongruenceCheck::Kind::JFamily)
            continue;
        tasks.push_back([c, cache, terms, &cfg] {
            return check_mutation(c, terms, *cache, cfg.coeff_budget);
        });
    }
    for (const auto &c : reg.intermediates) {
        if (c.exact)
            continue;
        tasks.push_back(
            [c, cache, N = cfg.N] { return check_mutation(c, N, *cache); });
    }
    return run_tasks("mutation", std::move(tasks), cfg.jobs);
}

std::vector<SuiteResult> run_suites(const Registry &reg, const RunConfig &cfg) {
    bool all = false;
    for (const auto &s : cfg.suites)
        all = all || s == "all";
    auto wanted = [&](const std::string &name) {
        if (all)
            return true;
        return std::find(cfg.suites.begin(), cfg.suites.end(), name) !=
               cfg.suites.end();
    };
    for (const auto &s : cfg.suites)
        if (s != "all" && s != "identities" && s != "interpretations" &&
            s != "lemmas" && s != "intermediates" && s != "congruences" &&
            s != "mutation")
            throw std::invalid_argument("unknown suite '" + s + "'");

    std::vector<SuiteResult> out;
    if (wanted("identities"))
        out.push_back(run_identity_suite(cfg));
    if (wanted("interpretations"))
        out.push_back(run_interpretation_suite(reg, cfg));
    if (wanted("lemmas"))
        out.push_back(run_lemma_suite(cfg));
    if (wanted("intermediates"))
        out.push_back(run_intermediate_suite(reg, cfg));
    if (wanted("congruences"))
        out.push_back(run_congruence_suite(reg, cfg));
    if (!all && wanted("mutation"))
        out.push_back(run_mutation_suite(reg, cfg));
    return out;
}

const char *status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::Skip:
        return "skip";
    }
    return "?";
}

namespace {

nlohmann::ordered_json report_json(const std::vector<SuiteResult> &results,
                                   const RunConfig &cfg) {
    nlohmann::ordered_json root;
    nlohmann::ordered_json run;
    run["N"] = cfg.N;
    run["terms"] = cfg.n_terms;
    run["family_terms"] = cfg.family_terms;
    run["enum_limit"] = cfg.enum_limit;
    run["prime_bound"] = cfg.prime_bound;
    run["alphas"] = cfg.alphas;
    if (cfg.primes.empty())
        run["primes"] = "auto";
    else
        run["primes"] = cfg.primes;
    run["suites"] = cfg.suites;
    run["jobs"] = cfg.jobs;
    run["coeff_budget"] = cfg.coeff_budget;
    root["run"] = run;

    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    int pass = 0, fail = 0, skip = 0;
    for (const auto &suite : results) {
        for (const auto &c : suite.checks) {
            nlohmann::ordered_json jc;
            jc["id"] = c.id;
            jc["paper_label"] = c.paper_label;
            nlohmann::ordered_json params;
            params["suite"] = suite.name;
            for (const auto &[k, v] : c.params)
                params[k] = v;
            jc["params"] = params;
            jc["status"] = status_name(c.status);
            if (c.first_failure) {
                jc["first_failure"] = {{"index", c.first_failure->index},
                                       {"lhs", c.first_failure->lhs},
                                       {"rhs", c.first_failure->rhs}};
            }
            if (!c.note.empty())
                jc["note"] = c.note;
            jc["elapsed_ms"] = c.elapsed_ms;
            checks.push_back(jc);
            pass += c.status == CheckStatus::Pass;
            fail += c.status == CheckStatus::Fail;
            skip += c.status == CheckStatus::Skip;
        }
    }
    root["checks"] = checks;
    root["summary"] = {{"pass", pass}, {"fail", fail}, {"skip", skip}};
    return root;
}

std::string emit_csv(const std::vector<SuiteResult> &results) {
    std::ostringstream out;
    out << "suite,id,paper_label,status,first_failure_index,elapsed_ms,note\n";
    auto csv_escape = [](std::string s) {
        for (auto &ch : s)
            if (ch == ',')
                ch = ';';
        return s;
    };
    for (const auto &suite : results)
        for (const auto &c : suite.checks) {
            out << suite.name << ',' << c.id << ','
                << csv_escape(c.paper_label) << ',' << status_name(c.status)
                << ',';
            if (c.first_failure)
                out << c.first_failure->index;
            out << ',' << c.elapsed_ms << ',' << csv_escape(c.note) << '\n';
        }
    return out.str();
}

std::string emit_text(const std::vector<SuiteResult> &results) {
    std::ostringstream out;
    int pass = 0, fail = 0, skip = 0;
    for (const auto &suite : results) {
        out << "== suite " << suite.name << " ==\n";
        for (const auto &c : suite.checks) {
            const char *tag = c.status == CheckStatus::Pass  ? "PASS"
                              : c.status == CheckStatus::Fail ? "FAIL"
                                                              : "SKIP";
            out << "  " << tag << "  ";
            std::string id = c.id;
            id.resize(std::max<std::size_t>(id.size(), 28), ' ');
            out << id << " [" << c.paper_label << "]";
            std::string extras;
            for (const auto &[k, v] : c.params)
                extras += " " + k + "=" + v;
            out << extras;
            if (c.first_failure)
                out << "  first failure at index " << c.first_failure->index
                    << ": " << c.first_failure->lhs << " vs "
                    << c.first_failure->rhs;
            if (!c.note.empty())
                out << "  (" << c.note << ")";
            out << "\n";
            pass += c.status == CheckStatus::Pass;
            fail += c.status == CheckStatus::Fail;
            skip += c.status == CheckStatus::Skip;
        }
        out << "  -- " << suite.checks.size() << " checks, "
            << suite.count(CheckStatus::Pass) << " pass, "
            << suite.count(CheckStatus::Fail) << " fail, "
            << suite.count(CheckStatus::Skip) << " skip ("
            << suite.elapsed_ms << " ms)\n";
    }
    out << "total: " << pass << " pass, " << fail << " fail, " << skip
        << " skip\n";
    return out.str();
}

} // namespace

std::string emit_report(const std::vector<SuiteResult> &results,
                        const RunConfig &cfg, const std::string &format) {
    if (format == "json")
        return report_json(results, cfg).dump(2) + "\n";
    if (format == "csv")
        return emit_csv(results);
    if (format == "text")
        return emit_text(results);
    throw std::invalid_argument("unknown format '" + format + "'");
}

int exit_code_for(const std::vector<SuiteResult> &results) {
    for (const auto &suite : results)
        for (const auto &c : suite.checks)
            if (c.status == CheckStatus::Fail)
                return 1;
    return 0;
}

} // namespace qseries
