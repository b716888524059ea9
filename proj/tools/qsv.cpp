#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qseries/qexpr.hpp"
#include "qseries/registry.hpp"
#include "qseries/runner.hpp"

#ifndef QSV_DEFAULT_REGISTRY
#define QSV_DEFAULT_REGISTRY "data/checks.json"
#endif

namespace {

int cmd_expand(const std::string &text, std::int64_t N, unsigned mod) {
    try {
        qseries::QExprPtr e = qseries::parse_qexpr(text);
        qseries::Ring ring = mod == 0
                                 ? qseries::Ring::exact()
                                 : qseries::Ring::mod2k(qseries::mod_bits_for(mod));
        qseries::Series s = qseries::eval_qexpr(e, N, ring);
        for (std::int64_t n = 0; n <= s.order(); ++n)
            std::printf("%lld\t%s\n", static_cast<long long>(n),
                        s.coeff_str(n).c_str());
        return 0;
    } catch (const qseries::ParseError &err) {
        std::fprintf(stderr, "parse error: %s\n", err.what());
        return 2;
    } catch (const std::exception &err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
}

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos)
            next = text.size();
        out.push_back(std::stoi(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact q-series expansion and congruence verification"};
    app.require_subcommand(1);

    /* expand */
    std::string expr_text;
    std::int64_t expand_N = 20;
    unsigned expand_mod = 0;
    auto *expand = app.add_subcommand("expand", "print coefficients of an expression");
    expand->add_option("expr", expr_text, "expression, e.g. l4^5/(l1^2*l2*l8^2)")
        ->required();
    expand->add_option("-N,--order", expand_N, "truncation order (default 20)");
    expand->add_option("--mod", expand_mod, "reduce mod 2, 4, 8 or 16")
        ->check(CLI::IsMember({2u, 4u, 8u, 16u}));

    /* verify */
    qseries::RunConfig cfg;
    std::string alpha_text = "0";
    std::string primes_text = "auto";
    std::string format = "text";
    std::string registry_path = QSV_DEFAULT_REGISTRY;
    auto *verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", cfg.suites,
                       "identities|interpretations|lemmas|intermediates|"
                       "congruences|mutation|all (default all)");
    verify->add_option("-N,--order", cfg.N, "truncation order (default 300)");
    verify->add_option("--terms", cfg.n_terms,
                       "terms per congruence check (default 500)");
    verify->add_option("--family-terms", cfg.family_terms,
                       "terms per j-family check (default 20)");
    verify->add_option("--alpha", alpha_text, "comma list of alphas (default 0)");
    verify->add_option("--primes", primes_text,
                       "auto, or comma list of primes to sample");
    verify->add_option("--prime-bound", cfg.prime_bound,
                       "admissible-prime search bound (default 100)");
    verify->add_option("--format", format, "text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    verify->add_option("--jobs", cfg.jobs, "parallel workers (default 1)");
    verify->add_option("--budget", cfg.coeff_budget,
                       "max coefficients per series before a check is skipped");
    verify->add_option("--registry", registry_path, "check registry file");

    CLI11_PARSE(app, argc, argv);

    if (expand->parsed())
        return cmd_expand(expr_text, expand_N, expand_mod);

    try {
        for (int a : parse_int_list(alpha_text))
            if (a < 0)
                throw std::invalid_argument("alpha must be >= 0");
        cfg.alphas = parse_int_list(alpha_text);
        if (primes_text != "auto") {
            for (int p : parse_int_list(primes_text))
                cfg.primes.push_back(p);
        }
        qseries::Registry reg = qseries::load_registry(registry_path);
        auto results = qseries::run_suites(reg, cfg);
        std::fputs(qseries::emit_report(results, cfg, format).c_str(), stdout);
        return qseries::exit_code_for(results);
    } catch (const std::exception &err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
}
