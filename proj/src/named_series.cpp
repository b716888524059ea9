#include "qseries/named_series.hpp"

#include <map>
#include <stdexcept>

namespace qseries {

namespace {

QExprPtr eta_form_gk(std::int64_t k) {
    return parse_qexpr("l2*l" + std::to_string(2 * k) + "^5/(l1^2*l" +
                       std::to_string(k) + "^2*l" + std::to_string(4 * k) +
                       "^2)");
}

QExprPtr product_form_gk(std::int64_t k) {
    std::string K = std::to_string(k), K2 = std::to_string(2 * k);
    return parse_qexpr("poch(-q^1;q^1)*poch(-q^" + K + ";q^" + K2 +
                       ")^2*poch(q^" + K2 + ";q^" + K2 + ")/poch(q^1;q^1)");
}

std::map<std::string, NamedSeries> build_registry() {
    std::map<std::string, NamedSeries> reg;
    for (std::int64_t k = 2; k <= 4; ++k) {
        NamedSeries ns;
        ns.id = "g" + std::to_string(k);
        ns.phi_scale = k;
        ns.eta_form = eta_form_gk(k);
        ns.product_form = product_form_gk(k);
        reg[ns.id] = ns;
    }
    NamedSeries h;
    h.id = "h";
    h.eta_form = parse_qexpr("l2*l8^2/(l1^2*l4)");
    h.product_form = parse_qexpr(
        "poch(-q^1;q^1)*poch(q^4;q^4)*poch(-q^4;q^4)^2/poch(q^1;q^1)");
    reg["h"] = h;

    NamedSeries t;
    t.id = "t";
    t.eta_form = parse_qexpr("l2*l3*l12/(l1^2*l6)");
    t.product_form =
        parse_qexpr("poch(-q^1;q^1)*poch(q^3;q^12)*poch(q^9;q^12)"
                    "*poch(q^12;q^12)/poch(q^1;q^1)");
    reg["t"] = t;

    NamedSeries m;
    m.id = "m";
    m.eta_form = parse_qexpr("l6^2/(l1*l3)");
    m.product_form = parse_qexpr("poch(-q^1;q^1)*poch(q^1;q^6)*poch(q^5;q^6)"
                                 "*poch(q^6;q^6)/poch(q^1;q^1)");
    reg["m"] = m;

    NamedSeries r;
    r.id = "r";
    r.eta_form = parse_qexpr("l3*l12/(l1*l6)");
    r.product_form = parse_qexpr("poch(-q^2;q^2)*poch(-q^1;q^6)*poch(-q^5;q^6)"
                                 "*poch(q^6;q^6)/poch(q^2;q^2)");
    reg["r"] = r;

    NamedSeries s;
    s.id = "s";
    s.eta_form = parse_qexpr("l4*l6^5/(l2^2*l3^2*l12^2)");
    s.product_form = parse_qexpr(
        "poch(-q^2;q^2)*poch(-q^3;q^6)^2*poch(q^6;q^6)/poch(q^2;q^2)");
    reg["s"] = s;

    return reg;
}

const std::map<std::string, NamedSeries> &registry() {
    static const std::map<std::string, NamedSeries> reg = build_registry();
    return reg;
}

/* Hypergeometric sum sides. Each term T_n is updated from T_{n-1} by O(N)
 * binomial multiplications and divisions; summation stops once the minimal
 * exponent of T_n exceeds N. */

Series sum_h(std::int64_t N, Ring ring) {
    /* sum_n (-q;q)_{2n} q^n / (q;q)_{2n+1} */
    Series term = div_binomial(Series::constant(ring, N, 1), -1, 1);
    Series acc = term;
    for (std::int64_t n = 1; n <= N; ++n) {
        term = term.shifted_up(1);
        term = mul_binomial(term, 1, 2 * n - 1);
        term = mul_binomial(term, 1, 2 * n);
        term = div_binomial(term, -1, 2 * n);
        term = div_binomial(term, -1, 2 * n + 1);
        acc = add(acc, term);
    }
    return acc;
}

Series sum_t(std::int64_t N, Ring ring) {
    /* sum_n (-q;q^2)_n q^n / (q;q)_{2n+1} */
    Series term = div_binomial(Series::constant(ring, N, 1), -1, 1);
    Series acc = term;
    for (std::int64_t n = 1; n <= N; ++n) {
        term = term.shifted_up(1);
        term = mul_binomial(term, 1, 2 * n - 1);
        term = div_binomial(term, -1, 2 * n);
        term = div_binomial(term, -1, 2 * n + 1);
        acc = add(acc, term);
    }
    return acc;
}

Series sum_m(std::int64_t N, Ring ring) {
    /* sum_n (-q;q)_{2n} q^n / (q^2;q^2)_n */
    Series term = Series::constant(ring, N, 1);
    Series acc = term;
    for (std::int64_t n = 1; n <= N; ++n) {
        term = term.shifted_up(1);
        term = mul_binomial(term, 1, 2 * n - 1);
        term = mul_binomial(term, 1, 2 * n);
        term = div_binomial(term, -1, 2 * n);
        acc = add(acc, term);
    }
    return acc;
}

Series sum_r(std::int64_t N, Ring ring) {
    /* sum_n (-q^2;q^2)_n q^{n(n+1)} / (q;q)_{2n+1} */
    Series term = div_binomial(Series::constant(ring, N, 1), -1, 1);
    Series acc = term;
    for (std::int64_t n = 1; n * (n + 1) <= N; ++n) {
        term = term.shifted_up(2 * n);
        term = mul_binomial(term, 1, 2 * n);
        term = div_binomial(term, -1, 2 * n);
        term = div_binomial(term, -1, 2 * n + 1);
        acc = add(acc, term);
    }
    return acc;
}

Series sum_s(std::int64_t N, Ring ring) {
    /* sum_n (-1;q^2)_n q^{n(n+1)} / (q;q)_{2n} with (-1;q^2)_0 = 1 and
     * (-1;q^2)_n = 2 (-q^2;q^2)_{n-1} for n >= 1. */
    Series acc = Series::constant(ring, N, 1);
    if (N < 2)
        return acc;
    Series term = Series::constant(ring, N, 2).shifted_up(2);
    term = div_binomial(term, -1, 1);
    term = div_binomial(term, -1, 2);
    acc = add(acc, term);
    for (std::int64_t n = 2; n * (n + 1) <= N; ++n) {
        term = term.shifted_up(2 * n);
        term = mul_binomial(term, 1, 2 * (n - 1));
        term = div_binomial(term, -1, 2 * n - 1);
        term = div_binomial(term, -1, 2 * n);
        acc = add(acc, term);
    }
    return acc;
}

} // namespace

Series NamedSeries::sum_side(std::int64_t N, Ring ring) const {
    if (phi_scale > 0)
        return mul(overpartition_series(N, ring),
                   theta_series(ThetaAtom::phi(phi_scale), N, ring));
    if (id == "h")
        return sum_h(N, ring);
    if (id == "t")
        return sum_t(N, ring);
    if (id == "m")
        return sum_m(N, ring);
    if (id == "r")
        return sum_r(N, ring);
    if (id == "s")
        return sum_s(N, ring);
    throw std::logic_error("no sum side for series " + id);
}

Series NamedSeries::product_side(std::int64_t N, Ring ring) const {
    return eval_qexpr(product_form, N, ring);
}

Series NamedSeries::eta_side(std::int64_t N, Ring ring) const {
    return eval_qexpr(eta_form, N, ring);
}

const NamedSeries &named_series(const std::string &id) {
    auto it = registry().find(id);
    if (it == registry().end())
        throw std::invalid_argument("unknown series '" + id + "'");
    return it->second;
}

const std::vector<std::string> &named_series_ids() {
    static const std::vector<std::string> ids = {"g2", "g3", "g4", "h",
                                                 "t",  "m",  "r",  "s"};
    return ids;
}

} // namespace qseries
