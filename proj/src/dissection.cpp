#include "qseries/dissection.hpp"

#include <map>
#include <stdexcept>

#include "qseries/qexpr.hpp"
#include "qseries/qobjects.hpp"

namespace qseries {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/* (+-p-1)/6 resolved by p mod 6. */
std::int64_t pm_index(std::int64_t p) {
    if (p % 6 == 1)
        return (p - 1) / 6;
    return (-p - 1) / 6;
}

/* Spread a class extraction back onto its progression: the series whose
 * coefficient at p*i + r is extract(i) and zero elsewhere. */
Series reexpand(const Series &extract, std::int64_t p, std::int64_t r,
                std::int64_t N) {
    std::vector<mpz_class> c(static_cast<std::size_t>(N) + 1);
    for (std::int64_t i = 0; i <= extract.order() && p * i + r <= N; ++i)
        c[p * i + r] = extract.zcoeff(i);
    return Series::from_coeffs(std::move(c));
}

void require_integral(std::int64_t numerator, std::int64_t denominator,
                      const char *what) {
    if (numerator % denominator != 0)
        throw std::logic_error(std::string("non-integral exponent in ") + what);
}

VerificationReport compare_series(VerificationReport r, const Series &lhs,
                                  const Series &rhs, std::int64_t upto) {
    auto bad = first_mismatch(lhs, rhs, upto);
    if (bad) {
        r.status = CheckStatus::Fail;
        r.first_failure =
            FirstFailure{*bad, lhs.coeff_str(*bad), rhs.coeff_str(*bad)};
    }
    return r;
}

} // namespace

bool is_prime(std::int64_t n) {
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

VerificationReport verify_psi_dissection(std::int64_t p, std::int64_t N) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("p must be an odd prime");
    VerificationReport rep = VerificationReport::pass(
        "lemma21.p" + std::to_string(p), "eq7");
    rep.add_param("p", p);
    rep.add_param("N", N);
    if (N <= p * p) {
        rep.status = CheckStatus::Skip;
        rep.note = "order must exceed p^2 so the tail contributes";
        return rep;
    }

    const std::int64_t tail_exp = (p * p - 1) / 8;
    require_integral(p * p - 1, 8, "psi dissection tail");
    const std::int64_t tail_class = floor_mod(tail_exp, p);

    std::map<std::int64_t, Series> class_component;
    Series rhs = Series::zeros(Ring::exact(), N);
    for (std::int64_t t = 0; t <= (p - 3) / 2; ++t) {
        require_integral(p * p + (2 * t + 1) * p, 2, "psi dissection head");
        std::int64_t a = (p * p + (2 * t + 1) * p) / 2;
        std::int64_t b = (p * p - (2 * t + 1) * p) / 2;
        std::int64_t pre = t * (t + 1) / 2;
        Series comp =
            theta_series(ThetaAtom::general(1, a, 1, b), N).shifted_up(pre);
        rhs = add(rhs, comp);

        std::int64_t cls = floor_mod(pre, p);
        if (cls == tail_class)
            return VerificationReport::fail(
                rep.id, rep.paper_label, FirstFailure{t, "head class", "tail class"},
                "head residue collides with tail residue");
        auto [it, fresh] = class_component.emplace(cls, comp);
        if (!fresh)
            return VerificationReport::fail(
                rep.id, rep.paper_label, FirstFailure{t, "class", "duplicate"},
                "head residue classes not pairwise distinct");
    }
    Series tail = substitute_power(theta_series(ThetaAtom::psi(1), N),
                                   p * p, N)
                      .shifted_up(tail_exp);
    rhs = add(rhs, tail);
    class_component.emplace(tail_class, tail);

    Series lhs = theta_series(ThetaAtom::psi(1), N);
    rep = compare_series(std::move(rep), lhs, rhs, N);
    if (rep.status != CheckStatus::Pass)
        return rep;

    /* Every residue class of the full series must coincide with the
     * component attributed to it (the zero series when unclaimed). */
    for (std::int64_t r = 0; r < p; ++r) {
        Series cls_series = reexpand(ap_extract(lhs, p, r), p, r, N);
        auto it = class_component.find(r);
        Series comp = it == class_component.end()
                          ? Series::zeros(Ring::exact(), N)
                          : it->second;
        auto bad = first_mismatch(cls_series, comp, N);
        if (bad) {
            rep.status = CheckStatus::Fail;
            rep.first_failure = FirstFailure{*bad, cls_series.coeff_str(*bad),
                                             comp.coeff_str(*bad)};
            rep.note = "class support mismatch at residue " + std::to_string(r);
            return rep;
        }
    }
    return rep;
}

VerificationReport verify_l1_dissection(std::int64_t p, std::int64_t N) {
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("p must be a prime >= 5");
    VerificationReport rep = VerificationReport::pass(
        "lemma22.p" + std::to_string(p), "eq8");
    rep.add_param("p", p);
    rep.add_param("N", N);
    if (N <= p * p) {
        rep.status = CheckStatus::Skip;
        rep.note = "order must exceed p^2 so the tail contributes";
        return rep;
    }

    require_integral(p * p - 1, 24, "l1 dissection tail");
    const std::int64_t tail_exp = (p * p - 1) / 24;
    const std::int64_t tail_class = floor_mod(tail_exp, p);
    const std::int64_t skip_t = pm_index(p);

    std::map<std::int64_t, Series> class_component;
    Series rhs = Series::zeros(Ring::exact(), N);
    for (std::int64_t t = -(p - 1) / 2; t <= (p - 1) / 2; ++t) {
        if (t == skip_t)
            continue;
        require_integral(3 * p * p + (6 * t + 1) * p, 2, "l1 dissection head");
        std::int64_t a = (3 * p * p + (6 * t + 1) * p) / 2;
        std::int64_t b = (3 * p * p - (6 * t + 1) * p) / 2;
        require_integral(3 * t * t + t, 2, "l1 dissection prefactor");
        std::int64_t pre = (3 * t * t + t) / 2;
        int sign = floor_mod(t, 2) == 0 ? 1 : -1;
        Series comp =
            theta_series(ThetaAtom::general(-1, a, -1, b), N).shifted_up(pre);
        if (sign < 0)
            comp = negate(comp);
        rhs = add(rhs, comp);

        std::int64_t cls = floor_mod(pre, p);
        if (cls == tail_class)
            return VerificationReport::fail(
                rep.id, rep.paper_label, FirstFailure{t, "head class", "tail class"},
                "head residue collides with tail residue");
        auto it = class_component.find(cls);
        if (it == class_component.end())
            class_component.emplace(cls, comp);
        else
            it->second = add(it->second, comp);
    }
    Series tail =
        substitute_power(eta_series(1, N / (p * p) + 1), p * p, N)
            .shifted_up(tail_exp);
    if (floor_mod(skip_t, 2) == 1)
        tail = negate(tail);
    rhs = add(rhs, tail);
    class_component.emplace(tail_class, tail);

    Series lhs = eta_series(1, N);
    rep = compare_series(std::move(rep), lhs, rhs, N);
    if (rep.status != CheckStatus::Pass)
        return rep;

    for (std::int64_t r = 0; r < p; ++r) {
        Series cls_series = reexpand(ap_extract(lhs, p, r), p, r, N);
        auto it = class_component.find(r);
        Series comp = it == class_component.end()
                          ? Series::zeros(Ring::exact(), N)
                          : it->second;
        auto bad = first_mismatch(cls_series, comp, N);
        if (bad) {
            rep.status = CheckStatus::Fail;
            rep.first_failure = FirstFailure{*bad, cls_series.coeff_str(*bad),
                                             comp.coeff_str(*bad)};
            rep.note = "class support mismatch at residue " + std::to_string(r);
            return rep;
        }
    }
    return rep;
}

std::vector<VerificationReport> verify_2_3_dissections(std::int64_t N) {
    struct Identity {
        const char *id;
        const char *label;
        const char *lhs;
        const char *rhs;
    };
    static const Identity identities[] = {
        {"lemma23.eq12", "eq12", "l3^3/l1",
         "l4^3*l6^2/(l2^2*l12) + q^1*l12^3/l4"},
        {"lemma23.eq14", "eq14", "l2^2/l1",
         "l6*l9^2/(l3*l18) + q^1*l18^2/l9"},
        {"lemma23.c18", "c18", "l2/l1^2",
         "l6^4*l9^6/(l3^8*l18^3) + 2*q^1*l6^3*l9^3/l3^7 + "
         "4*q^2*l6^2*l18^3/l3^6"},
    };
    std::vector<VerificationReport> out;
    for (const auto &ident : identities) {
        VerificationReport rep = VerificationReport::pass(ident.id, ident.label);
        rep.add_param("N", N);
        Series lhs = eval_qexpr(parse_qexpr(ident.lhs), N);
        Series rhs = eval_qexpr(parse_qexpr(ident.rhs), N);
        out.push_back(compare_series(std::move(rep), lhs, rhs, N));
    }
    return out;
}

VerificationReport verify_binomial_congruence(std::int64_t k, std::int64_t m,
                                              std::int64_t N) {
    VerificationReport rep = VerificationReport::pass(
        "binom.k" + std::to_string(k) + ".m" + std::to_string(m), "lm1,lm2");
    rep.add_param("k", k);
    rep.add_param("m", m);
    rep.add_param("N", N);

    /* l_{2k}^m = l_k^{2m} (mod 2) */
    {
        Ring ring = Ring::mod2k(1);
        Series lhs = Series::constant(ring, N, 1);
        Series e2k = eta_series(2 * k, N, ring);
        for (std::int64_t i = 0; i < m; ++i)
            lhs = mul(lhs, e2k);
        Series rhs = Series::constant(ring, N, 1);
        Series ek = eta_series(k, N, ring);
        for (std::int64_t i = 0; i < 2 * m; ++i)
            rhs = mul(rhs, ek);
        rep = compare_series(std::move(rep), lhs, rhs, N);
        if (rep.status != CheckStatus::Pass) {
            rep.note = "mod 2 case";
            return rep;
        }
    }
    /* l_{2k}^{2m} = l_k^{4m} (mod 4) */
    {
        Ring ring = Ring::mod2k(2);
        Series lhs = Series::constant(ring, N, 1);
        Series e2k = eta_series(2 * k, N, ring);
        for (std::int64_t i = 0; i < 2 * m; ++i)
            lhs = mul(lhs, e2k);
        Series rhs = Series::constant(ring, N, 1);
        Series ek = eta_series(k, N, ring);
        for (std::int64_t i = 0; i < 4 * m; ++i)
            rhs = mul(rhs, ek);
        rep = compare_series(std::move(rep), lhs, rhs, N);
        if (rep.status != CheckStatus::Pass)
            rep.note = "mod 4 case";
    }
    return rep;
}

VerificationReport verify_residue_avoidance(std::int64_t p_max) {
    VerificationReport rep =
        VerificationReport::pass("lemma.avoidance", "eq7,eq8");
    rep.add_param("p_max", p_max);
    for (std::int64_t p = 3; p <= p_max; ++p) {
        if (!is_prime(p))
            continue;
        /* Lemma on psi: (t^2+t)/2 != (p^2-1)/8 (mod p), 0 <= t <= (p-3)/2 */
        std::int64_t tail8 = floor_mod((p * p - 1) / 8, p);
        for (std::int64_t t = 0; t <= (p - 3) / 2; ++t) {
            if (floor_mod(t * (t + 1) / 2, p) == tail8)
                return VerificationReport::fail(
                    rep.id, rep.paper_label,
                    FirstFailure{t, std::to_string(floor_mod(t * (t + 1) / 2, p)),
                                 std::to_string(tail8)},
                    "psi avoidance fails at p=" + std::to_string(p));
        }
        /* Lemma on l1: (3t^2+t)/2 != (p^2-1)/24 (mod p) for admissible t */
        if (p < 5)
            continue;
        std::int64_t tail24 = floor_mod((p * p - 1) / 24, p);
        std::int64_t skip_t = pm_index(p);
        for (std::int64_t t = -(p - 1) / 2; t <= (p - 1) / 2; ++t) {
            if (t == skip_t)
                continue;
            if (floor_mod((3 * t * t + t) / 2, p) == tail24)
                return VerificationReport::fail(
                    rep.id, rep.paper_label,
                    FirstFailure{t,
                                 std::to_string(floor_mod((3 * t * t + t) / 2, p)),
                                 std::to_string(tail24)},
                    "l1 avoidance fails at p=" + std::to_string(p));
        }
    }
    return rep;
}

VerificationReport verify_g3_unique_solution(std::int64_t p_max) {
    VerificationReport rep = VerificationReport::pass("g3.unique", "g3");
    rep.add_param("p_max", p_max);
    for (std::int64_t p = 5; p <= p_max; ++p) {
        if (!is_prime(p))
            continue;
        /* Only primes with (-8/p) = -1; Euler's criterion inline. */
        std::int64_t xi = floor_mod(-8, p), acc = 1;
        for (std::int64_t e = 0; e < (p - 1) / 2; ++e)
            acc = acc * xi % p;
        if (acc != p - 1)
            continue;
        std::int64_t star = pm_index(p);
        for (std::int64_t t = -(p - 1) / 2; t <= (p - 1) / 2; ++t) {
            for (std::int64_t m = -(p - 1) / 2; m <= (p - 1) / 2; ++m) {
                std::int64_t v =
                    floor_mod((6 * t + 1) * (6 * t + 1) + 8 * (6 * m + 1) * (6 * m + 1), p);
                bool is_solution = v == 0;
                bool is_star = (t == star && m == star);
                if (is_solution != is_star) {
                    rep.status = CheckStatus::Fail;
                    rep.first_failure = FirstFailure{
                        t, "t=" + std::to_string(t) + ",m=" + std::to_string(m),
                        is_solution ? "unexpected solution" : "missing solution"};
                    rep.note = "p=" + std::to_string(p);
                    return rep;
                }
            }
        }
    }
    return rep;
}

} // namespace qseries
