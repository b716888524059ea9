#include "qseries/qobjects.hpp"

#include <stdexcept>

namespace qseries {

namespace {

void require(bool ok, const char *msg) {
    if (!ok)
        throw std::invalid_argument(msg);
}

/* In-place multiply of a coefficient vector by (1 - sign q^e). */
template <typename Vec>
void mul_factor_inplace(Vec &c, int sign, std::int64_t e, unsigned mask) {
    const std::int64_t n = static_cast<std::int64_t>(c.size()) - 1;
    if (e == 0) {
        /* (1 - sign): zero for sign = +1, the constant 2 for sign = -1. */
        for (std::int64_t i = 0; i <= n; ++i) {
            if constexpr (std::is_same_v<typename Vec::value_type, mpz_class>) {
                if (sign > 0)
                    c[i] = 0;
                else
                    c[i] *= 2;
            } else {
                int v = sign > 0 ? 0 : 2 * int(c[i]);
                c[i] = static_cast<std::uint8_t>(v & mask);
            }
        }
        return;
    }
    for (std::int64_t i = n; i >= e; --i) {
        if constexpr (std::is_same_v<typename Vec::value_type, mpz_class>) {
            if (sign > 0)
                c[i] -= c[i - e];
            else
                c[i] += c[i - e];
        } else {
            int v = int(c[i]) - sign * int(c[i - e]);
            c[i] = static_cast<std::uint8_t>(v & mask);
        }
    }
}

template <typename Vec>
void add_term(Vec &c, std::int64_t e, int sign, unsigned mask) {
    if constexpr (std::is_same_v<typename Vec::value_type, mpz_class>) {
        c[e] += sign;
    } else {
        int v = int(c[e]) + sign;
        c[e] = static_cast<std::uint8_t>(v & mask);
    }
}

template <typename Vec>
Vec unit_vector(std::int64_t N) {
    Vec c(static_cast<std::size_t>(N) + 1);
    c[0] = 1;
    return c;
}

std::int64_t triangular(std::int64_t m) { return m * (m + 1) / 2; }

} // namespace

PochhammerFactor::PochhammerFactor(int sign_, std::int64_t a_, std::int64_t b_,
                                   std::int64_t length_)
    : sign(sign_), a(a_), b(b_), length(length_) {
    require(sign == 1 || sign == -1, "pochhammer sign must be +-1");
    require(b >= 1, "pochhammer step must be >= 1");
    require(a >= 1 || (a == 0 && sign == -1),
            "pochhammer offset must be >= 1 (or 0 with sign -1)");
    require(length == kInfinite || length >= 0, "bad pochhammer length");
}

ThetaAtom ThetaAtom::general(int s1, std::int64_t e1, int s2, std::int64_t e2) {
    require((s1 == 1 || s1 == -1) && (s2 == 1 || s2 == -1),
            "theta signs must be +-1");
    require(e1 >= 0 && e2 >= 0 && e1 + e2 >= 1,
            "theta exponents must be >= 0 with sum >= 1");
    ThetaAtom t;
    t.kind = Kind::GeneralF;
    t.sign1 = s1;
    t.sign2 = s2;
    t.e1 = e1;
    t.e2 = e2;
    return t;
}

ThetaAtom ThetaAtom::phi(std::int64_t k) {
    require(k >= 1, "phi scale must be >= 1");
    ThetaAtom t;
    t.kind = Kind::Phi;
    t.scale = k;
    return t;
}

ThetaAtom ThetaAtom::psi(std::int64_t k) {
    require(k >= 1, "psi scale must be >= 1");
    ThetaAtom t;
    t.kind = Kind::Psi;
    t.scale = k;
    return t;
}

void ThetaAtom::general_args(int &s1, std::int64_t &a, int &s2,
                             std::int64_t &b) const {
    switch (kind) {
    case Kind::GeneralF:
        s1 = sign1;
        s2 = sign2;
        a = e1;
        b = e2;
        break;
    case Kind::Phi:
        s1 = s2 = 1;
        a = b = scale;
        break;
    case Kind::Psi:
        s1 = s2 = 1;
        a = scale;
        b = 3 * scale;
        break;
    }
}

Series pochhammer_series(const PochhammerFactor &f, std::int64_t N, Ring ring) {
    require(N >= 0, "order must be >= 0");
    unsigned mask = ring.is_exact() ? 0 : ring.modulus() - 1;
    if (ring.is_exact()) {
        auto c = unit_vector<std::vector<mpz_class>>(N);
        for (std::int64_t k = 0; f.length == kInfinite || k < f.length; ++k) {
            std::int64_t e = f.a + k * f.b;
            if (e > N)
                break;
            mul_factor_inplace(c, f.sign, e, mask);
        }
        return Series::from_coeffs(std::move(c));
    }
    auto c = unit_vector<std::vector<std::uint8_t>>(N);
    for (std::int64_t k = 0; f.length == kInfinite || k < f.length; ++k) {
        std::int64_t e = f.a + k * f.b;
        if (e > N)
            break;
        mul_factor_inplace(c, f.sign, e, mask);
    }
    return Series::from_residues(ring.mod_bits, std::move(c));
}

Series eta_series(std::int64_t n, std::int64_t N, Ring ring) {
    require(n >= 1, "eta index must be >= 1");
    require(N >= 0, "order must be >= 0");
    Series s = Series::zeros(ring, N);
    std::vector<std::pair<std::int64_t, int>> terms;
    for (std::int64_t k = 0;; ++k) {
        std::int64_t g1 = n * (k * (3 * k - 1) / 2);
        std::int64_t g2 = n * (k * (3 * k + 1) / 2);
        if (g1 > N && g2 > N)
            break;
        int sign = (k % 2 == 0) ? 1 : -1;
        if (g1 <= N)
            terms.emplace_back(g1, sign);
        if (k > 0 && g2 <= N)
            terms.emplace_back(g2, sign);
    }
    if (ring.is_exact()) {
        std::vector<mpz_class> c(static_cast<std::size_t>(N) + 1);
        for (auto [e, sg] : terms)
            c[e] += sg;
        return Series::from_coeffs(std::move(c));
    }
    std::vector<std::uint8_t> c(static_cast<std::size_t>(N) + 1, 0);
    unsigned mask = ring.modulus() - 1;
    for (auto [e, sg] : terms)
        add_term(c, e, sg, mask);
    return Series::from_residues(ring.mod_bits, std::move(c));
}

Series theta_series(const ThetaAtom &t, std::int64_t N, Ring ring) {
    require(N >= 0, "order must be >= 0");
    int s1 = 1, s2 = 1;
    std::int64_t a = 1, b = 1;
    t.general_args(s1, a, s2, b);

    /* Exponent of the m-th term: a m(m+1)/2 + b m(m-1)/2, strictly
     * increasing in |m| past the first step in either direction. */
    std::vector<std::pair<std::int64_t, int>> terms;
    auto term = [&](std::int64_t m) {
        std::int64_t ta = triangular(m);       /* m(m+1)/2 */
        std::int64_t tb = triangular(m - 1);   /* m(m-1)/2 */
        std::int64_t e = a * ta + b * tb;
        int sign = 1;
        if (s1 < 0 && (ta & 1))
            sign = -sign;
        if (s2 < 0 && (tb & 1))
            sign = -sign;
        return std::make_pair(e, sign);
    };
    for (std::int64_t m = 0;; ++m) {
        auto [e, sg] = term(m);
        if (e > N) {
            if (m >= 1)
                break;
        } else
            terms.emplace_back(e, sg);
    }
    for (std::int64_t m = -1;; --m) {
        auto [e, sg] = term(m);
        if (e > N)
            break;
        terms.emplace_back(e, sg);
    }

    if (ring.is_exact()) {
        std::vector<mpz_class> c(static_cast<std::size_t>(N) + 1);
        for (auto [e, sg] : terms)
            c[e] += sg;
        return Series::from_coeffs(std::move(c));
    }
    std::vector<std::uint8_t> c(static_cast<std::size_t>(N) + 1, 0);
    unsigned mask = ring.modulus() - 1;
    for (auto [e, sg] : terms)
        add_term(c, e, sg, mask);
    return Series::from_residues(ring.mod_bits, std::move(c));
}

Series jacobi_product_series(const ThetaAtom &t, std::int64_t N, Ring ring) {
    int s1 = 1, s2 = 1;
    std::int64_t a = 1, b = 1;
    t.general_args(s1, a, s2, b);
    require(s1 * s2 == 1, "triple product needs sign1*sign2 = +1");
    require(a >= 1 && b >= 1, "triple product needs both exponents >= 1");
    Series p1 = pochhammer_series({-s1, a, a + b}, N, ring);
    Series p2 = pochhammer_series({-s2, b, a + b}, N, ring);
    Series p3 = pochhammer_series({1, a + b, a + b}, N, ring);
    return mul(mul(p1, p2), p3);
}

Series overpartition_series(std::int64_t N, Ring ring) {
    Series num = pochhammer_series({-1, 1, 1}, N, ring);
    Series den = pochhammer_series({1, 1, 1}, N, ring);
    return div_unit(num, den);
}

Series mul_binomial(const Series &s, int sign, std::int64_t e) {
    require(sign == 1 || sign == -1, "binomial sign must be +-1");
    require(e >= 1, "binomial exponent must be >= 1");
    /* (1 + sign q^e) = (1 - (-sign) q^e), reuse the factor update. */
    const std::int64_t n = s.order();
    if (s.ring().is_exact()) {
        std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1);
        for (std::int64_t i = 0; i <= n; ++i)
            c[i] = s.zcoeff(i);
        mul_factor_inplace(c, -sign, e, 0);
        return Series::from_coeffs(std::move(c));
    }
    std::vector<std::uint8_t> c(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 0; i <= n; ++i)
        c[i] = static_cast<std::uint8_t>(s.mcoeff(i));
    mul_factor_inplace(c, -sign, e, s.ring().modulus() - 1);
    return Series::from_residues(s.ring().mod_bits, std::move(c));
}

Series div_binomial(const Series &s, int sign, std::int64_t e) {
    require(sign == 1 || sign == -1, "binomial sign must be +-1");
    require(e >= 1, "binomial exponent must be >= 1");
    const std::int64_t n = s.order();
    if (s.ring().is_exact()) {
        std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1);
        for (std::int64_t i = 0; i <= n; ++i) {
            c[i] = s.zcoeff(i);
            if (i >= e) {
                if (sign > 0)
                    c[i] -= c[i - e];
                else
                    c[i] += c[i - e];
            }
        }
        return Series::from_coeffs(std::move(c));
    }
    unsigned mask = s.ring().modulus() - 1;
    std::vector<std::uint8_t> c(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 0; i <= n; ++i) {
        int v = int(s.mcoeff(i));
        if (i >= e)
            v -= sign * int(c[i - e]);
        c[i] = static_cast<std::uint8_t>(v & mask);
    }
    return Series::from_residues(s.ring().mod_bits, std::move(c));
}

} // namespace qseries
