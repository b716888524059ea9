#pragma once

#include <cstdint>

#include "qseries/series.hpp"

namespace qseries {

constexpr std::int64_t kInfinite = -1;

/* One q-Pochhammer symbol (sign q^a; q^b)_length, i.e. the product of the
 * factors (1 - sign q^{a + k b}) for 0 <= k < length. length = kInfinite
 * means the infinite product. a = 0 is allowed only with sign = -1, the
 * (-1; q^b)_n case, whose leading factor is the constant 2. */
struct PochhammerFactor {
    int sign = 1;
    std::int64_t a = 1;
    std::int64_t b = 1;
    std::int64_t length = kInfinite;

    PochhammerFactor(int sign_, std::int64_t a_, std::int64_t b_,
                     std::int64_t length_ = kInfinite);
};

/* Bilateral theta series f(c, d) = sum_m c^{m(m+1)/2} d^{m(m-1)/2} with
 * monomial arguments c = sign1 q^{e1}, d = sign2 q^{e2}. phi and psi are the
 * specializations f(q^k, q^k) and f(q^k, q^{3k}). */
struct ThetaAtom {
    enum class Kind { GeneralF, Phi, Psi };

    Kind kind = Kind::GeneralF;
    int sign1 = 1, sign2 = 1;
    std::int64_t e1 = 1, e2 = 1;
    std::int64_t scale = 1; /* the k of phi(q^k) / psi(q^k) */

    static ThetaAtom general(int s1, std::int64_t e1, int s2, std::int64_t e2);
    static ThetaAtom phi(std::int64_t k);
    static ThetaAtom psi(std::int64_t k);

    /* All kinds reduced to the (sign1, e1, sign2, e2) form. */
    void general_args(int &s1, std::int64_t &a, int &s2, std::int64_t &b) const;
};

/* Truncated product of the Pochhammer factors up to q^N. Factors whose
 * lowest exponent exceeds N are omitted, which is exact at this order. */
Series pochhammer_series(const PochhammerFactor &f, std::int64_t N,
                         Ring ring = Ring::exact());

/* (q^n; q^n)_infinity via the pentagonal expansion
 * sum_k (-1)^k q^{n k(3k-1)/2}; equals the defining factor product. */
Series eta_series(std::int64_t n, std::int64_t N, Ring ring = Ring::exact());

/* f(c, d) summed bilaterally; summation stops once both triangular-number
 * exponents exceed N. */
Series theta_series(const ThetaAtom &t, std::int64_t N,
                    Ring ring = Ring::exact());

/* The same atom through the triple product
 * f(c, d) = (-c; cd)_inf (-d; cd)_inf (cd; cd)_inf. Requires sign1*sign2 = 1
 * so that cd is a plain monomial. */
Series jacobi_product_series(const ThetaAtom &t, std::int64_t N,
                             Ring ring = Ring::exact());

/* (-q; q)_inf / (q; q)_inf, the overpartition generating function. */
Series overpartition_series(std::int64_t N, Ring ring = Ring::exact());

/* Multiply / divide by the binomial (1 + sign q^e); division requires no
 * unit check beyond e >= 1. Both are O(N). */
Series mul_binomial(const Series &s, int sign, std::int64_t e);
Series div_binomial(const Series &s, int sign, std::int64_t e);

} // namespace qseries
