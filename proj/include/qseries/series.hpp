#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qseries {

/* Coefficient ring of a truncated series: either the exact integers or the
 * residue ring Z/2^k with k in 1..4. Residue representatives are kept
 * normalized to 0..2^k-1. */
struct Ring {
    unsigned mod_bits = 0; /* 0 = exact integers, k = integers mod 2^k */

    static Ring exact() { return Ring{0}; }
    static Ring mod2k(unsigned k);

    bool is_exact() const { return mod_bits == 0; }
    unsigned modulus() const { return 1u << mod_bits; }
    bool operator==(const Ring &) const = default;
    std::string name() const;
};

/* Dense truncated power series in q. coefficient(i) is the coefficient of
 * q^i for 0 <= i <= order(); everything above order() is unknown, not zero.
 * Values are immutable once built: every operation returns a new series, so
 * sharing across threads is safe. */
class Series {
  public:
    Series() = default;

    static Series zeros(Ring ring, std::int64_t order);
    static Series constant(Ring ring, std::int64_t order, long value);
    /* c * q^e, truncated at `order` (which may be smaller than e). */
    static Series monomial(Ring ring, std::int64_t order, std::int64_t e,
                           long c = 1);
    static Series from_coeffs(std::vector<mpz_class> coeffs);
    static Series from_residues(unsigned k, std::vector<std::uint8_t> residues);

    Ring ring() const { return ring_; }
    std::int64_t order() const { return order_; }
    bool valid() const { return order_ >= 0; }

    const mpz_class &zcoeff(std::int64_t i) const;
    unsigned mcoeff(std::int64_t i) const;
    bool coeff_is_zero(std::int64_t i) const;
    std::string coeff_str(std::int64_t i) const;

    /* Number of nonzero coefficients at indices 0..upto (upto < 0: all). */
    std::int64_t nonzero_count(std::int64_t upto = -1) const;
    std::vector<std::int64_t> nonzero_indices(std::int64_t upto = -1) const;

    Series truncated(std::int64_t new_order) const;
    /* Multiply by q^e within the same truncation order. */
    Series shifted_up(std::int64_t e) const;

    bool operator==(const Series &other) const;

    friend Series add(const Series &a, const Series &b);
    friend Series sub(const Series &a, const Series &b);
    friend Series negate(const Series &a);
    friend Series mul(const Series &a, const Series &b);
    friend Series scalar_mul(const Series &a, const mpz_class &c);
    /* Quotient a/b where b has a unit constant term (+-1 exactly, odd mod
     * 2^k); computed by the coefficient recurrence
     *   c_0 = a_0 b_0^{-1},   c_n = b_0^{-1} (a_n - sum_{i>=1} b_i c_{n-i}). */
    friend Series div_unit(const Series &a, const Series &b);
    /* Sub-series on the arithmetic progression m*n + r: returns
     * sum_n a(m n + r) q^n with order floor((order - r) / m). */
    friend Series ap_extract(const Series &a, std::int64_t m, std::int64_t r);
    /* a(q^k); order k*order(a), or `cap` when 0 <= cap < k*order(a). */
    friend Series substitute_power(const Series &a, std::int64_t k,
                                   std::int64_t cap);
    /* Coefficientwise reduction of an exact series into Z/2^k. */
    friend Series reduce_mod(const Series &a, unsigned k);

    /* Smallest index <= upto (or the common order) where a and b differ;
     * ring tags must match. */
    friend std::optional<std::int64_t>
    first_mismatch(const Series &a, const Series &b, std::int64_t upto);

    Series operator+(const Series &o) const { return add(*this, o); }
    Series operator-(const Series &o) const { return sub(*this, o); }
    Series operator*(const Series &o) const { return mul(*this, o); }

  private:
    Ring ring_;
    std::int64_t order_ = -1;
    std::vector<mpz_class> zc_; /* exact ring storage */
    std::vector<std::uint8_t> mc_; /* mod-2^k storage */

    void check_index(std::int64_t i) const;
};

Series add(const Series &a, const Series &b);
Series sub(const Series &a, const Series &b);
Series negate(const Series &a);
Series mul(const Series &a, const Series &b);
Series scalar_mul(const Series &a, const mpz_class &c);
Series div_unit(const Series &a, const Series &b);
Series ap_extract(const Series &a, std::int64_t m, std::int64_t r);
Series substitute_power(const Series &a, std::int64_t k, std::int64_t cap = -1);
Series reduce_mod(const Series &a, unsigned k);
std::optional<std::int64_t> first_mismatch(const Series &a, const Series &b,
                                           std::int64_t upto = -1);

} // namespace qseries
