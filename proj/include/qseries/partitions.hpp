#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace qseries {

/* Residue-class rules for a restricted colour (over)partition counting
 * function: parts congruent to r (mod `modulus`) come in colours[r]
 * distinguishable colours (0 = excluded), and if `overlined` is set the
 * first occurrence of every (value, colour) kind may be overlined. */
struct PartitionConstraint {
    std::int64_t modulus = 1;
    std::vector<unsigned> colours; /* size = modulus, indexed by residue */
    bool overlined = false;

    void validate() const;
    unsigned colour_count(std::int64_t value) const {
        return colours[value % modulus];
    }
};

struct CountTable {
    std::vector<mpz_class> counts; /* counts[n] for 0 <= n <= N */
};

/* Coefficient table of prod over kinds (value v, colour) of
 * (1 + q^v)^[overlined] / (1 - q^v): an unbounded knapsack per kind plus a
 * 0/1 overline item per kind. */
CountTable count_dp(const PartitionConstraint &c, std::int64_t N);

/* Brute-force enumeration of every (multiset of kinds, overline subset)
 * pair with total n; the independent oracle for count_dp. n <= 30. */
unsigned long long count_exhaustive(const PartitionConstraint &c,
                                    std::int64_t n);

/* Same enumeration walked once, filling all totals 0..N. */
std::vector<unsigned long long>
count_exhaustive_table(const PartitionConstraint &c, std::int64_t N);

/* p_t(n): partitions of n with t colours for every part, the coefficients
 * of 1/(q;q)_inf^t. */
CountTable general_pt(std::int64_t t, std::int64_t N);

} // namespace qseries
