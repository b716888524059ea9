#include "qseries/partitions.hpp"

#include <stdexcept>

namespace qseries {

namespace {

constexpr std::int64_t kExhaustiveLimit = 30;

struct Kind {
    std::int64_t value;
};

/* Enumerates every multiset of kinds (indices ascending) with one recursive
 * call per multiset. A multiset using k distinct kinds has exactly 2^k
 * overline subsets, accumulated as a weight of 2 per newly used kind. */
struct Enumerator {
    const std::vector<Kind> &kinds;
    bool overlined;
    std::vector<unsigned long long> &counts;
    std::int64_t total;

    void walk(std::size_t i, std::int64_t spent, unsigned long long weight) {
        counts[spent] += weight;
        for (std::size_t j = i; j < kinds.size(); ++j) {
            std::int64_t v = kinds[j].value;
            unsigned long long w = overlined ? 2 * weight : weight;
            for (std::int64_t used = v; spent + used <= total; used += v)
                walk(j + 1, spent + used, w);
        }
    }
};

} // namespace

void PartitionConstraint::validate() const {
    if (modulus < 1)
        throw std::invalid_argument("constraint modulus must be >= 1");
    if (colours.size() != static_cast<std::size_t>(modulus))
        throw std::invalid_argument("colour table size must equal modulus");
    bool any = false;
    for (unsigned c : colours) {
        if (c > 4)
            throw std::invalid_argument("colour counts above 4 not supported");
        any = any || c > 0;
    }
    if (!any)
        throw std::invalid_argument("constraint excludes every residue");
}

CountTable count_dp(const PartitionConstraint &c, std::int64_t N) {
    c.validate();
    if (N < 0)
        throw std::invalid_argument("limit must be >= 0");
    CountTable t;
    t.counts.assign(static_cast<std::size_t>(N) + 1, mpz_class(0));
    t.counts[0] = 1;
    for (std::int64_t v = 1; v <= N; ++v) {
        unsigned copies = c.colour_count(v);
        for (unsigned k = 0; k < copies; ++k) {
            /* 1/(1 - q^v): unbounded use of this kind. */
            for (std::int64_t j = v; j <= N; ++j)
                t.counts[j] += t.counts[j - v];
            /* (1 + q^v): the optional overline on its first occurrence. */
            if (c.overlined)
                for (std::int64_t j = N; j >= v; --j)
                    t.counts[j] += t.counts[j - v];
        }
    }
    return t;
}

std::vector<unsigned long long>
count_exhaustive_table(const PartitionConstraint &c, std::int64_t N) {
    c.validate();
    if (N < 0 || N > kExhaustiveLimit)
        throw std::invalid_argument("exhaustive enumeration limited to n <= 30");
    std::vector<Kind> kinds;
    for (std::int64_t v = 1; v <= N; ++v)
        for (unsigned k = 0; k < c.colour_count(v); ++k)
            kinds.push_back({v});
    std::vector<unsigned long long> counts(static_cast<std::size_t>(N) + 1, 0);
    Enumerator e{kinds, c.overlined, counts, N};
    e.walk(0, 0, 1);
    return counts;
}

unsigned long long count_exhaustive(const PartitionConstraint &c,
                                    std::int64_t n) {
    return count_exhaustive_table(c, n)[n];
}

CountTable general_pt(std::int64_t t, std::int64_t N) {
    if (t < 1)
        throw std::invalid_argument("colour count must be >= 1");
    PartitionConstraint c;
    c.modulus = 1;
    c.colours = {static_cast<unsigned>(t)};
    c.overlined = false;
    if (t > 4) {
        /* The shared DP only handles small colour counts; run the knapsack
         * directly for larger t. */
        CountTable tab;
        tab.counts.assign(static_cast<std::size_t>(N) + 1, mpz_class(0));
        tab.counts[0] = 1;
        for (std::int64_t v = 1; v <= N; ++v)
            for (std::int64_t copy = 0; copy < t; ++copy)
                for (std::int64_t j = v; j <= N; ++j)
                    tab.counts[j] += tab.counts[j - v];
        return tab;
    }
    return count_dp(c, N);
}

} // namespace qseries
