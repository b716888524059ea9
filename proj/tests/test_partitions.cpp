#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qseries/named_series.hpp"
#include "qseries/partitions.hpp"
#include "qseries/qobjects.hpp"

using namespace qseries;

namespace {

PartitionConstraint plain() {
    return PartitionConstraint{1, {1}, false};
}

PartitionConstraint overpartitions() {
    return PartitionConstraint{1, {1}, true};
}

/* Theorem constraint for g_k: parts not divisible by 2k, residue k gets two
 * colours, overlines allowed. */
PartitionConstraint gk_constraint(std::int64_t k) {
    std::vector<unsigned> colours(2 * k, 1);
    colours[0] = 0;
    colours[k] = 2;
    return PartitionConstraint{2 * k, colours, true};
}

/* Theorem constraint for h: no part divisible by 8, residues 2 and 6 have
 * one colour, everything else two. */
PartitionConstraint h_constraint() {
    return PartitionConstraint{8, {0, 2, 1, 2, 2, 2, 1, 2}, false};
}

} // namespace

TEST_CASE("count_dp on classical families") {
    auto p = count_dp(plain(), 5);
    long expect_p[] = {1, 1, 2, 3, 5, 7};
    for (int i = 0; i <= 5; ++i)
        CHECK(p.counts[i] == expect_p[i]);

    auto o = count_dp(overpartitions(), 4);
    long expect_o[] = {1, 2, 4, 8, 14};
    for (int i = 0; i <= 4; ++i)
        CHECK(o.counts[i] == expect_o[i]);

    auto g2 = count_dp(gk_constraint(2), 3);
    long expect_g[] = {1, 2, 6, 12};
    for (int i = 0; i <= 3; ++i)
        CHECK(g2.counts[i] == expect_g[i]);
}

TEST_CASE("count_exhaustive basics") {
    CHECK(count_exhaustive(h_constraint(), 0) == 1);
    CHECK(count_exhaustive(h_constraint(), 1) == 2);
    CHECK(count_exhaustive(h_constraint(), 2) == 4);
    CHECK(count_exhaustive(gk_constraint(2), 0) == 1);
    CHECK_THROWS_AS(count_exhaustive(plain(), 31), std::invalid_argument);
}

TEST_CASE("count_dp agrees with count_exhaustive on the theorem constraints") {
    for (auto c : {gk_constraint(2), gk_constraint(3), gk_constraint(4),
                   h_constraint()}) {
        auto brute = count_exhaustive_table(c, 22);
        auto dp = count_dp(c, 22);
        for (int n = 0; n <= 22; ++n)
            CHECK(dp.counts[n] == mpz_class(static_cast<unsigned long>(brute[n])));
    }
}

TEST_CASE("count_dp vs count_exhaustive on random constraints") {
    std::mt19937 rng(20240817);
    for (int iter = 0; iter < 25; ++iter) {
        PartitionConstraint c;
        c.modulus = 1 + (rng() % 10);
        c.colours.resize(c.modulus);
        bool any = false;
        for (auto &col : c.colours) {
            col = rng() % 4 == 0 ? 0 : (rng() % 3) + 1;
            any = any || col > 0;
        }
        if (!any)
            c.colours[0] = 1;
        c.overlined = rng() % 2 == 0;
        auto brute = count_exhaustive_table(c, 18);
        auto dp = count_dp(c, 18);
        for (int n = 0; n <= 18; ++n)
            CHECK(dp.counts[n] ==
                  mpz_class(static_cast<unsigned long>(brute[n])));
    }
}

TEST_CASE("counts match series coefficients") {
    /* g2 counts = coefficients of l4^5/(l1^2 l2 l8^2) */
    auto g2 = count_dp(gk_constraint(2), 120);
    Series eta = named_series("g2").eta_side(120);
    for (int n = 0; n <= 120; ++n)
        CHECK(g2.counts[n] == eta.zcoeff(n));

    /* h counts = coefficients of l2 l8^2/(l1^2 l4) */
    auto h = count_dp(h_constraint(), 120);
    Series heta = named_series("h").eta_side(120);
    for (int n = 0; n <= 120; ++n)
        CHECK(h.counts[n] == heta.zcoeff(n));

    /* overpartition counts = (-q;q)inf/(q;q)inf */
    auto o = count_dp(overpartitions(), 100);
    Series os = overpartition_series(100);
    for (int n = 0; n <= 100; ++n)
        CHECK(o.counts[n] == os.zcoeff(n));
}

TEST_CASE("general_pt") {
    auto p1 = general_pt(1, 4);
    long expect[] = {1, 1, 2, 3, 5};
    for (int i = 0; i <= 4; ++i)
        CHECK(p1.counts[i] == expect[i]);

    auto p2 = general_pt(2, 2);
    CHECK(p2.counts[2] == 5);
    CHECK(general_pt(7, 0).counts[0] == 1);

    /* against the series 1/l1^t */
    for (std::int64_t t : {1, 2, 3, 5}) {
        auto tab = general_pt(t, 60);
        Series inv = Series::constant(Ring::exact(), 60, 1);
        for (std::int64_t i = 0; i < t; ++i)
            inv = div_unit(inv, eta_series(1, 60));
        for (int n = 0; n <= 60; ++n)
            CHECK(tab.counts[n] == inv.zcoeff(n));
    }
}

TEST_CASE("constraint validation") {
    PartitionConstraint bad;
    bad.modulus = 2;
    bad.colours = {0, 0};
    CHECK_THROWS_AS(count_dp(bad, 5), std::invalid_argument);
    PartitionConstraint wrong_size;
    wrong_size.modulus = 3;
    wrong_size.colours = {1};
    CHECK_THROWS_AS(count_dp(wrong_size, 5), std::invalid_argument);
}
