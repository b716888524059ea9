#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qseries/named_series.hpp"
#include "qseries/qobjects.hpp"

using namespace qseries;

namespace {
long zc(const Series &s, std::int64_t i) { return s.zcoeff(i).get_si(); }
} // namespace

TEST_CASE("sum side seeds") {
    /* h: 1 + 2q + 4q^2 + ... */
    Series h = named_series("h").sum_side(2);
    CHECK(zc(h, 0) == 1);
    CHECK(zc(h, 1) == 2);
    CHECK(zc(h, 2) == 4);

    /* s: constant term 1 from the n=0 summand (-1;q^2)_0 = 1 */
    Series s = named_series("s").sum_side(4);
    CHECK(zc(s, 0) == 1);
    CHECK(zc(s, 1) == 0);
    CHECK(zc(s, 2) == 2);

    /* r: the n=0 summand is 1/(1-q) and the n=1 summand starts at q^2 */
    Series r = named_series("r").sum_side(1);
    CHECK(zc(r, 0) == 1);
    CHECK(zc(r, 1) == 1);

    /* g2: overpartition counts convolved with phi(q^2) */
    Series g2 = named_series("g2").sum_side(3);
    CHECK(zc(g2, 0) == 1);
    CHECK(zc(g2, 1) == 2);
    CHECK(zc(g2, 2) == 6);
    CHECK(zc(g2, 3) == 12);
}

TEST_CASE("sum side = product side = eta form at order 120") {
    for (const auto &id : named_series_ids()) {
        const NamedSeries &ns = named_series(id);
        Series sum = ns.sum_side(120);
        Series prod = ns.product_side(120);
        Series eta = ns.eta_side(120);
        INFO("series ", id);
        CHECK(!first_mismatch(sum, prod).has_value());
        CHECK(!first_mismatch(prod, eta).has_value());
    }
}

TEST_CASE("triple equality holds in the modular rings too") {
    for (const auto &id : {"h", "s"}) {
        const NamedSeries &ns = named_series(id);
        for (unsigned k : {1u, 4u}) {
            Ring ring = Ring::mod2k(k);
            Series sum = ns.sum_side(80, ring);
            Series eta = ns.eta_side(80, ring);
            INFO("series ", id, " mod 2^", k);
            CHECK(!first_mismatch(sum, eta).has_value());
        }
    }
}

TEST_CASE("eta forms of h and t match their displayed quotients") {
    /* the h quotient: l2 l8^2 / (l1^2 l4) */
    Series h = named_series("h").eta_side(60);
    Series direct = div_unit(
        mul(eta_series(2, 60), mul(eta_series(8, 60), eta_series(8, 60))),
        mul(mul(eta_series(1, 60), eta_series(1, 60)), eta_series(4, 60)));
    CHECK(h == direct);

    /* the t quotient: l2 l3 l12 / (l1^2 l6) */
    Series t = named_series("t").eta_side(60);
    Series td = div_unit(
        mul(eta_series(2, 60), mul(eta_series(3, 60), eta_series(12, 60))),
        mul(mul(eta_series(1, 60), eta_series(1, 60)), eta_series(6, 60)));
    CHECK(t == td);
}
