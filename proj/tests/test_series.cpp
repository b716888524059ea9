#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "qseries/series.hpp"

using namespace qseries;

namespace {

/* Independent convolution oracle: plain double loop over mpz. */
std::vector<mpz_class> conv_oracle(const std::vector<mpz_class> &a,
                                   const std::vector<mpz_class> &b,
                                   std::size_t upto) {
    std::vector<mpz_class> out(upto + 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (i + j <= upto)
                out[i + j] += a[i] * b[j];
    return out;
}

Series random_series(std::mt19937 &rng, std::int64_t order, Ring ring,
                     int span = 20) {
    std::uniform_int_distribution<int> coeff(-span, span);
    if (ring.is_exact()) {
        std::vector<mpz_class> c(order + 1);
        for (auto &x : c)
            x = coeff(rng);
        return Series::from_coeffs(std::move(c));
    }
    std::vector<std::uint8_t> c(order + 1);
    std::uniform_int_distribution<int> res(0, ring.modulus() - 1);
    for (auto &x : c)
        x = static_cast<std::uint8_t>(res(rng));
    return Series::from_residues(ring.mod_bits, std::move(c));
}

Series from_ints(std::initializer_list<long> coeffs) {
    std::vector<mpz_class> c;
    for (long v : coeffs)
        c.emplace_back(v);
    return Series::from_coeffs(std::move(c));
}

} // namespace

TEST_CASE("add basics") {
    /* (1+q) + (1-q) = 2 */
    Series a = from_ints({1, 1});
    Series b = from_ints({1, -1});
    CHECK(add(a, b) == from_ints({2, 0}));

    /* s + 0 = s */
    Series s = from_ints({3, 1, 4});
    CHECK(add(s, Series::zeros(Ring::exact(), 2)) == s);

    /* order of the result is the smaller order */
    Series long3 = from_ints({1, 2, 3});
    Series short1 = from_ints({1, 1});
    Series sum = add(long3, short1);
    CHECK(sum.order() == 1);
    CHECK(sum == from_ints({2, 3}));
}

TEST_CASE("add rejects mixed rings") {
    Series a = from_ints({1, 1});
    Series b = Series::constant(Ring::mod2k(2), 1, 1);
    CHECK_THROWS_AS(add(a, b), std::invalid_argument);
    CHECK_THROWS_AS(mul(a, b), std::invalid_argument);
}

TEST_CASE("mul basics") {
    /* (1-q) * (1+q+q^2+...) = 1 */
    std::int64_t N = 40;
    std::vector<mpz_class> geo(N + 1, 1);
    Series ones = Series::from_coeffs(std::move(geo));
    Series binom = sub(Series::constant(Ring::exact(), N, 1),
                       Series::monomial(Ring::exact(), N, 1));
    CHECK(mul(binom, ones) == Series::constant(Ring::exact(), N, 1));

    /* (1+q)^2 = 1 + 2q + q^2 */
    Series one_q = from_ints({1, 1, 0});
    CHECK(mul(one_q, one_q) == from_ints({1, 2, 1}));

    /* mixed orders truncate to the smaller one */
    Series prod = mul(from_ints({1, 1, 1, 1, 1}), from_ints({1, 1}));
    CHECK(prod.order() == 1);
    CHECK(prod == from_ints({1, 2}));
}

TEST_CASE("mul agrees with the convolution oracle") {
    std::mt19937 rng(12345);
    for (int iter = 0; iter < 40; ++iter) {
        std::int64_t n = 1 + (rng() % 60);
        Series a = random_series(rng, n, Ring::exact());
        Series b = random_series(rng, n, Ring::exact());
        Series prod = mul(a, b);
        std::vector<mpz_class> av, bv;
        for (std::int64_t i = 0; i <= n; ++i) {
            av.push_back(a.zcoeff(i));
            bv.push_back(b.zcoeff(i));
        }
        auto expect = conv_oracle(av, bv, n);
        for (std::int64_t i = 0; i <= n; ++i)
            CHECK(prod.zcoeff(i) == expect[i]);
        /* commutativity */
        CHECK(mul(b, a) == prod);
    }
}

TEST_CASE("mul karatsuba path agrees with the oracle") {
    std::mt19937 rng(777);
    const std::int64_t n = 9000; /* above the dense threshold */
    SUBCASE("exact ring") {
        Series a = random_series(rng, n, Ring::exact(), 5);
        Series b = random_series(rng, n, Ring::exact(), 5);
        Series prod = mul(a, b);
        /* spot-check a few coefficients against the direct sum */
        for (std::int64_t k : {0L, 1L, 40L, 4096L, 8191L, 9000L}) {
            mpz_class expect = 0;
            for (std::int64_t i = 0; i <= k; ++i)
                expect += a.zcoeff(i) * b.zcoeff(k - i);
            CHECK(prod.zcoeff(k) == expect);
        }
    }
    SUBCASE("mod ring") {
        Ring ring = Ring::mod2k(4);
        Series a = random_series(rng, n, ring);
        Series b = random_series(rng, n, ring);
        Series prod = mul(a, b);
        for (std::int64_t k : {0L, 1L, 40L, 4096L, 8191L, 9000L}) {
            unsigned expect = 0;
            for (std::int64_t i = 0; i <= k; ++i)
                expect = (expect + a.mcoeff(i) * b.mcoeff(k - i)) & 15u;
            CHECK(prod.mcoeff(k) == expect);
        }
    }
}

TEST_CASE("ring axioms at order 64") {
    std::mt19937 rng(99);
    for (Ring ring : {Ring::exact(), Ring::mod2k(1), Ring::mod2k(4)}) {
        for (int iter = 0; iter < 20; ++iter) {
            Series a = random_series(rng, 64, ring);
            Series b = random_series(rng, 64, ring);
            Series c = random_series(rng, 64, ring);
            CHECK(add(add(a, b), c) == add(a, add(b, c)));
            CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
            CHECK(mul(a, b) == mul(b, a));
        }
    }
}

TEST_CASE("div_unit basics") {
    std::int64_t N = 30;
    Series one = Series::constant(Ring::exact(), N, 1);
    Series binom = sub(one, Series::monomial(Ring::exact(), N, 1));
    Series geo = div_unit(one, binom);
    for (std::int64_t i = 0; i <= N; ++i)
        CHECK(geo.zcoeff(i) == 1);

    /* (1-q^2)/(1-q) = 1+q */
    Series n2 = sub(one, Series::monomial(Ring::exact(), N, 2));
    Series quot = div_unit(n2, binom);
    CHECK(quot.zcoeff(0) == 1);
    CHECK(quot.zcoeff(1) == 1);
    for (std::int64_t i = 2; i <= N; ++i)
        CHECK(quot.zcoeff(i) == 0);
}

TEST_CASE("div_unit round trip on random unit divisors") {
    std::mt19937 rng(4242);
    int checked = 0;
    for (Ring ring : {Ring::exact(), Ring::mod2k(3)}) {
        for (int iter = 0; iter < 50; ++iter) {
            std::int64_t n = 1 + (rng() % 50);
            Series a = random_series(rng, n, ring);
            Series b = random_series(rng, n, ring);
            /* force a unit constant term */
            if (ring.is_exact()) {
                std::vector<mpz_class> c;
                c.emplace_back(rng() % 2 ? 1 : -1);
                for (std::int64_t i = 1; i <= n; ++i)
                    c.push_back(b.zcoeff(i));
                b = Series::from_coeffs(std::move(c));
            } else {
                std::vector<std::uint8_t> c;
                c.push_back(static_cast<std::uint8_t>((rng() % ring.modulus()) | 1u));
                for (std::int64_t i = 1; i <= n; ++i)
                    c.push_back(static_cast<std::uint8_t>(b.mcoeff(i)));
                b = Series::from_residues(ring.mod_bits, std::move(c));
            }
            CHECK(mul(div_unit(a, b), b) == a);
            CHECK(div_unit(mul(a, b), b) == a);
            ++checked;
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("div_unit rejects non-units") {
    Series a = from_ints({1, 1});
    Series even = Series::constant(Ring::mod2k(3), 1, 2);
    CHECK_THROWS_AS(div_unit(reduce_mod(a, 3), even), std::invalid_argument);
    Series two = from_ints({2, 0});
    CHECK_THROWS_AS(div_unit(a, two), std::invalid_argument);
}

TEST_CASE("ap_extract") {
    Series s = from_ints({1, 2, 3, 4});
    Series odd = ap_extract(s, 2, 1);
    CHECK(odd == from_ints({2, 4}));
    CHECK(ap_extract(s, 1, 0) == s);
    CHECK_THROWS_AS(ap_extract(s, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(ap_extract(s, 2, -1), std::invalid_argument);

    /* order bookkeeping: floor((N - r)/m) */
    CHECK(ap_extract(s, 3, 1).order() == 0);
}

TEST_CASE("ap_extract is linear") {
    std::mt19937 rng(31);
    for (int iter = 0; iter < 20; ++iter) {
        std::int64_t n = 5 + (rng() % 60);
        std::int64_t m = 1 + (rng() % 5);
        std::int64_t r = rng() % m;
        Series a = random_series(rng, n, Ring::exact());
        Series b = random_series(rng, n, Ring::exact());
        CHECK(ap_extract(add(a, b), m, r) ==
              add(ap_extract(a, m, r), ap_extract(b, m, r)));
    }
}

TEST_CASE("substitute_power") {
    Series s = from_ints({1, 1});
    Series sq = substitute_power(s, 2);
    CHECK(sq == from_ints({1, 0, 1}));
    CHECK(substitute_power(s, 1) == s);

    /* cap below k*order */
    Series capped = substitute_power(from_ints({1, 2, 3}), 3, 4);
    CHECK(capped == from_ints({1, 0, 0, 2, 0}));
}

TEST_CASE("reduce_mod") {
    /* 2 + 4q reduces to zero mod 2 */
    Series s = from_ints({2, 4});
    Series r1 = reduce_mod(s, 1);
    CHECK(r1.mcoeff(0) == 0);
    CHECK(r1.mcoeff(1) == 0);

    /* residues are the exact coefficients mod 2^k, including negatives */
    Series t = from_ints({-1, 7, -6});
    Series r3 = reduce_mod(t, 3);
    CHECK(r3.mcoeff(0) == 7);
    CHECK(r3.mcoeff(1) == 7);
    CHECK(r3.mcoeff(2) == 2);

    CHECK_THROWS_AS(reduce_mod(r3, 2), std::invalid_argument);
}

TEST_CASE("reduce_mod is a ring homomorphism") {
    std::mt19937 rng(2024);
    for (unsigned k = 1; k <= 4; ++k) {
        for (int iter = 0; iter < 10; ++iter) {
            std::int64_t n = 5 + (rng() % 40);
            Series a = random_series(rng, n, Ring::exact());
            Series b = random_series(rng, n, Ring::exact());
            CHECK(reduce_mod(mul(a, b), k) ==
                  mul(reduce_mod(a, k), reduce_mod(b, k)));
            CHECK(reduce_mod(add(a, b), k) ==
                  add(reduce_mod(a, k), reduce_mod(b, k)));
        }
    }
}

TEST_CASE("first_mismatch") {
    Series a = from_ints({1, 2, 3});
    Series b = from_ints({1, 2, 4});
    auto bad = first_mismatch(a, b);
    REQUIRE(bad.has_value());
    CHECK(*bad == 2);
    CHECK(!first_mismatch(a, b, 1).has_value());
    CHECK(!first_mismatch(a, a).has_value());
}
