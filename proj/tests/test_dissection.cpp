#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qseries/dissection.hpp"

using namespace qseries;

TEST_CASE("psi dissection") {
    CHECK(verify_psi_dissection(3, 300).status == CheckStatus::Pass);
    CHECK(verify_psi_dissection(5, 300).status == CheckStatus::Pass);
    CHECK(verify_psi_dissection(7, 200).status == CheckStatus::Pass);
    CHECK_THROWS_AS(verify_psi_dissection(2, 100), std::invalid_argument);
    CHECK_THROWS_AS(verify_psi_dissection(9, 100), std::invalid_argument);

    /* too small an order to see the tail: reported as a skip */
    CHECK(verify_psi_dissection(5, 25).status == CheckStatus::Skip);
}

TEST_CASE("psi dissection head residues at p=5") {
    /* (t^2+t)/2 mod 5 for t = 0, 1 is {0, 1}; the tail lands on
     * (25-1)/8 = 3 mod 5, disjoint from the heads. */
    std::int64_t p = 5;
    std::int64_t tail = ((p * p - 1) / 8) % p;
    CHECK(tail == 3);
    for (std::int64_t t = 0; t <= (p - 3) / 2; ++t)
        CHECK((t * (t + 1) / 2) % p != tail);
}

TEST_CASE("l1 dissection") {
    CHECK(verify_l1_dissection(5, 300).status == CheckStatus::Pass);
    CHECK(verify_l1_dissection(7, 300).status == CheckStatus::Pass);
    CHECK(verify_l1_dissection(13, 200).status == CheckStatus::Pass);
    CHECK_THROWS_AS(verify_l1_dissection(3, 100), std::invalid_argument);
    CHECK_THROWS_AS(verify_l1_dissection(4, 100), std::invalid_argument);
}

TEST_CASE("2- and 3-dissection identities") {
    auto reps = verify_2_3_dissections(300);
    REQUIRE(reps.size() == 3);
    for (const auto &r : reps) {
        INFO(r.id);
        CHECK(r.status == CheckStatus::Pass);
    }
}

TEST_CASE("binomial congruences") {
    CHECK(verify_binomial_congruence(1, 1, 200).status == CheckStatus::Pass);
    CHECK(verify_binomial_congruence(3, 2, 200).status == CheckStatus::Pass);
    CHECK(verify_binomial_congruence(6, 4, 0).status == CheckStatus::Pass);
}

TEST_CASE("residue avoidance and the unique-solution scan") {
    CHECK(verify_residue_avoidance(97).status == CheckStatus::Pass);
    CHECK(verify_g3_unique_solution(97).status == CheckStatus::Pass);
}
