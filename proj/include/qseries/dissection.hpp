#pragma once

#include <cstdint>
#include <vector>

#include "qseries/report.hpp"
#include "qseries/series.hpp"

namespace qseries {

bool is_prime(std::int64_t n);

/* psi(q) = sum_{t=0}^{(p-3)/2} q^{(t^2+t)/2}
 *            f(q^{(p^2+(2t+1)p)/2}, q^{(p^2-(2t+1)p)/2})
 *          + q^{(p^2-1)/8} psi(q^{p^2})        for odd primes p.
 * Verified coefficientwise to order N, together with the claim that the
 * head prefactor exponents avoid (p^2-1)/8 mod p, that the head residue
 * classes mod p are pairwise distinct, and that the component on each
 * residue class equals the class extraction of the full series. */
VerificationReport verify_psi_dissection(std::int64_t p, std::int64_t N);

/* l1 = sum over t != (+-p-1)/6 of (-1)^t q^{(3t^2+t)/2}
 *        f(-q^{(3p^2+(6t+1)p)/2}, -q^{(3p^2-(6t+1)p)/2})
 *      + (-1)^{(+-p-1)/6} q^{(p^2-1)/24} l_{p^2}     for primes p >= 5,
 * with (+-p-1)/6 = (p-1)/6 when p = 1 (mod 6), (-p-1)/6 when p = -1. */
VerificationReport verify_l1_dissection(std::int64_t p, std::int64_t N);

/* The three 2-/3-dissection identities:
 *   l3^3/l1 = l4^3 l6^2/(l2^2 l12) + q l12^3/l4
 *   l2^2/l1 = l6 l9^2/(l3 l18) + q l18^2/l9
 *   l2/l1^2 = l6^4 l9^6/(l3^8 l18^3) + 2q l6^3 l9^3/l3^7
 *             + 4q^2 l6^2 l18^3/l3^6 */
std::vector<VerificationReport> verify_2_3_dissections(std::int64_t N);

/* l_{2k}^m = l_k^{2m} (mod 2) and l_{2k}^{2m} = l_k^{4m} (mod 4). */
VerificationReport verify_binomial_congruence(std::int64_t k, std::int64_t m,
                                              std::int64_t N);

/* Pure integer checks, no series: the residue-avoidance claims of both
 * dissection lemmas for all applicable primes <= p_max. */
VerificationReport verify_residue_avoidance(std::int64_t p_max);

/* For primes with (-8/p) = -1, the congruence
 * (6t+1)^2 + 8(6m+1)^2 = 0 (mod p) has t = m = (+-p-1)/6 as its only
 * solution with |t|, |m| <= (p-1)/2; checked by exhaustive scan. */
VerificationReport verify_g3_unique_solution(std::int64_t p_max);

} // namespace qseries
