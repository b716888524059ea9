#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "qseries/partitions.hpp"
#include "qseries/report.hpp"
#include "qseries/series.hpp"

namespace qseries {

/* Legendre symbol (xi/p) by Euler's criterion xi^{(p-1)/2} mod p.
 * Returns 0 when p divides xi. p must be an odd prime. */
int legendre(std::int64_t xi, std::int64_t p);

/* Which primes a congruence family admits. */
struct PrimeCondition {
    enum class Kind { AnyPrime, Legendre };
    Kind kind = Kind::AnyPrime;
    std::int64_t min_p = 3;
    std::int64_t xi = 0; /* Legendre only; admitted iff (xi/p) = -1 */

    bool admits(std::int64_t p) const;
};

/* All primes in [min_p, bound] admitted by the condition, ascending. */
std::vector<std::int64_t> admissible_primes(const PrimeCondition &c,
                                            std::int64_t bound);

/* Offset of the form (u P + v)/w where P = p^{2a} (series congruences) or
 * p^{2a+2} (j-families); must be integral for every admitted prime. */
struct OffsetForm {
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::int64_t w = 1;

    std::int64_t eval(std::int64_t P) const;
};

/* One registered claim about a named coefficient family. */
struct CongruenceCheck {
    enum class Kind { ApVanishing, SeriesCongruence, JFamily };

    std::string id;
    std::string paper_label;
    std::string series;
    Kind kind = Kind::ApVanishing;
    std::int64_t stride = 1; /* the a of a*p^{2alpha}n + offset */
    OffsetForm offset;
    unsigned modulus = 2; /* one of 2, 4, 8, 16 */
    std::string rhs;      /* series congruences only */
    PrimeCondition prime;
    int alpha_max = -1; /* -1 = any alpha; 0 = stated for p^2 only */
};

/* One displayed proof step: an arithmetic-progression extraction of a named
 * series equals (exactly, or mod 2^k) a fixed expression. */
struct IntermediateCheck {
    std::string id;
    std::string paper_label;
    std::string series;
    std::int64_t stride = 1;
    std::int64_t residue = 0;
    bool exact = false;
    unsigned modulus = 2; /* ignored when exact */
    std::string rhs;
};

/* A partition-theoretic interpretation: restricted counts must equal the
 * coefficients of the named series. */
struct InterpretationCheck {
    std::string id;
    std::string paper_label;
    std::string series;
    PartitionConstraint constraint;
};

/* Named base series built through their eta forms, memoized per ring at the
 * largest order requested so far. Lock-protected so parallel checks can
 * share one cache. */
class SeriesCache {
  public:
    Series get(const std::string &name, Ring ring, std::int64_t order);

  private:
    std::mutex mutex_;
    std::map<std::pair<std::string, unsigned>, Series> cache_;
};

unsigned mod_bits_for(unsigned modulus);

/* Coefficient budget guard: checks whose base series would exceed
 * `coeff_budget` coefficients are reported skipped, never silently
 * truncated or passed. */
VerificationReport check_ap_vanishing(const CongruenceCheck &c,
                                      std::int64_t n_terms, SeriesCache &cache,
                                      std::int64_t coeff_budget);

VerificationReport check_series_congruence(const CongruenceCheck &c,
                                           std::int64_t p, int alpha,
                                           std::int64_t n_terms,
                                           SeriesCache &cache,
                                           std::int64_t coeff_budget);

VerificationReport check_j_family(const CongruenceCheck &c, std::int64_t p,
                                  int alpha, std::int64_t n_terms,
                                  SeriesCache &cache,
                                  std::int64_t coeff_budget);

VerificationReport check_intermediate(const IntermediateCheck &c,
                                      std::int64_t N, SeriesCache &cache);

VerificationReport check_interpretation(const InterpretationCheck &c,
                                        std::int64_t n_limit,
                                        std::int64_t enum_limit,
                                        SeriesCache &cache);

/* The proof display preceding the first g2 family: the odd-power step
 * sum_n g2(16 p^{2alpha+1} n + 2 p^{2alpha+2}) q^n = 2 psi(q^p) (mod 4),
 * checked at alpha = 0. Its right side depends on p, so it lives here
 * rather than in the registry grammar. */
VerificationReport check_g1_display(std::int64_t p, std::int64_t n_terms,
                                    SeriesCache &cache,
                                    std::int64_t coeff_budget);

/* Rerun of one claim with the modulus doubled, in exact arithmetic: the
 * result passes when the strengthened claim FAILS somewhere in range (the
 * harness would catch a real regression) and fails when the strengthened
 * claim survives. */
VerificationReport check_mutation(const CongruenceCheck &c,
                                  std::int64_t n_terms, SeriesCache &cache,
                                  std::int64_t coeff_budget);
VerificationReport check_mutation(const IntermediateCheck &c, std::int64_t N,
                                  SeriesCache &cache);

} // namespace qseries
