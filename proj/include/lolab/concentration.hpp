#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "lolab/config.hpp"
#include "lolab/distribution.hpp"
#include "lolab/membership.hpp"

namespace lolab {

/// Maximum point probability of X; the supremum is attained on the support.
mpq_class rho(const SumDistribution& d);
mpq_class rho(const VectorSequence& a, const ExecConfig& cfg = default_config());

/// P[X in S], summed over the support.
mpq_class prob_in_set(const SumDistribution& d, const MembershipSet& s, const ExecConfig& cfg = default_config());
mpq_class prob_in_set(const VectorSequence& a, const MembershipSet& s, const ExecConfig& cfg = default_config());

struct TranslateResult {
  mpq_class probability;
  ExactVector shift;  // a maximizing x
};

/// max over the candidates of P[X in S + x]; an empty list means x = 0 only.
TranslateResult rho_translate_lower_bound(const SumDistribution& d, const MembershipSet& s,
                                          const std::vector<ExactVector>& candidates,
                                          const ExecConfig& cfg = default_config());
TranslateResult rho_translate_lower_bound(const VectorSequence& a, const MembershipSet& s,
                                          const std::vector<ExactVector>& candidates,
                                          const ExecConfig& cfg = default_config());

/// {y - w : y in the support, w in witness}: every shift x with X in S + x
/// possible for some witness point of S.
std::vector<ExactVector> default_translate_candidates(const SumDistribution& d, const std::vector<ExactVector>& witness);

/// Exact rho(A, S) for finite S; the maximizing shift is the least one in
/// canonical order. Throws BudgetExceeded when |support| * |S| > cfg.max_pair_work.
TranslateResult rho_finite_set(const SumDistribution& d, const std::vector<ExactVector>& s,
                               const ExecConfig& cfg = default_config());
TranslateResult rho_finite_set(const VectorSequence& a, const std::vector<ExactVector>& s,
                               const ExecConfig& cfg = default_config());

/// rho(A, V) = rho(pi(A)) for the quotient map pi with kernel V.
mpq_class rho_subspace(const VectorSequence& a, const std::vector<ExactVector>& subspace,
                       const ExecConfig& cfg = default_config());

struct McEstimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0;
  double lower = 0;  // 99% Wilson interval
  double upper = 0;
};

/// Wilson score interval at z = 2.5758.
McEstimate wilson(std::uint64_t hits, std::uint64_t trials);

/// Frequency of X in S over `trials` sampled sign vectors. Trials run in fixed
/// blocks, each seeded from (seed, block index), so the result does not depend
/// on cfg.threads.
McEstimate monte_carlo_prob(const VectorSequence& a, const MembershipSet& s, std::uint64_t trials, std::uint64_t seed,
                            const ExecConfig& cfg = default_config());

}  // namespace lolab
