#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lolab/concentration.hpp"
#include "lolab/config.hpp"
#include "lolab/sequence.hpp"

namespace lolab {

using Coefficients = std::vector<std::int64_t>;

/// Q = {c_1 v_1 + ... + c_r v_r : |c_i| <= q_i} in F^k.
struct SymmetricGAP {
  std::size_t k = 0;
  std::vector<ExactVector> generators;
  std::vector<std::int64_t> radii;

  SymmetricGAP() = default;
  SymmetricGAP(std::size_t k, std::vector<ExactVector> generators, std::vector<std::int64_t> radii);

  std::size_t rank() const { return generators.size(); }
  /// prod (2 q_i + 1)
  mpz_class volume() const;
  ExactVector evaluate(const Coefficients& c) const;
  bool in_box(const Coefficients& c) const;
};

struct ProperReport {
  bool proper = true;
  std::optional<std::pair<Coefficients, Coefficients>> collision;  // distinct tuples, equal value
};

/// Enumerates all prod(2q_i+1) combinations. Throws BudgetExceeded above cfg.max_enumeration.
ProperReport is_proper(const SymmetricGAP& q, const ExecConfig& cfg = default_config());

/// Every element of Q with its coefficient tuple, in coefficient-lexicographic order.
std::vector<std::pair<ExactVector, Coefficients>> enumerate_gap(const SymmetricGAP& q,
                                                                const ExecConfig& cfg = default_config());

/// A tuple c in the box with sum c_i v_i = x. Uses one linear solve when the
/// generators are independent, otherwise enumeration.
std::optional<Coefficients> gap_contains(const SymmetricGAP& q, const ExactVector& x,
                                         const ExecConfig& cfg = default_config());

/// Radii ceil(t q_i).
std::vector<std::int64_t> dilate(const std::vector<std::int64_t>& radii, const mpq_class& t);

/// 2 r exp(-t^2 / (2 m))
double hoeffding_tail_bound(std::size_t m, std::size_t r, double t);

struct ContainmentReport {
  McEstimate escape;                      // sampled frequency of leaving the dilated box
  std::optional<mpq_class> exact_escape;  // when the sum distribution fits the budget
  double bound = 0;                       // hoeffding_tail_bound(m, r, t)
  std::vector<std::int64_t> dilated;
};

/// Escape of xi_1 a_1 + ... + xi_m a_m from Q_r(t q_1, ..., t q_r) for integer
/// vectors a_i in Q_r(q). Throws PreconditionError when some a_i is outside the box.
ContainmentReport empirical_containment(const VectorSequence& a, const std::vector<std::int64_t>& radii,
                                        const mpq_class& t, std::uint64_t trials, std::uint64_t seed,
                                        const ExecConfig& cfg = default_config());

/// The coefficient tuples of each element of A' in Q, as vectors in Z^r.
/// Throws PreconditionError naming the first element outside Q.
VectorSequence gap_coordinates(const VectorSequence& a, const SymmetricGAP& q, const ExecConfig& cfg = default_config());

struct CoverageReport {
  std::size_t outside = 0;
  std::vector<std::size_t> outside_indices;
  mpz_class volume;
};

CoverageReport coverage_check(const VectorSequence& a, const SymmetricGAP& q, const ExecConfig& cfg = default_config());

}  // namespace lolab
