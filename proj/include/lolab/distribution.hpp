#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <variant>
#include <vector>

#include "lolab/config.hpp"
#include "lolab/sequence.hpp"

namespace lolab {

/// Exact law of X = xi_1 a_1 + ... + xi_n a_n with independent uniform signs.
///
/// Every point carries a numerator m >= 1 with P[X = point] = m / 2^n. Points
/// are stored scaled by the common denominator of all input coordinates, so
/// the support is a sorted array of Gaussian integers. Iteration order is that
/// sorted order and does not depend on the input order or on `threads`.
class SumDistribution {
 public:
  /// Incremental convolution over the vectors of `a` in input order. Throws
  /// BudgetExceeded when n > cfg.max_summands or the support outgrows cfg.max_support.
  static SumDistribution compute(const VectorSequence& a, const ExecConfig& cfg = default_config());

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t support_size() const;
  /// 2^n
  std::uint64_t total() const { return std::uint64_t{1} << n_; }

  ExactVector point(std::size_t index) const;
  std::uint64_t numerator_at(std::size_t index) const;
  /// Numerator of P[X = x]; zero off the support.
  std::uint64_t numerator(const ExactVector& x) const;
  mpq_class probability(const ExactVector& x) const;
  std::uint64_t max_numerator() const;

  /// Calls f(point, numerator) in canonical order.
  void for_each(const std::function<void(const ExactVector&, std::uint64_t)>& f) const;

  /// CSV rows "coord_1,...,coord_k,numerator,n" with a header line.
  void write_csv(std::ostream& os) const;

  friend bool operator==(const SumDistribution& a, const SumDistribution& b);

 private:
  template <typename C>
  struct Table {
    std::vector<C> keys;  // stride 2k: re_1, im_1, ..., re_k, im_k
    std::vector<std::uint64_t> weights;
  };

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  mpz_class scale_ = 1;
  std::variant<Table<std::int64_t>, Table<mpz_class>> table_;

  template <typename C>
  static Table<C> convolve(const VectorSequence& a, const mpz_class& scale, const ExecConfig& cfg);
  bool scaled_key(const ExactVector& x, std::vector<mpz_class>& out) const;
};

/// Exact numerator/2^n as a reduced rational.
mpq_class dyadic(std::uint64_t numerator, std::size_t n);

}  // namespace lolab
