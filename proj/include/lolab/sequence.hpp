#pragma once

#include <cstddef>
#include <vector>

#include "lolab/linalg.hpp"

namespace lolab {

/// Ordered multiset A = (a_1, ..., a_n) of vectors in F^k.
class VectorSequence {
 public:
  VectorSequence() = default;
  /// Throws std::invalid_argument if some vector does not have length k.
  VectorSequence(std::size_t k, std::vector<ExactVector> vectors);
  /// n copies of one vector.
  static VectorSequence copies(const ExactVector& v, std::size_t n);

  std::size_t k() const { return k_; }
  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  const ExactVector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<ExactVector>& vectors() const { return vectors_; }
  auto begin() const { return vectors_.begin(); }
  auto end() const { return vectors_.end(); }

  /// A[I] in the order given by `indices`.
  VectorSequence subsequence(const std::vector<std::size_t>& indices) const;
  /// (M a_1, ..., M a_n); M must have k columns.
  VectorSequence mapped(const ExactMatrix& m) const;
  VectorSequence concat(const VectorSequence& other) const;
  bool is_real() const;

  friend bool operator==(const VectorSequence&, const VectorSequence&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<ExactVector> vectors_;
};

}  // namespace lolab
