#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lolab/gaussian_rational.hpp"

namespace lolab {

using ExactVector = std::vector<GaussianRational>;

ExactVector zero_vector(std::size_t k);
ExactVector unit_vector(std::size_t k, std::size_t i);
ExactVector operator+(const ExactVector& a, const ExactVector& b);
ExactVector operator-(const ExactVector& a, const ExactVector& b);
ExactVector operator-(const ExactVector& a);
ExactVector operator*(const GaussianRational& s, const ExactVector& v);
bool is_zero(const ExactVector& v);
bool is_real(const ExactVector& v);
/// Bilinear (not Hermitian) pairing sum a_i b_i.
GaussianRational dot(const ExactVector& a, const ExactVector& b);
std::string to_string(const ExactVector& v);

/// Dense row-major matrix over Q(i).
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  static ExactMatrix identity(std::size_t n);
  /// Every row must have length `cols`; `cols` is needed for the 0-row case.
  static ExactMatrix from_rows(const std::vector<ExactVector>& rows, std::size_t cols);
  static ExactMatrix from_columns(const std::vector<ExactVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactVector row(std::size_t r) const;
  ExactVector column(std::size_t c) const;
  std::vector<ExactVector> row_list() const;
  ExactMatrix transpose() const;
  ExactVector operator*(const ExactVector& v) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

/// Dimension of the row space, via fraction-free elimination over Z[i].
std::size_t rank(const ExactMatrix& m);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
ExactMatrix rref(const ExactMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Basis of {v : M v = 0}, one vector per free column of the RREF.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

/// One exact solution of M x = b (free variables set to zero), if any.
std::optional<ExactVector> solve_linear(const ExactMatrix& m, const ExactVector& b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<ExactMatrix> inverse(const ExactMatrix& m);

/// Basis (RREF rows) of the span of the given vectors in F^k.
std::vector<ExactVector> span_basis(const std::vector<ExactVector>& vectors, std::size_t k);

/// Rows spanning {w : sum_j w_j v_j = 0 for all v in V}; the matrix with these
/// rows has kernel exactly V, so it realizes the quotient map F^k -> F^k / V.
ExactMatrix quotient_map(const std::vector<ExactVector>& subspace_basis, std::size_t k);

bool in_span(const std::vector<ExactVector>& basis, const ExactVector& v, std::size_t k);

}  // namespace lolab
