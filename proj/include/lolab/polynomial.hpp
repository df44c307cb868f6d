#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lolab/linalg.hpp"

namespace lolab {

using Exponents = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponents& e);

/// Graded lexicographic order: total degree first, then lexicographic with x1 > x2 > ...
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial in `nvars` variables over Q(i). Zero coefficients are never stored.
class SparsePoly {
 public:
  using TermMap = std::map<Exponents, GaussianRational, GradedLex>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, const GaussianRational& c);
  static SparsePoly variable(std::size_t nvars, std::size_t index);
  /// Homogeneous linear form sum coeffs[j] x_j.
  static SparsePoly linear_form(const ExactVector& coeffs);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Largest exponent of one variable; -1 for the zero polynomial.
  int degree_in(std::size_t var) const;
  GaussianRational coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const GaussianRational& c);

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const GaussianRational& s);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const GaussianRational& s) { return a *= s; }
  SparsePoly operator-() const;
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  SparsePoly pow(unsigned e) const;
  GaussianRational evaluate(const ExactVector& x) const;
  SparsePoly derivative(std::size_t var) const;
  SparsePoly homogeneous_part(std::uint32_t d) const;
  /// Coefficient-wise complex conjugate.
  SparsePoly conj() const;
  /// f(g_1, ..., g_nvars); every g_i must share one variable count.
  SparsePoly compose(const std::vector<SparsePoly>& substitutions) const;
  /// f(x + v)
  SparsePoly translate(const ExactVector& v) const;
  /// Same polynomial viewed in `nvars` >= nvars() variables (new trailing variables unused).
  SparsePoly extend_vars(std::size_t nvars) const;

  std::string str() const;

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Quotient q with f = g q, or nullopt when g does not divide f.
std::optional<SparsePoly> divide_exact(const SparsePoly& f, const SparsePoly& g);

}  // namespace lolab
