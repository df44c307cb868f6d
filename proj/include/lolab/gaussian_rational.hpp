#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace lolab {

/// Exact element re + im*i of Q(i). Both parts are kept in lowest terms with a
/// positive denominator, so equality and hashing are structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  explicit GaussianRational(mpq_class re, mpq_class im = 0);
  GaussianRational(long num, long den);

  static GaussianRational imaginary_unit() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  /// Accepts "p", "p/q", "p/q+r/s*i", "p/q-r/s*i", "r/s*i", "i", "-i".
  static GaussianRational parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  /// True when both parts are integers.
  bool is_gaussian_integer() const;

  GaussianRational conj() const { return GaussianRational(re_, -im_, Canonical{}); }
  /// re^2 + im^2
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Throws std::domain_error on division by zero.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return GaussianRational(-re_, -im_, Canonical{}); }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic (re, im); a total order for containers, not a field order.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

  std::string str() const;
  std::size_t hash() const;

 private:
  struct Canonical {};
  GaussianRational(mpq_class re, mpq_class im, Canonical) : re_(std::move(re)), im_(std::move(im)) {}

  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

/// Canonical text of a rational: "p" or "p/q".
std::string rational_str(const mpq_class& q);
/// Parses "p" or "p/q" (optional sign); throws ParseError.
mpq_class parse_rational(std::string_view text);
mpz_class lcm_denominator(const GaussianRational& x);

}  // namespace lolab

template <>
struct std::hash<lolab::GaussianRational> {
  std::size_t operator()(const lolab::GaussianRational& x) const noexcept { return x.hash(); }
};
