#include "lolab/gaussian_rational.hpp"

#include <cctype>
#include <stdexcept>

#include "lolab/errors.hpp"

namespace lolab {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational::GaussianRational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  re_ = mpq_class(num, den);
  re_.canonicalize();
}

bool GaussianRational::is_gaussian_integer() const {
  return re_.get_den() == 1 && im_.get_den() == 1;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class n = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return rational_str(re_);
  std::string imag = rational_str(abs(im_)) + "*i";
  if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + imag : imag;
  return rational_str(re_) + (sgn(im_) < 0 ? "-" : "+") + imag;
}

std::size_t GaussianRational::hash() const {
  std::size_t h = std::hash<std::string>{}(str());
  return h;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.str(); }

mpz_class lcm_denominator(const GaussianRational& x) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), x.re().get_den_mpz_t(), x.im().get_den_mpz_t());
  return l;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational: '" + std::string(text) + "'");
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(mpz_class(std::string(num), 10), d);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return GaussianRational(parse_rational(s), 0);

  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  // The imaginary coefficient starts at the last sign that is not the first character.
  std::size_t split = 0;
  for (std::size_t p = s.size(); p-- > 1;) {
    if (s[p] == '+' || s[p] == '-') {
      split = p;
      break;
    }
  }
  std::string real_part = s.substr(0, split);
  std::string imag_part = s.substr(split);
  if (split == 0) real_part.clear();
  mpq_class im;
  if (imag_part.empty() || imag_part == "+") {
    im = 1;
  } else if (imag_part == "-") {
    im = -1;
  } else {
    im = parse_rational(imag_part);
  }
  mpq_class re = real_part.empty() ? mpq_class(0) : parse_rational(real_part);
  return GaussianRational(re, im);
}

}  // namespace lolab
