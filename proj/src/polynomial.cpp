#include "lolab/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace lolab {

std::uint32_t total_degree(const Exponents& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  auto da = total_degree(a);
  auto db = total_degree(b);
  if (da != db) return da < db;
  // Larger exponent of an earlier variable is the larger monomial.
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SparsePoly SparsePoly::constant(std::size_t nvars, const GaussianRational& c) {
  SparsePoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index");
  SparsePoly p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

SparsePoly SparsePoly::linear_form(const ExactVector& coeffs) {
  SparsePoly p(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    Exponents e(coeffs.size(), 0);
    e[j] = 1;
    p.add_term(e, coeffs[j]);
  }
  return p;
}

int SparsePoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

int SparsePoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(var)));
  return d;
}

GaussianRational SparsePoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void SparsePoly::add_term(const Exponents& e, const GaussianRational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent vector length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  SparsePoly r(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly result = constant(nvars_, 1);
  SparsePoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

GaussianRational SparsePoly::evaluate(const ExactVector& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
  // powers[i][p] = x_i^p, grown on demand
  std::vector<std::vector<GaussianRational>> powers(nvars_, std::vector<GaussianRational>{GaussianRational(1)});
  GaussianRational sum;
  for (const auto& [e, c] : terms_) {
    GaussianRational t = c;
    for (std::size_t i = 0; i < nvars_ && !t.is_zero(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * x[i]);
      t *= pw[e[i]];
    }
    sum += t;
  }
  return sum;
}

SparsePoly SparsePoly::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable");
  SparsePoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * GaussianRational(static_cast<long>(e[var])));
  }
  return r;
}

SparsePoly SparsePoly::homogeneous_part(std::uint32_t d) const {
  SparsePoly r(nvars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) r.terms_.emplace(e, c);
  return r;
}

SparsePoly SparsePoly::conj() const {
  SparsePoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.conj());
  return r;
}

SparsePoly SparsePoly::compose(const std::vector<SparsePoly>& subs) const {
  if (subs.size() != nvars_) throw std::invalid_argument("compose: need one substitution per variable");
  std::size_t m = subs.empty() ? 0 : subs.front().nvars();
  for (const auto& s : subs)
    if (s.nvars() != m) throw std::invalid_argument("compose: substitutions disagree on variable count");
  std::vector<std::vector<SparsePoly>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(constant(m, 1));
  SparsePoly result(m);
  for (const auto& [e, c] : terms_) {
    SparsePoly t = constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * subs[i]);
      t = t * pw[e[i]];
    }
    result += t;
  }
  return result;
}

SparsePoly SparsePoly::translate(const ExactVector& v) const {
  if (v.size() != nvars_) throw std::invalid_argument("translate: vector length mismatch");
  std::vector<SparsePoly> subs;
  subs.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) subs.push_back(variable(nvars_, i) + constant(nvars_, v[i]));
  return compose(subs);
}

SparsePoly SparsePoly::extend_vars(std::size_t nvars) const {
  if (nvars < nvars_) throw std::invalid_argument("extend_vars cannot drop variables");
  SparsePoly r(nvars);
  for (const auto& [e, c] : terms_) {
    Exponents x = e;
    x.resize(nvars, 0);
    r.terms_.emplace(std::move(x), c);
  }
  return r;
}

std::string SparsePoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = c.str();
    if (!c.is_real() && c.re() != 0) coef = "(" + coef + ")";
    std::string term;
    if (mono.empty()) {
      term = coef;
    } else if (c.is_one()) {
      term = mono;
    } else if (c == GaussianRational(-1)) {
      term = "-" + mono;
    } else {
      term = coef + "*" + mono;
    }
    if (!out.empty()) out += term.front() == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out;
}

std::optional<SparsePoly> divide_exact(const SparsePoly& f, const SparsePoly& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (f.nvars() != g.nvars()) throw std::invalid_argument("polynomial variable count mismatch");
  const auto& [lead_e, lead_c] = *g.terms().rbegin();
  SparsePoly rem = f;
  SparsePoly quot(f.nvars());
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().rbegin();
    Exponents q(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (re[i] < lead_e[i]) return std::nullopt;
      q[i] = re[i] - lead_e[i];
    }
    SparsePoly mono(f.nvars());
    mono.add_term(q, rc / lead_c);
    quot += mono;
    rem -= mono * g;
  }
  return quot;
}

}  // namespace lolab
