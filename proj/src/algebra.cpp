#include "lolab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lolab/errors.hpp"

namespace lolab {

// ---- VectorSequence --------------------------------------------------------

VectorSequence::VectorSequence(std::size_t k, std::vector<ExactVector> vectors) : k_(k), vectors_(std::move(vectors)) {
  for (std::size_t i = 0; i < vectors_.size(); ++i)
    if (vectors_[i].size() != k_)
      throw std::invalid_argument("vector " + std::to_string(i) + " has length " + std::to_string(vectors_[i].size()) +
                                  ", expected " + std::to_string(k_));
}

VectorSequence VectorSequence::copies(const ExactVector& v, std::size_t n) {
  return VectorSequence(v.size(), std::vector<ExactVector>(n, v));
}

VectorSequence VectorSequence::subsequence(const std::vector<std::size_t>& indices) const {
  std::vector<ExactVector> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(vectors_.at(i));
  return VectorSequence(k_, std::move(out));
}

VectorSequence VectorSequence::mapped(const ExactMatrix& m) const {
  if (m.cols() != k_) throw std::invalid_argument("map does not match ambient dimension");
  std::vector<ExactVector> out;
  out.reserve(vectors_.size());
  for (const auto& v : vectors_) out.push_back(m * v);
  return VectorSequence(m.rows(), std::move(out));
}

VectorSequence VectorSequence::concat(const VectorSequence& other) const {
  if (other.k_ != k_ && !other.empty() && !empty()) throw std::invalid_argument("ambient dimension mismatch");
  std::vector<ExactVector> out = vectors_;
  out.insert(out.end(), other.vectors_.begin(), other.vectors_.end());
  return VectorSequence(empty() ? other.k_ : k_, std::move(out));
}

bool VectorSequence::is_real() const {
  return std::all_of(vectors_.begin(), vectors_.end(), [](const ExactVector& v) { return lolab::is_real(v); });
}

// ---- Variety ---------------------------------------------------------------

Variety Variety::hypersurface(const SparsePoly& f, std::optional<int> dim, std::optional<int> deg) {
  return Variety{f.nvars(), {f}, dim, deg};
}

bool Variety::contains(const ExactVector& x) const {
  if (x.size() != k) throw std::invalid_argument("point dimension does not match variety");
  for (const auto& p : polys)
    if (!p.evaluate(x).is_zero()) return false;
  return true;
}

bool Variety::is_whole_space() const {
  return std::all_of(polys.begin(), polys.end(), [](const SparsePoly& p) { return p.is_zero(); });
}

Variety Variety::pullback(const ExactMatrix& m, const ExactVector& shift) const {
  if (m.rows() != k || shift.size() != k) throw std::invalid_argument("pullback map does not land in F^k");
  std::vector<SparsePoly> subs;
  for (std::size_t i = 0; i < k; ++i)
    subs.push_back(SparsePoly::linear_form(m.row(i)) + SparsePoly::constant(m.cols(), shift[i]));
  Variety out{m.cols(), {}, {}, {}};
  for (const auto& p : polys) out.polys.push_back(p.compose(subs));
  return out;
}

// ---- Chow representations --------------------------------------------------

void ChowRepresentation::validate() const {
  if (forms.size() != k) throw std::invalid_argument("Chow representation needs exactly k linear forms");
  for (const auto& f : forms)
    if (f.size() != n) throw std::invalid_argument("linear form length must equal n");
  if (outer.nvars() != k) throw std::invalid_argument("outer polynomial must have k variables");
}

SparsePoly expand_chow(const ChowRepresentation& r, std::size_t max_terms) {
  r.validate();
  std::vector<SparsePoly> forms;
  for (const auto& f : r.forms) forms.push_back(SparsePoly::linear_form(f));
  if (r.k == 0) return SparsePoly::constant(r.n, r.outer.coefficient({}));
  // Each L_i has at most n terms; a degree-d monomial in them at most C(n+d-1, d).
  double estimate = 0;
  for (const auto& [e, c] : r.outer.terms()) {
    double t = 1;
    auto d = total_degree(e);
    for (std::uint32_t j = 1; j <= d; ++j) t = t * static_cast<double>(r.n + j - 1) / j;
    estimate += t;
  }
  if (estimate > static_cast<double>(max_terms))
    throw BudgetExceeded("expand_chow: expansion may exceed " + std::to_string(max_terms) + " terms");
  return r.outer.compose(forms);
}

VectorReduction reduction_to_vectors(const ChowRepresentation& r) {
  r.validate();
  std::vector<ExactVector> columns(r.n, ExactVector(r.k));
  for (std::size_t i = 0; i < r.k; ++i)
    for (std::size_t j = 0; j < r.n; ++j) columns[j][i] = r.forms[i][j];
  return {VectorSequence(r.k, std::move(columns)), Variety::hypersurface(r.outer)};
}

// ---- substitution and robustness -------------------------------------------

SparsePoly substitute_pm1(const SparsePoly& f, const SignAssignment& assignment) {
  std::vector<int> sign(f.nvars(), 0);
  for (const auto& [var, s] : assignment) {
    if (var >= f.nvars()) throw std::out_of_range("substitution variable out of range");
    if (s != 1 && s != -1) throw std::invalid_argument("substitution values must be +1 or -1");
    if (sign[var] != 0) throw PreconditionError("substitution assigns a variable twice");
    sign[var] = s;
  }
  SparsePoly out(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    Exponents reduced = e;
    bool negate = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (sign[i] == 0) continue;
      if (sign[i] < 0 && (e[i] & 1u)) negate = !negate;
      reduced[i] = 0;
    }
    out.add_term(reduced, negate ? -c : c);
  }
  return out;
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return r;
}

}  // namespace

RobustnessReport robust_dependence_check(const SparsePoly& f, std::size_t b, std::uint64_t max_substitutions) {
  const std::size_t n = f.nvars();
  double work = 0;
  for (std::size_t j = 0; j < b && j <= n; ++j) work += binomial(n, j) * std::ldexp(1.0, static_cast<int>(j));
  if (work > static_cast<double>(max_substitutions))
    throw BudgetExceeded("robust_dependence_check: " + std::to_string(static_cast<unsigned long long>(work)) +
                         " substitutions exceed the budget");

  RobustnessReport report;
  for (std::size_t size = 0; size < b && size <= n; ++size) {
    std::vector<std::size_t> subset(size);
    for (std::size_t i = 0; i < size; ++i) subset[i] = i;
    while (true) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
        SignAssignment a;
        for (std::size_t i = 0; i < size; ++i) a.emplace_back(subset[i], (mask >> i) & 1u ? -1 : 1);
        ++report.substitutions_checked;
        if (substitute_pm1(f, a).is_zero()) {
          report.robust = false;
          report.zeroing_assignment = std::move(a);
          return report;
        }
      }
      // next combination in lexicographic order
      std::size_t i = size;
      while (i > 0 && subset[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < size; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return report;
}

// ---- invariance subspace ---------------------------------------------------

std::vector<ExactVector> invariance_subspace(const SparsePoly& f) {
  const std::size_t k = f.nvars();
  std::vector<SparsePoly> partials;
  std::map<Exponents, std::size_t, GradedLex> monomials;
  for (std::size_t i = 0; i < k; ++i) {
    partials.push_back(f.derivative(i));
    for (const auto& [e, c] : partials.back().terms()) monomials.try_emplace(e, monomials.size());
  }
  // Row per monomial, column per partial derivative: M v = 0 iff sum v_i df/dx_i == 0.
  ExactMatrix m(monomials.size(), k);
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& [e, c] : partials[i].terms()) m(monomials.at(e), i) = c;
  auto basis = kernel_basis(m);
  for (const auto& v : basis)
    if (!(f.translate(v) - f).is_zero()) throw std::logic_error("invariance_subspace: translation check failed");
  return basis;
}

// ---- quadrics --------------------------------------------------------------

QuadricReport quadric_reducibility(const SparsePoly& f) {
  if (f.degree() != 2) throw PreconditionError("quadric_reducibility needs a degree-2 polynomial");
  const std::size_t k = f.nvars();
  ExactMatrix s(k + 1, k + 1);
  const GaussianRational half(1, 2);
  for (const auto& [e, c] : f.terms()) {
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < k; ++i)
      for (std::uint32_t p = 0; p < e[i]; ++p) vars.push_back(i);
    // Homogenizing variable has index k.
    while (vars.size() < 2) vars.push_back(k);
    if (vars[0] == vars[1]) {
      s(vars[0], vars[0]) += c;
    } else {
      s(vars[0], vars[1]) += c * half;
      s(vars[1], vars[0]) += c * half;
    }
  }
  std::size_t r = rank(s);
  return {r <= 2 ? QuadricType::Reducible : QuadricType::Irreducible, r, std::move(s)};
}

// ---- Galois pair -----------------------------------------------------------

Variety galois_pair_variety(const SparsePoly& f) {
  if (f.is_zero()) throw PreconditionError("galois_pair_variety: zero polynomial");
  SparsePoly g = f * (GaussianRational(1) / f.terms().rbegin()->second);
  bool has_imaginary = std::any_of(g.terms().begin(), g.terms().end(), [](const auto& t) { return !t.second.is_real(); });
  if (!has_imaginary)
    throw PreconditionError("galois_pair_variety: polynomial is proportional to one with rational coefficients");
  Variety t{f.nvars(), {g, g.conj()}, {}, {}};
  if (f.degree() >= 0) t.declared_deg = f.degree() * f.degree();
  t.declared_dim = static_cast<int>(f.nvars()) - 2;
  return t;
}

std::size_t nonzero_coefficient_count(const SparsePoly& f, std::optional<std::uint32_t> degree) {
  if (!degree) return f.term_count();
  return static_cast<std::size_t>(std::count_if(f.terms().begin(), f.terms().end(),
                                                [&](const auto& t) { return total_degree(t.first) == *degree; }));
}

}  // namespace lolab
