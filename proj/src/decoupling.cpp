#include "lolab/decoupling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "lolab/errors.hpp"
#include "lolab/matroid.hpp"
#include "lolab/parallel.hpp"

namespace lolab {

namespace {

constexpr std::size_t kScanChunks = 64;

mpz_class to_mpz(std::uint64_t v) { return mpz_class(std::to_string(v)); }

mpq_class pow_q(const mpq_class& x, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

// n^(-p) as a rational.
mpq_class neg_power(std::size_t n, const mpz_class& p) {
  if (!p.fits_slong_p()) throw std::invalid_argument("exponent numerator too large");
  long e = p.get_si();
  mpz_class base(std::to_string(n)), r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
  return e >= 0 ? mpq_class(mpz_class(1), r) : mpq_class(r);
}

unsigned long exponent_den(const mpq_class& e) {
  if (!e.get_den().fits_ulong_p()) throw std::invalid_argument("exponent denominator too large");
  return e.get_den().get_ui();
}

// x <= n^(-e)
bool at_most_power(const mpq_class& x, std::size_t n, const mpq_class& e) {
  if (x <= 0) return true;
  return pow_q(x, exponent_den(e)) <= neg_power(n, e.get_num());
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  mpq_class r(sqrt(q.get_num()), sqrt(q.get_den()));
  r.canonicalize();
  return r;
}

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
  const mpq_class& p = z.re();
  const mpq_class& q = z.im();
  if (sgn(q) == 0) {
    if (auto r = rational_sqrt(p)) return GaussianRational(*r, 0);
    if (auto r = rational_sqrt(-p)) return GaussianRational(0, *r);
    return std::nullopt;
  }
  auto modulus = rational_sqrt(p * p + q * q);
  if (!modulus) return std::nullopt;
  auto u = rational_sqrt((p + *modulus) / 2);
  if (!u || sgn(*u) == 0) return std::nullopt;
  return GaussianRational(*u, q / (2 * *u));
}

// Roots over Q(i) of a t^2 + b t + c with a != 0.
std::vector<GaussianRational> quadratic_roots(const GaussianRational& a, const GaussianRational& b,
                                              const GaussianRational& c) {
  auto s = gaussian_sqrt(b * b - GaussianRational(4) * a * c);
  if (!s) return {};
  GaussianRational two_a = GaussianRational(2) * a;
  std::vector<GaussianRational> out{(-b + *s) / two_a};
  if (!s->is_zero()) out.push_back((-b - *s) / two_a);
  return out;
}

SparsePoly normalized(const SparsePoly& f) {
  return f * (GaussianRational(1) / f.terms().rbegin()->second);
}

// coefficient of y^e in g(y, gamma) as a univariate list in gamma (index = power).
std::vector<GaussianRational> coeffs_in_gamma(const SparsePoly& g, std::uint32_t e) {
  std::vector<GaussianRational> out;
  for (const auto& [ex, c] : g.terms())
    if (ex[0] == e) {
      if (out.size() <= ex[1]) out.resize(ex[1] + 1);
      out[ex[1]] += c;
    }
  return out;
}

GaussianRational eval_uni(const std::vector<GaussianRational>& c, const GaussianRational& x) {
  GaussianRational acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// All roots over Q(i) of a univariate polynomial of degree <= 2; nullopt when it is identically zero.
std::optional<std::vector<GaussianRational>> small_roots(std::vector<GaussianRational> c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.empty()) return std::nullopt;
  if (c.size() == 1) return std::vector<GaussianRational>{};
  if (c.size() == 2) return std::vector<GaussianRational>{-c[0] / c[1]};
  if (c.size() == 3) return quadratic_roots(c[2], c[1], c[0]);
  throw std::logic_error("small_roots: degree above 2");
}

// Every linear factor over Q(i) of a plane quadric (degree exactly 2).
std::vector<SparsePoly> quadric_lines(const SparsePoly& f) {
  const GaussianRational a = f.coefficient({2, 0}), b = f.coefficient({1, 1}), c = f.coefficient({0, 2});
  // Directions: linear forms alpha x + beta y dividing the quadratic part.
  std::vector<std::pair<GaussianRational, GaussianRational>> forms;
  if (!a.is_zero()) {
    for (const auto& t : quadratic_roots(a, b, c)) forms.emplace_back(GaussianRational(1), -t);
  } else {
    forms.emplace_back(GaussianRational(0), GaussianRational(1));
    if (!b.is_zero()) forms.emplace_back(b, c);
    else forms.emplace_back(GaussianRational(0), GaussianRational(1));
  }
  std::vector<SparsePoly> lines;
  const SparsePoly y = SparsePoly::variable(2, 0), gamma = SparsePoly::variable(2, 1);
  for (const auto& [alpha, beta] : forms) {
    // Line alpha x + beta y + gamma = 0 parametrized by the free variable; variables of g are (free, gamma).
    SparsePoly g;
    if (!alpha.is_zero()) {
      SparsePoly xs = (y * (-beta / alpha)) - gamma * (GaussianRational(1) / alpha);
      g = f.compose({xs, y});
    } else {
      SparsePoly ys = gamma * (GaussianRational(-1) / beta);
      g = f.compose({y, ys});
    }
    std::vector<GaussianRational> gammas;
    auto lin = coeffs_in_gamma(g, 1);
    auto cst = coeffs_in_gamma(g, 0);
    auto r1 = small_roots(lin);
    if (!r1) {
      if (auto r0 = small_roots(cst)) gammas = *r0;
    } else {
      for (const auto& r : *r1)
        if (eval_uni(cst, r).is_zero()) gammas.push_back(r);
    }
    for (const auto& gm : gammas) {
      SparsePoly line = SparsePoly::linear_form({alpha, beta}) + SparsePoly::constant(2, gm);
      line = normalized(line);
      if (divide_exact(f, line) && std::find(lines.begin(), lines.end(), line) == lines.end()) lines.push_back(line);
    }
  }
  return lines;
}

std::vector<mpq_class> low_height_values() {
  std::set<mpq_class> vals;
  for (long q = 1; q <= 2; ++q)
    for (long p = -6 * q; p <= 6 * q; ++p) {
      mpq_class v(p, q);
      v.canonicalize();
      vals.insert(v);
    }
  return {vals.begin(), vals.end()};
}

// Splits off linear factors found through rational points, then finishes exactly when the rest has degree <= 2.
PlaneCurveLines analyse_factor(const SparsePoly& f) {
  PlaneCurveLines out;
  if (f.nvars() != 2) throw std::invalid_argument("plane curve needs two variables");
  if (f.degree() > 4) throw PreconditionError("lines_in_plane_curve supports degree <= 4");
  SparsePoly rest = f;
  auto add = [&](const SparsePoly& line) {
    if (std::find(out.lines.begin(), out.lines.end(), line) == out.lines.end()) out.lines.push_back(line);
  };
  if (rest.degree() >= 3) {
    std::vector<ExactVector> pts;
    auto vals = low_height_values();
    for (const auto& x : vals)
      for (const auto& y : vals) {
        ExactVector p{GaussianRational(x), GaussianRational(y)};
        if (f.evaluate(p).is_zero()) pts.push_back(p);
        if (pts.size() >= 48) break;
      }
    for (std::size_t i = 0; i < pts.size() && rest.degree() >= 3; ++i)
      for (std::size_t j = i + 1; j < pts.size() && rest.degree() >= 3; ++j) {
        const auto& p = pts[i];
        const auto& q = pts[j];
        ExactVector coeffs{q[1] - p[1], p[0] - q[0]};
        SparsePoly line = SparsePoly::linear_form(coeffs) + SparsePoly::constant(2, -dot(coeffs, p));
        line = normalized(line);
        while (rest.degree() >= 1) {
          auto quotient = divide_exact(rest, line);
          if (!quotient) break;
          add(line);
          rest = *quotient;
        }
      }
  }
  if (rest.degree() <= 0) {
    out.complete = true;
  } else if (rest.degree() == 1) {
    add(normalized(rest));
    out.complete = true;
  } else if (rest.degree() == 2) {
    for (const auto& l : quadric_lines(rest)) add(l);
    out.complete = true;
  }
  return out;
}

ExactVector line_direction(const SparsePoly& line) {
  GaussianRational a = line.coefficient({1, 0}), b = line.coefficient({0, 1});
  return {-b, a};
}

}  // namespace

void Partition::validate(std::size_t n) const {
  std::vector<bool> seen(n, false);
  std::size_t total = 0;
  for (const auto& b : blocks)
    for (auto i : b) {
      if (i >= n) throw std::invalid_argument("partition index " + std::to_string(i) + " out of range");
      if (seen[i]) throw std::invalid_argument("partition index " + std::to_string(i) + " repeated");
      seen[i] = true;
      ++total;
    }
  if (total != n) throw std::invalid_argument("partition does not cover every index");
}

bool at_least_power(const mpq_class& x, std::size_t n, const mpq_class& e) {
  if (x <= 0) return false;
  return pow_q(x, exponent_den(e)) >= neg_power(n, e.get_num());
}

std::string to_string(Completeness c) { return c == Completeness::Verified ? "verified" : "bound-with-caveat"; }

DecouplingResult decoupling_check(const VectorSequence& a, const IndexSet& i0, const MembershipSet& s,
                                  const ExactVector& x, const ExecConfig& cfg) {
  std::vector<bool> in0(a.size(), false);
  for (auto i : i0) {
    if (i >= a.size() || in0[i]) throw std::invalid_argument("I0 must be distinct indices in range");
    in0[i] = true;
  }
  IndexSet rest;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!in0[i]) rest.push_back(i);
  const auto dx = SumDistribution::compute(a.subsequence(i0), cfg);
  const auto dy = SumDistribution::compute(a.subsequence(rest), cfg);
  const MembershipSet target = s.translated(-x);
  const auto* finite = std::get_if<FinitePointSet>(&target.value());
  std::vector<ExactVector> finite_pts;
  if (finite) {
    std::set<ExactVector> u(finite->points.begin(), finite->points.end());
    finite_pts.assign(u.begin(), u.end());
  }
  const double work = static_cast<double>(dy.support_size()) *
                      static_cast<double>(finite ? finite_pts.size() : dx.support_size());
  if (work > static_cast<double>(cfg.max_pair_work))
    throw BudgetExceeded("decoupling_check: pair scan exceeds the pair-work limit");

  std::vector<ExactVector> xs;
  if (!finite)
    for (std::size_t i = 0; i < dx.support_size(); ++i) xs.push_back(dx.point(i));

  const std::size_t size = dy.support_size();
  const std::size_t chunks = std::min(size, kScanChunks);
  std::vector<mpz_class> first(chunks), second(chunks);
  parallel_chunks(size, chunks, cfg.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const ExactVector y = dy.point(j);
      std::uint64_t q = 0;  // numerator of q_Y over 2^|I0|
      if (finite) {
        for (const auto& t : finite_pts) q += dx.numerator(t - y);
      } else {
        for (std::size_t i = 0; i < xs.size(); ++i)
          if (target.contains(xs[i] + y)) q += dx.numerator_at(i);
      }
      mpz_class m = to_mpz(dy.numerator_at(j)), qz = to_mpz(q);
      first[c] += m * qz;
      second[c] += m * qz * qz;
    }
  });
  mpz_class e1 = 0, e2 = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    e1 += first[c];
    e2 += second[c];
  }
  DecouplingResult r;
  mpz_class den1 = 1, den2 = 1;
  den1 <<= static_cast<mp_bitcnt_t>(dx.n() + dy.n());
  den2 <<= static_cast<mp_bitcnt_t>(2 * dx.n() + dy.n());
  r.event = mpq_class(e1, den1);
  r.event.canonicalize();
  r.lhs = r.event * r.event;
  r.rhs = mpq_class(e2, den2);
  r.rhs.canonicalize();
  r.pass = r.lhs <= r.rhs;
  return r;
}

PlaneCurveLines lines_in_plane_curve(const SparsePoly& f) {
  if (f.is_zero()) throw std::invalid_argument("the zero polynomial does not define a curve");
  return analyse_factor(f);
}

PlaneCurveLines lines_in_plane_curve(const std::vector<SparsePoly>& factors) {
  PlaneCurveLines out;
  out.complete = true;
  for (const auto& f : factors) {
    if (f.is_zero()) throw std::invalid_argument("the zero polynomial does not define a curve");
    auto part = analyse_factor(f);
    out.complete = out.complete && part.complete;
    for (const auto& l : part.lines)
      if (std::find(out.lines.begin(), out.lines.end(), l) == out.lines.end()) out.lines.push_back(l);
  }
  return out;
}

IteratedDecouplingResult iterated_decoupling_bound(const VectorSequence& a, const Partition& partition,
                                                   const Variety& s, const std::vector<ExactVector>& translates,
                                                   const std::vector<std::vector<ExactVector>>& subspaces,
                                                   bool declared_complete, const ExecConfig& cfg) {
  if (!s.declared_dim || !s.declared_deg) throw PreconditionError("variety needs declared dimension and degree");
  const int l = *s.declared_dim;
  const int d = *s.declared_deg;
  if (l < 0 || d < 1) throw PreconditionError("declared dimension must be >= 0 and degree >= 1");
  if (partition.blocks.size() != static_cast<std::size_t>(l) + 1)
    throw PreconditionError("partition needs dimension + 1 blocks");
  if (l > 20) throw BudgetExceeded("dimension too large for the exact comparison");
  partition.validate(a.size());

  IteratedDecouplingResult r;
  auto dist = SumDistribution::compute(a, cfg);
  auto best = rho_translate_lower_bound(dist, MembershipSet(s), translates, cfg);
  r.lhs = best.probability;
  r.best_shift = best.shift;

  std::vector<std::vector<ExactVector>> candidates{{}};
  for (const auto& v : subspaces) candidates.push_back(span_basis(v, a.k()));
  r.rho_max = 0;
  for (const auto& block : partition.blocks) {
    VectorSequence ai = a.subsequence(block);
    for (const auto& v : candidates) r.rho_max = std::max(r.rho_max, rho_subspace(ai, v, cfg));
  }
  const double scale = static_cast<double>((l + 1) * d);
  r.rhs = scale * std::pow(r.rho_max.get_d(), std::ldexp(1.0, -l));
  mpq_class ratio = r.lhs / mpq_class((l + 1) * d);
  r.pass = pow_q(ratio, 1ul << l) <= r.rho_max;

  bool complete = declared_complete || l == 0;
  if (!complete && a.k() == 2 && l == 1 && s.polys.size() == 1) {
    auto lines = lines_in_plane_curve(s.polys[0]);
    if (lines.complete) {
      complete = std::all_of(lines.lines.begin(), lines.lines.end(), [&](const SparsePoly& line) {
        auto dir = span_basis({line_direction(line)}, 2);
        return std::find(candidates.begin(), candidates.end(), dir) != candidates.end();
      });
    }
  }
  r.status = complete ? Completeness::Verified : Completeness::BoundWithCaveat;
  return r;
}

StructureReport structure_certificate_check(const VectorSequence& a, const StructureCertificate& cert,
                                            const Variety& s, const ExecConfig& cfg) {
  const std::size_t k = a.k();
  const std::size_t n = a.size();
  if (s.k != k) throw std::invalid_argument("variety dimension does not match the vectors");
  for (const auto& v : cert.u_basis)
    if (v.size() != k) throw PreconditionError("U basis vector has the wrong dimension");
  for (const auto& v : cert.w_basis)
    if (v.size() != k) throw PreconditionError("W basis vector has the wrong dimension");
  if (rank(ExactMatrix::from_rows(cert.u_basis, k)) != cert.u_basis.size())
    throw PreconditionError("U basis is not linearly independent");
  if (rank(ExactMatrix::from_rows(cert.w_basis, k)) != cert.w_basis.size())
    throw PreconditionError("W basis is not linearly independent");
  if (cert.u_basis.size() + cert.w_basis.size() != k) throw PreconditionError("dim U + dim W != k");
  std::vector<ExactVector> all = cert.u_basis;
  all.insert(all.end(), cert.w_basis.begin(), cert.w_basis.end());
  auto change = inverse(ExactMatrix::from_columns(all, k));
  if (!change) throw PreconditionError("U and W intersect nontrivially");
  const std::size_t dim_w = cert.w_basis.size();
  if (cert.s_prime.k != dim_w) throw PreconditionError("S' must be given in W coordinates");
  // Rows of the inverse belonging to W give pi_W in W coordinates.
  ExactMatrix pw(dim_w, k);
  for (std::size_t i = 0; i < dim_w; ++i)
    for (std::size_t j = 0; j < k; ++j) pw(i, j) = (*change)(cert.u_basis.size() + i, j);
  for (auto i : cert.surviving)
    if (i >= n) throw PreconditionError("surviving index out of range");

  StructureReport rep;
  VectorSequence ap = a.subsequence(cert.surviving);

  rep.packing = k == 0 ? 0 : basis_packing_number(ap, cfg).b;
  mpz_class power = 1;
  for (std::size_t i = 0; i < k; ++i) power *= 2 * static_cast<long>(k);
  rep.packing_threshold = cert.delta / mpq_class(2 * power) * mpq_class(static_cast<long>(n));
  rep.packing_threshold.canonicalize();
  rep.condition1 = mpq_class(static_cast<long>(rep.packing)) >= rep.packing_threshold;

  rep.rho_projected = rho(ap.mapped(pw), cfg);
  rep.condition2 = at_least_power(rep.rho_projected, n, cert.c);

  Variety preimage = cert.s_prime.pullback(pw, zero_vector(dim_w));
  bool symbolic = false;
  if (s.polys.size() == 1 && preimage.polys.size() == 1 && !preimage.polys[0].is_zero())
    symbolic = divide_exact(s.polys[0], preimage.polys[0]).has_value();
  if (symbolic) {
    rep.containment = "symbolic";
    rep.condition3a = true;
  } else {
    rep.containment = "sampled";
    rep.condition3a = std::all_of(cert.witness.begin(), cert.witness.end(),
                                  [&](const ExactVector& p) { return preimage.contains(p) && s.contains(p); });
  }

  auto dist = SumDistribution::compute(ap, cfg);
  std::vector<ExactVector> shifts = cert.translates;
  if (shifts.empty()) shifts.push_back(zero_vector(k));
  rep.escape = 0;
  for (const auto& x : shifts) {
    std::uint64_t mass = 0;
    for (std::size_t i = 0; i < dist.support_size(); ++i) {
      ExactVector y = dist.point(i) - x;
      if (s.contains(y) && !preimage.contains(y)) mass += dist.numerator_at(i);
    }
    rep.escape = std::max(rep.escape, dyadic(mass, dist.n()));
  }
  rep.condition3b = at_most_power(rep.escape, n, cert.c1);
  rep.pass = rep.condition1 && rep.condition2 && rep.condition3a && rep.condition3b;
  return rep;
}

HalaszResult halasz_check(const VectorSequence& a, const Partition& partition, const ExecConfig& cfg) {
  if (!a.is_real()) throw PreconditionError("halasz_check needs real vectors");
  const std::size_t s = partition.blocks.size();
  if (s == 0 || s % 2 != 0) throw PreconditionError("halasz_check needs an even number of blocks");
  partition.validate(a.size());
  HalaszResult r;
  long ranks = 0;
  for (const auto& b : partition.blocks) {
    std::vector<ExactVector> rows;
    for (auto i : b) rows.push_back(a[i]);
    ranks += static_cast<long>(rank(ExactMatrix::from_rows(rows, a.k())));
  }
  r.t = mpq_class(ranks, static_cast<long>(s));
  r.t.canonicalize();
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), s, s / 2);
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(s);
  r.base = mpq_class(binom, den);
  r.base.canonicalize();
  r.bound = std::pow(r.base.get_d(), r.t.get_d());
  r.rho = rho(a, cfg);
  const unsigned long p = r.t.get_num().get_ui(), q = r.t.get_den().get_ui();
  mpq_class lhs = pow_q(r.rho, q), rhs = pow_q(r.base, p);
  r.pass = lhs <= rhs;
  r.equality = lhs == rhs;
  return r;
}

}  // namespace lolab
