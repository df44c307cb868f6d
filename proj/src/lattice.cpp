#include "lolab/lattice.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>
#include <string>

#include "lolab/errors.hpp"
#include "lolab/parallel.hpp"

namespace lolab {

namespace {

using i128 = __int128;
constexpr std::size_t kSlabChunks = 64;

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

i128 to_i128(const mpz_class& z) {
  mpz_class a = abs(z);
  mpz_class hi = a >> 64;
  mpz_class lo = a - (hi << 64);
  i128 r = (static_cast<i128>(hi.get_ui()) << 64) | static_cast<i128>(lo.get_ui());
  return sgn(z) < 0 ? -r : r;
}

std::uint64_t box_size(std::int64_t bound, std::size_t dims, const ExecConfig& cfg, const char* what) {
  mpz_class total = 1;
  for (std::size_t i = 0; i < dims; ++i) total *= 2 * bound + 1;
  if (total > mpz_class(std::to_string(cfg.max_enumeration)))
    throw BudgetExceeded(std::string(what) + ": box of " + total.get_str() + " points exceeds the enumeration limit");
  return std::stoull(total.get_str());
}

// Fills x[first..] from a flat index over [-B, B]^(k - first), last coordinate fastest.
void decode_point(std::uint64_t index, std::int64_t bound, std::vector<std::int64_t>& x, std::size_t first,
                  std::size_t skip = static_cast<std::size_t>(-1)) {
  const auto base = static_cast<std::uint64_t>(2 * bound + 1);
  for (std::size_t i = x.size(); i-- > first;) {
    if (i == skip) continue;
    x[i] = static_cast<std::int64_t>(index % base) - bound;
    index /= base;
  }
}

// A defining polynomial scaled to Gaussian-integer coefficients, evaluated at
// integer points in 128-bit arithmetic when the box bound makes that safe.
class IntegerPoly {
 public:
  IntegerPoly(const SparsePoly& p, std::int64_t bound) {
    mpz_class den = 1;
    for (const auto& [e, c] : p.terms()) den = lcm(den, lcm_denominator(c));
    mpz_class magnitude = 0;
    for (const auto& [e, c] : p.terms()) {
      Term t;
      mpq_class re = c.re() * den, im = c.im() * den;
      t.re = re.get_num();
      t.im = im.get_num();
      mpz_class scale = abs(t.re) + abs(t.im);
      for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v]) {
          t.vars.emplace_back(v, e[v]);
          for (std::uint32_t j = 0; j < e[v]; ++j) scale *= std::max<std::int64_t>(bound, 1);
        }
      magnitude += scale;
      terms_.push_back(std::move(t));
    }
    mpz_class limit = 1;
    limit <<= 125;
    fast_ = magnitude < limit;
    if (fast_)
      for (auto& t : terms_) {
        t.re128 = to_i128(t.re);
        t.im128 = to_i128(t.im);
      }
  }

  bool fast() const { return fast_; }
  bool is_constant_nonzero() const { return terms_.size() == 1 && terms_[0].vars.empty(); }

  void eval(const std::int64_t* x, i128& re, i128& im) const {
    re = 0;
    im = 0;
    for (const auto& t : terms_) {
      i128 m = 1;
      for (const auto& [v, e] : t.vars)
        for (std::uint32_t j = 0; j < e; ++j) m *= x[v];
      re += t.re128 * m;
      im += t.im128 * m;
    }
  }

  void eval(const std::int64_t* x, mpz_class& re, mpz_class& im) const {
    re = 0;
    im = 0;
    mpz_class m;
    for (const auto& t : terms_) {
      m = 1;
      for (const auto& [v, e] : t.vars)
        for (std::uint32_t j = 0; j < e; ++j) m *= static_cast<long>(x[v]);
      re += t.re * m;
      im += t.im * m;
    }
  }

  bool vanishes(const std::int64_t* x) const {
    if (fast_) {
      i128 re, im;
      eval(x, re, im);
      return re == 0 && im == 0;
    }
    mpz_class re, im;
    eval(x, re, im);
    return sgn(re) == 0 && sgn(im) == 0;
  }

 private:
  struct Term {
    std::vector<std::pair<std::size_t, std::uint32_t>> vars;
    mpz_class re, im;
    i128 re128 = 0, im128 = 0;
  };
  std::vector<Term> terms_;
  bool fast_ = false;
};

std::vector<IntegerPoly> compile(const Variety& v, std::int64_t bound) {
  std::vector<IntegerPoly> out;
  for (const auto& p : v.polys)
    if (!p.is_zero()) out.emplace_back(p, bound);
  return out;
}

bool all_vanish(const std::vector<IntegerPoly>& polys, const std::int64_t* x) {
  for (const auto& p : polys)
    if (!p.vanishes(x)) return false;
  return true;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t count_variety_rows(const Variety& v, std::int64_t bound, const ExecConfig& cfg,
                                 std::uint64_t& scanned) {
  const std::size_t k = v.k;
  auto polys = compile(v, bound);
  const std::uint64_t total = box_size(bound, k, cfg, "count_lattice_points");
  scanned = total;
  if (k == 0) return all_vanish(polys, nullptr) ? 1 : 0;
  for (const auto& p : polys)
    if (p.is_constant_nonzero()) return 0;
  if (polys.empty()) return total;
  const auto slabs = static_cast<std::size_t>(2 * bound + 1);
  const std::uint64_t per_slab = total / slabs;
  std::vector<std::uint64_t> partial(std::min(slabs, kSlabChunks), 0);
  parallel_chunks(slabs, partial.size(), cfg.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> x(k);
    for (std::size_t s = begin; s < end; ++s) {
      x[0] = static_cast<std::int64_t>(s) - bound;
      for (std::uint64_t i = 0; i < per_slab; ++i) {
        decode_point(i, bound, x, 1);
        if (all_vanish(polys, x.data())) ++partial[c];
      }
    }
  });
  std::uint64_t count = 0;
  for (auto p : partial) count += p;
  return count;
}

bool integer_point_in_box(const ExactVector& p, std::int64_t bound) {
  for (const auto& c : p)
    if (!c.is_real() || c.re().get_den() != 1 || abs(c.re()) > bound) return false;
  return true;
}

// Integer roots in [-B, B] of sum coeffs[e] x^e (coefficients not all zero).
void integer_roots(const std::vector<mpz_class>& coeffs, std::int64_t bound, std::vector<std::int64_t>& out) {
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && sgn(coeffs[deg]) == 0) --deg;
  if (deg == 0) return;
  auto push = [&](const mpz_class& r) {
    if (abs(r) <= bound) out.push_back(r.get_si());
  };
  if (deg == 1) {
    if (mpz_divisible_p(coeffs[0].get_mpz_t(), coeffs[1].get_mpz_t())) push(mpz_class(-coeffs[0] / coeffs[1]));
    return;
  }
  if (deg == 2) {
    mpz_class disc = coeffs[1] * coeffs[1] - 4 * coeffs[2] * coeffs[0];
    if (sgn(disc) < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) return;
    mpz_class s = sqrt(disc), den = 2 * coeffs[2];
    for (const mpz_class& num : {mpz_class(-coeffs[1] + s), mpz_class(-coeffs[1] - s)})
      if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) push(mpz_class(num / den));
    if (sgn(s) == 0 && out.size() >= 2 && out[out.size() - 1] == out[out.size() - 2]) out.pop_back();
    return;
  }
  // Nonzero integer roots divide the lowest nonzero coefficient.
  std::size_t low = 0;
  while (sgn(coeffs[low]) == 0) ++low;
  if (low > 0) out.push_back(0);
  mpz_class trailing = abs(coeffs[low]);
  auto is_root = [&](std::int64_t x) {
    mpz_class acc = 0;
    for (std::size_t e = deg + 1; e-- > 0;) acc = acc * static_cast<long>(x) + coeffs[e];
    return sgn(acc) == 0;
  };
  const std::int64_t limit = trailing.fits_slong_p() ? std::min<std::int64_t>(bound, trailing.get_si()) : bound;
  for (std::int64_t d = 1; d <= limit; ++d) {
    if (!mpz_divisible_ui_p(trailing.get_mpz_t(), static_cast<unsigned long>(d))) continue;
    if (is_root(d)) out.push_back(d);
    if (is_root(-d)) out.push_back(-d);
  }
}

}  // namespace

CountReport count_lattice_points(const MembershipSet& s, std::int64_t bound, const ExecConfig& cfg) {
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  auto start = std::chrono::steady_clock::now();
  CountReport rep;
  rep.bound = bound;
  if (const auto* f = std::get_if<FinitePointSet>(&s.value())) {
    std::set<ExactVector> hits;
    for (const auto& p : f->points)
      if (integer_point_in_box(p, bound)) hits.insert(p);
    rep.count = hits.size();
    rep.points_scanned = f->points.size();
    rep.strategy = "points";
  } else if (const auto* v = std::get_if<Variety>(&s.value())) {
    rep.count = count_variety_rows(*v, bound, cfg, rep.points_scanned);
    rep.strategy = "row-major";
  } else {
    const std::size_t k = s.k();
    const std::uint64_t total = box_size(bound, k, cfg, "count_lattice_points");
    std::vector<std::uint64_t> partial(kSlabChunks, 0);
    parallel_chunks(total, kSlabChunks, cfg.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
      std::vector<std::int64_t> x(k);
      ExactVector ex(k);
      for (std::size_t i = begin; i < end; ++i) {
        decode_point(i, bound, x, 0);
        for (std::size_t j = 0; j < k; ++j) ex[j] = GaussianRational(static_cast<long>(x[j]));
        if (s.contains(ex)) ++partial[c];
      }
    });
    for (auto p : partial) rep.count += p;
    rep.points_scanned = total;
    rep.strategy = "row-major";
  }
  rep.seconds = elapsed(start);
  return rep;
}

std::optional<CountReport> count_lattice_points_solved(const Variety& v, std::int64_t bound, const ExecConfig& cfg) {
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  auto start = std::chrono::steady_clock::now();
  const std::size_t k = v.k;
  // Choose the (polynomial, variable) pair of least positive degree.
  std::size_t best_poly = 0, best_var = 0;
  int best_deg = -1;
  for (std::size_t i = 0; i < v.polys.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) {
      int d = v.polys[i].degree_in(j);
      if (d >= 1 && (best_deg < 0 || d < best_deg)) {
        best_deg = d;
        best_poly = i;
        best_var = j;
      }
    }
  if (best_deg < 0) return std::nullopt;

  const SparsePoly& f = v.polys[best_poly];
  std::vector<SparsePoly> parts(static_cast<std::size_t>(best_deg) + 1, SparsePoly(k));
  for (const auto& [e, c] : f.terms()) {
    Exponents rest = e;
    rest[best_var] = 0;
    parts[e[best_var]].add_term(rest, c);
  }
  // Common scaling keeps the coefficient polynomials consistent with each other.
  mpz_class den = 1;
  for (const auto& [e, c] : f.terms()) den = lcm(den, lcm_denominator(c));
  std::vector<IntegerPoly> coeff_polys;
  for (auto& p : parts) coeff_polys.emplace_back(p * GaussianRational(mpq_class(den)), bound);
  auto all = compile(v, bound);

  const std::uint64_t rest_total = box_size(bound, k - 1, cfg, "count_lattice_points_solved");
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(rest_total, kSlabChunks));
  std::vector<std::uint64_t> partial(chunks, 0);
  const bool fast_linear =
      best_deg == 1 && std::all_of(coeff_polys.begin(), coeff_polys.end(), [](const IntegerPoly& p) { return p.fast(); });

  parallel_chunks(rest_total, chunks, cfg.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> x(k, 0);
    std::vector<mpz_class> re(coeff_polys.size()), im(coeff_polys.size());
    std::vector<std::int64_t> roots;
    for (std::size_t idx = begin; idx < end; ++idx) {
      decode_point(idx, bound, x, 0, best_var);
      x[best_var] = 0;
      roots.clear();
      if (fast_linear) {
        i128 r0, i0, r1, i1;
        coeff_polys[0].eval(x.data(), r0, i0);
        coeff_polys[1].eval(x.data(), r1, i1);
        // x = -(r0 + i0 i) / (r1 + i1 i) must be a rational integer.
        if (r1 == 0 && i1 == 0) {
          if (r0 == 0 && i0 == 0)
            for (std::int64_t t = -bound; t <= bound; ++t) roots.push_back(t);
        } else {
          i128 den1 = r1 != 0 ? r1 : i1;
          i128 num1 = r1 != 0 ? r0 : i0;
          if (num1 % den1 == 0) {
            i128 root = -num1 / den1;
            if (root >= -bound && root <= bound)
              roots.push_back(static_cast<std::int64_t>(root));
          }
        }
      } else {
        for (std::size_t e = 0; e < coeff_polys.size(); ++e) {
          if (coeff_polys[e].fast()) {
            i128 r, i;
            coeff_polys[e].eval(x.data(), r, i);
            re[e] = to_mpz(r);
            im[e] = to_mpz(i);
          } else {
            coeff_polys[e].eval(x.data(), re[e], im[e]);
          }
        }
        bool re_const = std::all_of(re.begin() + 1, re.end(), [](const mpz_class& z) { return sgn(z) == 0; });
        bool im_const = std::all_of(im.begin() + 1, im.end(), [](const mpz_class& z) { return sgn(z) == 0; });
        if (re_const && im_const) {
          if (sgn(re[0]) == 0 && sgn(im[0]) == 0)
            for (std::int64_t t = -bound; t <= bound; ++t) roots.push_back(t);
        } else {
          integer_roots(re_const ? im : re, bound, roots);
        }
      }
      for (auto t : roots) {
        x[best_var] = t;
        if (all_vanish(all, x.data())) ++partial[c];
      }
    }
  });
  CountReport rep;
  rep.bound = bound;
  rep.strategy = "solved";
  rep.points_scanned = rest_total;
  for (auto p : partial) rep.count += p;
  rep.seconds = elapsed(start);
  return rep;
}

AffineMap AffineMap::identity(std::size_t k) { return {ExactMatrix::identity(k), zero_vector(k), "identity"}; }

AffineMap AffineMap::translation(const ExactVector& shift) {
  return {ExactMatrix::identity(shift.size()), shift, "translate" + to_string(shift)};
}

AffineMapFamily AffineMapFamily::standard(std::size_t k, std::int64_t translate_range, std::vector<AffineMap> extra) {
  AffineMapFamily fam;
  fam.maps.push_back(AffineMap::identity(k));
  for (auto& m : extra) fam.maps.push_back(std::move(m));
  if (translate_range > 0 && k > 0) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<std::uint64_t>(2 * translate_range + 1);
    std::vector<std::int64_t> x(k);
    for (std::uint64_t i = 0; i < total; ++i) {
      decode_point(i, translate_range, x, 0);
      if (std::all_of(x.begin(), x.end(), [](std::int64_t t) { return t == 0; })) continue;
      ExactVector s;
      for (auto t : x) s.emplace_back(static_cast<long>(t));
      fam.maps.push_back(AffineMap::translation(s));
    }
  }
  return fam;
}

MembershipSet image(const MembershipSet& s, const AffineMap& phi) {
  const std::size_t k = s.k();
  if (phi.matrix.rows() != k || phi.matrix.cols() != k || phi.shift.size() != k)
    throw std::invalid_argument("affine map has the wrong dimension");
  auto inv = inverse(phi.matrix);
  if (!inv) throw std::invalid_argument("affine map " + phi.label + " is not bijective");
  if (const auto* f = std::get_if<FinitePointSet>(&s.value())) {
    FinitePointSet out{k, {}};
    for (const auto& p : f->points) out.points.push_back(phi.matrix * p + phi.shift);
    return out;
  }
  if (const auto* v = std::get_if<Variety>(&s.value())) {
    // y in phi(S) iff M^-1 (y - shift) in S.
    Variety out = v->pullback(*inv, -(*inv * phi.shift));
    out.declared_dim = v->declared_dim;
    out.declared_deg = v->declared_deg;
    return out;
  }
  throw std::invalid_argument("affine images are supported for point sets and varieties");
}

DensityReport density_lower_bound(const MembershipSet& s, std::int64_t bound, const AffineMapFamily& family,
                                  const ExecConfig& cfg) {
  DensityReport rep;
  mpz_class volume = 1;
  for (std::size_t i = 0; i < s.k(); ++i) volume *= 2 * bound + 1;
  rep.density = 0;
  for (const auto& phi : family.maps) {
    auto c = count_lattice_points(image(s, phi), bound, cfg).count;
    rep.counts.push_back(c);
    if (rep.best_map.empty() || c > rep.best_count) {
      rep.best_count = c;
      rep.best_map = phi.label;
    }
  }
  rep.density = mpq_class(mpz_class(std::to_string(rep.best_count)), volume);
  rep.density.canonicalize();
  return rep;
}

SchwartzZippelReport schwartz_zippel_check(const Variety& v, std::int64_t bound, const ExecConfig& cfg) {
  if (!v.declared_dim || !v.declared_deg) throw PreconditionError("schwartz_zippel_check needs declared dimension and degree");
  SchwartzZippelReport rep;
  rep.count = count_lattice_points(v, bound, cfg).count;
  rep.limit = *v.declared_deg;
  for (int i = 0; i < *v.declared_dim; ++i) rep.limit *= 2 * bound + 1;
  rep.pass = mpz_class(std::to_string(rep.count)) <= rep.limit;
  return rep;
}

SlicingReport slicing_identity_check(const Variety& v, std::int64_t bound, std::size_t r, const ExecConfig& cfg) {
  if (r < v.k) throw std::invalid_argument("slicing needs r >= k");
  Variety lifted{r, {}, {}, {}};
  for (const auto& p : v.polys) lifted.polys.push_back(p.extend_vars(r));
  SlicingReport rep;
  rep.base = count_lattice_points(v, bound, cfg).count;
  rep.lifted = count_lattice_points(lifted, bound, cfg).count;
  rep.factor = 1;
  for (std::size_t i = v.k; i < r; ++i) rep.factor *= 2 * bound + 1;
  rep.pass = mpz_class(std::to_string(rep.lifted)) == rep.factor * mpz_class(std::to_string(rep.base));
  return rep;
}

}  // namespace lolab
