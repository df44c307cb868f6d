#include "lolab/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lolab/errors.hpp"
#include "lolab/lattice.hpp"

namespace lolab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kFallbackTrials = 20000;

long param_long(const ExperimentSpec& spec, const std::string& key, long fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter " + key + " must be an integer");
  }
}

std::vector<long> param_list(const ExperimentSpec& spec, const std::string& key, std::vector<long> fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  std::vector<long> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("parameter " + key + " must be a comma-separated integer list");
    }
  }
  if (out.empty()) throw std::invalid_argument("parameter " + key + " is empty");
  return out;
}

void check_known(const ExperimentSpec& spec, const std::set<std::string>& known) {
  for (const auto& [k, v] : spec.params)
    if (!known.count(k)) throw std::invalid_argument("experiment " + spec.name + " has no parameter " + k);
}

std::string q(const mpq_class& x) { return rational_str(x); }
std::string num(long x) { return std::to_string(x); }
std::string yes(bool b) { return b ? "true" : "false"; }

mpq_class binom_over_pow(unsigned long n, unsigned long k, unsigned long e) {
  mpz_class c, d = 1;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  d <<= e;
  mpq_class r(c, d);
  r.canonicalize();
  return r;
}

VectorSequence copies_of_units(std::size_t k, std::size_t each) {
  std::vector<ExactVector> v;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < each; ++c) v.push_back(unit_vector(k, i));
  return VectorSequence(k, std::move(v));
}

SparsePoly poly_from(std::size_t nvars, const std::vector<std::pair<Exponents, GaussianRational>>& terms) {
  SparsePoly f(nvars);
  for (const auto& [e, c] : terms) f.add_term(e, c);
  return f;
}

ExactVector vec2(long a, long b) { return {GaussianRational(a), GaussianRational(b)}; }

// ---- experiments -------------------------------------------------------------

Table exp_erdos_lo(const ExperimentSpec& spec) {
  check_known(spec, {"n_max"});
  const long n_max = param_long(spec, "n_max", 20);
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  Table t;
  t.columns = {"n", "rho", "formula", "match"};
  for (long n = 1; n <= n_max; ++n) {
    mpq_class r = rho(VectorSequence::copies({GaussianRational(1)}, static_cast<std::size_t>(n)), spec.cfg);
    mpq_class f = erdos_lo_value(static_cast<std::size_t>(n));
    t.rows.push_back({num(n), q(r), q(f), yes(r == f)});
    t.pass = t.pass && r == f;
  }
  return t;
}

Table exp_equidistribution(const ExperimentSpec& spec) {
  check_known(spec, {"k", "m"});
  const long k = param_long(spec, "k", 1), m = param_long(spec, "m", 8);
  if (k < 1 || m < 1) throw std::invalid_argument("k and m must be >= 1");
  // One coordinate: 2m copies of 1/2.
  auto coord = SumDistribution::compute(VectorSequence::copies({GaussianRational(1, 2)}, static_cast<std::size_t>(2 * m)),
                                        spec.cfg);
  const long range = static_cast<long>(std::floor(std::sqrt(static_cast<double>(m)) + 1e-12));
  Table t;
  t.columns = {"t", "probability", "binomial"};
  mpq_class hi = 0, lo = 1;
  for (long x = -range; x <= range; ++x) {
    mpq_class p = coord.probability({GaussianRational(x)});
    mpq_class b = binom_over_pow(static_cast<unsigned long>(2 * m), static_cast<unsigned long>(m + x),
                                 static_cast<unsigned long>(2 * m));
    t.rows.push_back({num(x), q(p), q(b)});
    t.pass = t.pass && p == b;
    hi = std::max(hi, p);
    lo = std::min(lo, p);
  }
  mpq_class ratio = hi / lo;
  mpq_class ratio_k = 1;
  for (long i = 0; i < k; ++i) ratio_k *= ratio;
  t.summary = {{"range", num(range)}, {"ratio_per_coordinate", q(ratio)}, {"ratio", q(ratio_k)}};
  if (static_cast<std::size_t>(2 * m * k) <= spec.cfg.max_summands && k <= 3) {
    // Cross-check the product structure on the full k-dimensional law.
    auto full = SumDistribution::compute(copies_of_units(static_cast<std::size_t>(k), static_cast<std::size_t>(2 * m)), spec.cfg);
    mpq_class fhi = 0, flo = 1;
    std::size_t box = 1;
    for (long i = 0; i < k; ++i) box *= static_cast<std::size_t>(2 * range + 1);
    for (std::size_t idx = 0; idx < box; ++idx) {
      ExactVector x;
      std::size_t rest = idx;
      for (long i = 0; i < k; ++i) {
        // a_i = e_i / 2 scaled: coordinates of the full law are integers in the box
        x.emplace_back(static_cast<long>(rest % static_cast<std::size_t>(2 * range + 1)) - range);
        rest /= static_cast<std::size_t>(2 * range + 1);
      }
      ExactVector doubled;
      for (const auto& c : x) doubled.push_back(GaussianRational(2) * c);
      mpq_class p = full.probability(doubled);
      fhi = std::max(fhi, p);
      flo = std::min(flo, p);
    }
    bool agree = fhi / flo == ratio_k;
    t.summary.emplace_back("full_law_ratio", q(fhi / flo));
    t.pass = t.pass && agree;
  }
  return t;
}

Table exp_convex_sharpness(const ExperimentSpec& spec) {
  check_known(spec, {"n"});
  const long n = param_long(spec, "n", 7);
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd and positive");
  const ExactVector a{GaussianRational(1)};
  auto A = VectorSequence::copies(a, static_cast<std::size_t>(n));
  auto S = MembershipSet::points(1, {a, -a});
  mpq_class p = prob_in_set(A, S, spec.cfg);
  mpq_class f = 2 * binom_over_pow(static_cast<unsigned long>(n), static_cast<unsigned long>((n - 1) / 2),
                                   static_cast<unsigned long>(n));
  const double bound = 2 * std::sqrt(2 / kPi) / std::sqrt(static_cast<double>(n));
  Table t;
  t.columns = {"n", "probability", "formula", "shape", "match"};
  t.rows.push_back({num(n), q(p), q(f), format_double(bound), yes(p == f)});
  t.pass = p == f;
  return t;
}

Table exp_line_example(const ExperimentSpec& spec) {
  check_known(spec, {"n"});
  const long n = param_long(spec, "n", 10);
  if (n < 2 || n % 2 != 0 || n > 60) throw std::invalid_argument("n must be even, between 2 and 60");
  std::vector<ExactVector> v;
  for (long i = 1; i <= n; ++i) {
    mpz_class p = 1;
    p <<= static_cast<mp_bitcnt_t>(i);
    v.push_back({GaussianRational(1), GaussianRational(mpq_class(p))});
  }
  VectorSequence A(2, v);
  auto d = SumDistribution::compute(A, spec.cfg);
  Variety line{2, {SparsePoly::variable(2, 0)}, 1, 1};
  mpq_class p = prob_in_set(d, line, spec.cfg);
  mpq_class r = rho(d);
  mpq_class pf = binom_over_pow(static_cast<unsigned long>(n), static_cast<unsigned long>(n / 2),
                                static_cast<unsigned long>(n));
  mpq_class rf = binom_over_pow(0, 0, static_cast<unsigned long>(n));
  Table t;
  t.columns = {"n", "probability", "rho", "probability_formula", "rho_formula", "match"};
  bool ok = p == pf && r == rf;
  t.rows.push_back({num(n), q(p), q(r), q(pf), q(rf), yes(ok)});
  t.pass = ok;
  return t;
}

// P[F(xi) = 0] by enumerating every sign vector; independent of the vector reduction.
mpq_class brute_force_zero_probability(const SparsePoly& f) {
  const std::size_t n = f.nvars();
  if (n > 20) throw BudgetExceeded("brute force limited to 20 variables");
  std::uint64_t zeros = 0;
  ExactVector x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1u ? GaussianRational(-1) : GaussianRational(1);
    if (f.evaluate(x).is_zero()) ++zeros;
  }
  return dyadic(zeros, n);
}

ChowRepresentation mixed_chow(std::size_t n, unsigned d) {
  ChowRepresentation r;
  r.n = n;
  r.k = 2;
  ExactVector first(n), second(n);
  for (std::size_t j = 0; j < n; ++j) (j < n / 2 ? first : second)[j] = 1;
  r.forms = {first, second};
  Exponents ud{d, 0}, v{0, 1};
  r.outer = poly_from(2, {{ud, GaussianRational(1)}, {v, GaussianRational(-1)}});
  return r;
}

ChowRepresentation sum_power_chow(std::size_t n, unsigned d) {
  ChowRepresentation r;
  r.n = n;
  r.k = 1;
  r.forms = {ExactVector(n, GaussianRational(1))};
  r.outer = poly_from(1, {{{d}, GaussianRational(1)}});
  return r;
}

Table exp_mixed_polynomial(const ExperimentSpec& spec) {
  check_known(spec, {"n", "d"});
  const long n = param_long(spec, "n", 8), d = param_long(spec, "d", 2);
  if (n < 2 || n % 2 != 0 || d < 1) throw std::invalid_argument("n must be even and d >= 1");
  auto chow = mixed_chow(static_cast<std::size_t>(n), static_cast<unsigned>(d));
  auto red = reduction_to_vectors(chow);
  mpq_class p = prob_in_set(red.vectors, red.variety, spec.cfg);
  Table t;
  t.columns = {"n", "d", "probability", "brute_force", "match"};
  std::string brute = "skipped";
  bool ok = true;
  if (n <= 16) {
    mpq_class b = brute_force_zero_probability(expand_chow(chow));
    brute = q(b);
    ok = b == p;
  }
  t.rows.push_back({num(n), num(d), q(p), brute, yes(ok)});
  t.pass = ok;
  return t;
}

Table exp_chow_pipeline(const ExperimentSpec& spec) {
  check_known(spec, {"family", "n", "d", "b"});
  const long family = param_long(spec, "family", 0);
  ChowRepresentation r;
  if (family == 0) {
    r = sum_power_chow(static_cast<std::size_t>(param_long(spec, "n", 4)), static_cast<unsigned>(param_long(spec, "d", 2)));
  } else if (family == 1) {
    // t1 (t2 - t3) as u v with u = t1, v = t2 - t3
    r.n = 3;
    r.k = 2;
    r.forms = {{GaussianRational(1), GaussianRational(0), GaussianRational(0)},
               {GaussianRational(0), GaussianRational(1), GaussianRational(-1)}};
    r.outer = poly_from(2, {{{1, 1}, GaussianRational(1)}});
  } else if (family == 2) {
    r = mixed_chow(static_cast<std::size_t>(param_long(spec, "n", 8)), static_cast<unsigned>(param_long(spec, "d", 2)));
  } else {
    throw std::invalid_argument("family must be 0 (sum power), 1 (t1 t2 - t1 t3) or 2 (mixed)");
  }
  const long b = param_long(spec, "b", family == 1 ? 3 : static_cast<long>(r.n));
  if (b < 1) throw std::invalid_argument("b must be >= 1");
  auto rep = chow_pipeline(r, static_cast<std::size_t>(b), spec.cfg);
  Table t;
  t.columns = {"stage", "value"};
  t.rows.push_back({"robust_dependence",
                    rep.robustness ? yes(rep.robustness->robust) : std::string("unchecked")});
  if (rep.robustness && rep.robustness->zeroing_assignment) {
    std::string w;
    for (const auto& [var, s] : *rep.robustness->zeroing_assignment)
      w += (w.empty() ? "" : " ") + std::string("t") + std::to_string(var + 1) + "=" + std::to_string(s);
    t.rows.push_back({"zeroing_assignment", w});
  }
  t.rows.push_back({"b0", num(static_cast<long>(rep.b0))});
  t.rows.push_back({"subspace_dim", num(static_cast<long>(rep.drop.subspace.size()))});
  t.rows.push_back({"i0_size", num(static_cast<long>(rep.drop.indices.size()))});
  t.rows.push_back({"i1_size", num(static_cast<long>(rep.conditioned.size()))});
  t.rows.push_back({"inert", num(static_cast<long>(rep.inert.size()))});
  t.rows.push_back({"max_conditional", q(rep.max_conditional)});
  t.rows.push_back({"probability", q(rep.probability)});
  t.rows.push_back({"direct", q(rep.direct)});
  t.pass = rep.probability == rep.direct;
  t.summary = {{"hypothesis", rep.hypothesis_ok ? "holds" : "fails"}};
  return t;
}

Table exp_hull_jarnik(const ExperimentSpec& spec) {
  check_known(spec, {"B", "k"});
  const long k = param_long(spec, "k", 2);
  auto grid = param_list(spec, "B", k == 2 ? std::vector<long>{10, 20, 50, 100, 200, 500, 1000}
                                           : std::vector<long>{2, 4, 6, 8, 10});
  Table t;
  t.columns = {"B", "vertices"};
  std::vector<std::pair<double, double>> pairs;
  for (long b : grid) {
    auto v = hull_vertices_ball(static_cast<std::size_t>(k), b);
    t.rows.push_back({num(b), num(static_cast<long>(v))});
    pairs.emplace_back(static_cast<double>(b), static_cast<double>(v));
  }
  if (pairs.size() >= 3) {
    auto fit = exponent_fit(pairs);
    t.summary = {{"slope", format_double(fit.slope)}, {"residual", format_double(fit.residual)},
                 {"target", format_double(k == 2 ? 2.0 / 3.0 : 1.0)}};
  }
  return t;
}

Table exp_parabola_count(const ExperimentSpec& spec) {
  check_known(spec, {"B"});
  auto grid = param_list(spec, "B", {10, 100, 1000, 10000});
  Variety parabola{2, {poly_from(2, {{{1, 0}, GaussianRational(1)}, {{0, 2}, GaussianRational(-1)}})}, 1, 2};
  Table t;
  t.columns = {"B", "row_major", "solved", "formula", "match"};
  std::vector<std::pair<double, double>> pairs;
  for (long b : grid) {
    std::string rm = "skipped";
    auto solved = count_lattice_points_solved(parabola, b, spec.cfg);
    const long formula = 2 * static_cast<long>(std::floor(std::sqrt(static_cast<double>(b)) + 1e-9)) + 1;
    bool ok = solved && static_cast<long>(solved->count) == formula;
    try {
      auto c = count_lattice_points(parabola, b, spec.cfg);
      rm = num(static_cast<long>(c.count));
      ok = ok && static_cast<long>(c.count) == formula;
    } catch (const BudgetExceeded&) {
    }
    t.rows.push_back({num(b), rm, num(static_cast<long>(solved->count)), num(formula), yes(ok)});
    t.pass = t.pass && ok;
    pairs.emplace_back(static_cast<double>(b), static_cast<double>(solved->count));
  }
  if (pairs.size() >= 3) t.summary = {{"slope", format_double(exponent_fit(pairs).slope)}};
  return t;
}

using Runner = std::function<Table(const ExperimentSpec&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r = {
      {"erdos_lo", exp_erdos_lo},
      {"equidistribution", exp_equidistribution},
      {"convex_sharpness", exp_convex_sharpness},
      {"line_example", exp_line_example},
      {"mixed_polynomial", exp_mixed_polynomial},
      {"chow_pipeline", exp_chow_pipeline},
      {"hull_jarnik", exp_hull_jarnik},
      {"parabola_count", exp_parabola_count},
  };
  return r;
}

// ---- theorem scans -----------------------------------------------------------

// Exact when within budget, Monte Carlo otherwise.
void evaluate_row(ScanRow& row, const VectorSequence& a, const MembershipSet& s, std::uint64_t seed,
                  const ExecConfig& cfg) {
  try {
    row.exact = prob_in_set(a, s, cfg);
  } catch (const BudgetExceeded& e) {
    row.mc = monte_carlo_prob(a, s, kFallbackTrials, seed, cfg);
    row.note = std::string("monte-carlo: ") + e.what();
  }
}

ExecConfig scan_config(const ExecConfig& cfg) {
  // The convolution cost is governed by the support, which stays budgeted.
  ExecConfig c = cfg;
  c.max_summands = std::max<std::size_t>(c.max_summands, 62);
  return c;
}

ScanResult scan_varieties_point(const std::vector<long>& grid, std::uint64_t seed, const ExecConfig& cfg) {
  ScanResult r;
  r.theorem = "varieties-(k-ell)/2";
  r.exponent = -1.0;  // -(k - l)/2 with k = 2, l = 0
  Variety point{2, {SparsePoly::variable(2, 0), SparsePoly::variable(2, 1)}, 0, 1};
  for (long b : grid) {
    if (b < 1) throw std::invalid_argument("grid values must be positive");
    ScanRow row;
    row.parameter = "b";
    row.value = b;
    auto a = copies_of_units(2, static_cast<std::size_t>(2 * b));
    row.n = a.size();
    row.packing = basis_packing_number(a, cfg).b;
    row.scale = static_cast<double>(row.packing);
    evaluate_row(row, a, point, seed + static_cast<std::uint64_t>(b), scan_config(cfg));
    r.rows.push_back(std::move(row));
  }
  return r;
}

ScanResult scan_varieties_curve(const std::vector<long>& grid, std::uint64_t seed, const ExecConfig& cfg) {
  ScanResult r;
  r.theorem = "varieties-1/d";
  r.exponent = -0.75;  // -(k - l + 1 - 1/d)/2 with k = 2, l = 1, d = 2
  Variety parabola{2, {poly_from(2, {{{1, 0}, GaussianRational(1)}, {{0, 2}, GaussianRational(-1)}})}, 1, 2};
  for (long b : grid) {
    if (b < 1) throw std::invalid_argument("grid values must be positive");
    ScanRow row;
    row.parameter = "b";
    row.value = b;
    auto a = copies_of_units(2, static_cast<std::size_t>(b));
    row.n = a.size();
    row.packing = basis_packing_number(a, cfg).b;
    row.scale = static_cast<double>(row.packing);
    evaluate_row(row, a, parabola, seed + static_cast<std::uint64_t>(b), scan_config(cfg));
    r.rows.push_back(std::move(row));
  }
  return r;
}

ScanResult scan_convex_position(const std::vector<long>& grid, std::uint64_t seed, const ExecConfig& cfg) {
  ScanResult r;
  r.theorem = "convex-position";
  r.exponent = -1.0 + 1.0 / 3.0;  // -1 + 1/(k+1) with k = 2
  for (long b : grid) {
    if (b < 2 || b % 2 != 0) throw std::invalid_argument("convex-position grid needs even b >= 2");
    ScanRow row;
    row.parameter = "b";
    row.value = b;
    auto a = copies_of_units(2, static_cast<std::size_t>(b));
    row.n = a.size();
    row.packing = basis_packing_number(a, cfg).b;
    row.scale = static_cast<double>(row.packing);
    // Sums have even coordinates; S doubles the hull vertices of a lattice disc of radius sqrt(b).
    const auto radius = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(b))));
    std::vector<ExactVector> pts;
    for (const auto& [x, y] : ball_hull_2d(radius)) pts.push_back(vec2(2 * x, 2 * y));
    if (!is_convex_position(pts).convex) throw std::logic_error("scan set is not in convex position");
    evaluate_row(row, a, MembershipSet::points(2, pts), seed + static_cast<std::uint64_t>(b), scan_config(cfg));
    row.note = "S=" + std::to_string(pts.size()) + " points";
    r.rows.push_back(std::move(row));
  }
  return r;
}

ScanResult scan_convex_half(const std::vector<long>& grid, std::uint64_t seed, const ExecConfig& cfg) {
  ScanResult r;
  r.theorem = "convex-1/2";
  r.exponent = -0.5;
  const double constant = 2 * std::sqrt(2 / kPi);
  for (long n : grid) {
    if (n < 1) throw std::invalid_argument("grid values must be positive");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> coord(-2, 2);
    std::uniform_int_distribution<int> size(3, 10);
    for (int inst = 0; inst <= 4; ++inst) {
      ScanRow row;
      row.parameter = "n";
      row.value = n;
      std::vector<ExactVector> vecs;
      std::vector<ExactVector> pts;
      if (inst == 0) {
        // {-a, a} with an odd number of copies of a
        const long copies = n % 2 == 1 ? n : n - 1;
        if (copies < 1) continue;
        vecs.assign(static_cast<std::size_t>(copies), vec2(1, 2));
        pts = {vec2(1, 2), vec2(-1, -2)};
        row.note = "extremal";
      } else {
        for (long i = 0; i < n; ++i) {
          int x = 0, y = 0;
          while (x == 0 && y == 0) {
            x = coord(rng);
            y = coord(rng);
          }
          vecs.push_back(vec2(x, y));
        }
        auto d = SumDistribution::compute(VectorSequence(2, vecs), scan_config(cfg));
        std::vector<std::size_t> order(d.support_size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j) { return d.numerator_at(i) > d.numerator_at(j); });
        order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(size(rng))));
        std::vector<std::pair<std::int64_t, std::int64_t>> top;
        for (auto i : order) {
          auto p = d.point(i);
          top.emplace_back(p[0].re().get_num().get_si(), p[1].re().get_num().get_si());
        }
        for (const auto& [x, y] : hull_2d(top)) pts.push_back(vec2(static_cast<long>(x), static_cast<long>(y)));
        if (pts.empty()) pts.push_back(d.point(order.front()));
        row.note = "random";
      }
      if (!is_convex_position(pts).convex) throw std::logic_error("scan set is not in convex position");
      VectorSequence a(2, vecs);
      row.n = a.size();
      row.packing = basis_packing_number(a, cfg).b;
      row.scale = static_cast<double>(row.n);
      evaluate_row(row, a, MembershipSet::points(2, pts), seed + static_cast<std::uint64_t>(n * 8 + inst), scan_config(cfg));
      // Explicit inequality with slack factor 2.
      const double limit = 2 * constant / std::sqrt(static_cast<double>(row.n));
      if (row.probability() > limit) r.pass = false;
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

ScanResult scan_polynomial_power(const std::vector<long>& grid, std::uint64_t seed, const ExecConfig& cfg) {
  ScanResult r;
  r.theorem = "polynomials-all-1";
  r.exponent = -0.5;
  for (long n : grid) {
    if (n < 1) throw std::invalid_argument("grid values must be positive");
    ScanRow row;
    row.parameter = "n";
    row.value = n;
    auto chow = sum_power_chow(static_cast<std::size_t>(n), 2);
    auto red = reduction_to_vectors(chow);
    row.n = static_cast<std::size_t>(n);
    row.packing = basis_packing_number(red.vectors, cfg).b;
    row.scale = static_cast<double>(n);  // (t_1 + ... + t_n)^2 robustly depends on all n variables
    if (n <= 8) {
      auto rob = robust_dependence_check(expand_chow(chow), static_cast<std::size_t>(n), cfg.max_enumeration);
      row.note = rob.robust ? "robust b=n checked" : "not robust";
    } else {
      row.note = "robust b=n unchecked";
    }
    evaluate_row(row, red.vectors, red.variety, seed + static_cast<std::uint64_t>(n), scan_config(cfg));
    r.rows.push_back(std::move(row));
  }
  return r;
}

ScanResult scan_polynomial_mixed(const std::vector<long>& grid, std::uint64_t seed, const ExecConfig& cfg) {
  ScanResult r;
  r.theorem = "polynomials-mixed";
  r.exponent = -1.0 + 1.0 / 4.0;  // -1 + 1/(2d) with d = 2
  for (long n : grid) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("polynomials-mixed grid needs even n");
    ScanRow row;
    row.parameter = "n";
    row.value = n;
    auto red = reduction_to_vectors(mixed_chow(static_cast<std::size_t>(n), 2));
    row.n = static_cast<std::size_t>(n);
    row.packing = basis_packing_number(red.vectors, cfg).b;
    row.scale = static_cast<double>(n);
    evaluate_row(row, red.vectors, red.variety, seed + static_cast<std::uint64_t>(n), scan_config(cfg));
    r.rows.push_back(std::move(row));
  }
  return r;
}

ScanResult scan_semialgebraic(const std::vector<long>& grid, std::uint64_t seed, const ExecConfig& cfg) {
  ScanResult r;
  r.theorem = "semialgebraic-shape";
  r.exponent = -0.5;
  Variety circle{2,
                 {poly_from(2, {{{2, 0}, GaussianRational(1)}, {{0, 2}, GaussianRational(1)}, {{0, 0}, GaussianRational(-1)}})},
                 1,
                 2};
  for (long n : grid) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("semialgebraic-shape grid needs odd n");
    ScanRow row;
    row.parameter = "n";
    row.value = n;
    auto a = VectorSequence::copies(vec2(1, 0), static_cast<std::size_t>(n));
    row.n = a.size();
    row.packing = basis_packing_number(a, cfg).b;
    row.scale = static_cast<double>(n);
    evaluate_row(row, a, circle, seed + static_cast<std::uint64_t>(n), scan_config(cfg));
    r.rows.push_back(std::move(row));
  }
  return r;
}

struct ScanFamily {
  std::function<ScanResult(const std::vector<long>&, std::uint64_t, const ExecConfig&)> run;
  std::vector<long> grid;
};

const std::map<std::string, ScanFamily>& scans() {
  static const std::map<std::string, ScanFamily> s = {
      {"convex-position", {scan_convex_position, {4, 8, 12, 16, 20, 24, 30}}},
      {"convex-1/2", {scan_convex_half, {4, 8, 12, 16, 20, 24}}},
      {"varieties-(k-ell)/2", {scan_varieties_point, {2, 3, 4, 5, 6, 7, 8, 9, 10}}},
      {"varieties-1/d", {scan_varieties_curve, {2, 4, 6, 8, 10, 12}}},
      {"polynomials-all-1", {scan_polynomial_power, {4, 8, 12, 16, 20, 24}}},
      {"polynomials-mixed", {scan_polynomial_mixed, {8, 12, 16, 20, 24}}},
      {"semialgebraic-shape", {scan_semialgebraic, {5, 9, 13, 17, 21, 25}}},
  };
  return s;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

mpq_class erdos_lo_value(std::size_t n) {
  if (n == 0) throw std::invalid_argument("erdos_lo_value needs n >= 1");
  return binom_over_pow(n, n / 2, n);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_cell(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  for (const auto& [k, v] : t.summary) os << "# " << k << "=" << v << '\n';
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json j;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = row[i];
    rows.push_back(r);
  }
  j["rows"] = rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.summary) summary[k] = v;
  j["summary"] = summary;
  j["pass"] = t.pass;
  os << j.dump(2) << '\n';
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

Table run_experiment(const ExperimentSpec& spec) {
  auto it = registry().find(spec.name);
  if (it == registry().end()) throw std::invalid_argument("unknown experiment \"" + spec.name + "\"");
  return it->second(spec);
}

double ScanRow::probability() const {
  if (exact) return exact->get_d();
  if (mc) return mc->estimate;
  return 0;
}

std::vector<std::string> theorem_ids() {
  std::vector<std::string> out;
  for (const auto& [k, v] : scans()) out.push_back(k);
  return out;
}

ScanResult theorem_scan(const std::string& id, const std::vector<long>& grid, std::uint64_t seed,
                        const ExecConfig& cfg) {
  auto it = scans().find(id);
  if (it == scans().end()) throw std::invalid_argument("unknown theorem id \"" + id + "\"");
  ScanResult r = it->second.run(grid.empty() ? it->second.grid : grid, seed, cfg);
  std::vector<std::pair<double, double>> pairs;
  for (auto& row : r.rows) {
    row.shape = std::pow(row.scale, r.exponent);
    row.ratio = row.shape > 0 ? row.probability() / row.shape : 0;
    if (row.probability() > 0 && row.scale > 0) pairs.emplace_back(row.scale, row.probability());
  }
  std::set<double> distinct;
  for (const auto& p : pairs) distinct.insert(p.first);
  if (pairs.size() >= 3 && distinct.size() >= 2) r.fit = exponent_fit(pairs);
  return r;
}

Table to_table(const ScanResult& r) {
  Table t;
  t.columns = {"parameter", "value", "n", "packing", "scale", "exact", "probability", "mc_lower", "mc_upper",
               "shape", "ratio", "note"};
  for (const auto& row : r.rows) {
    t.rows.push_back({row.parameter, num(row.value), num(static_cast<long>(row.n)), num(static_cast<long>(row.packing)),
                      format_double(row.scale), row.exact ? q(*row.exact) : std::string(),
                      format_double(row.probability()), row.mc ? format_double(row.mc->lower) : std::string(),
                      row.mc ? format_double(row.mc->upper) : std::string(), format_double(row.shape),
                      format_double(row.ratio), row.note});
  }
  t.summary = {{"theorem", r.theorem}, {"exponent", format_double(r.exponent)}};
  if (r.fit) {
    t.summary.emplace_back("slope", format_double(r.fit->slope));
    t.summary.emplace_back("residual", format_double(r.fit->residual));
  }
  t.pass = r.pass;
  return t;
}

ChowPipelineReport chow_pipeline(const ChowRepresentation& r, std::size_t b_hint, const ExecConfig& cfg) {
  r.validate();
  ChowPipelineReport rep;
  if (b_hint > 0) {
    try {
      rep.robustness = robust_dependence_check(expand_chow(r), b_hint, cfg.max_enumeration);
      rep.hypothesis_ok = rep.robustness->robust;
    } catch (const BudgetExceeded&) {
    }
  }
  rep.reduction = reduction_to_vectors(r);
  const auto& a = rep.reduction.vectors;
  const std::size_t k = r.k;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < a.size(); ++i) (is_zero(a[i]) ? rep.inert : active).push_back(i);
  const std::size_t b = std::max<std::size_t>(b_hint, 1);
  rep.b0 = k == 0 ? 1 : b / (k * (k + 1)) + 1;
  VectorSequence act = a.subsequence(active);
  rep.drop = drop_to_subspace(act, rep.b0, cfg);
  for (auto& i : rep.drop.indices) i = active[i];
  for (auto& s : rep.drop.packing.index_sets)
    for (auto& i : s) i = active[i];
  std::set<std::size_t> kept(rep.drop.indices.begin(), rep.drop.indices.end());
  for (auto i : active)
    if (!kept.count(i)) rep.conditioned.push_back(i);
  if (rep.conditioned.size() > 20) throw BudgetExceeded("chow_pipeline: more than 20 conditioned variables");

  const auto main = SumDistribution::compute(a.subsequence(rep.drop.indices), cfg);
  const MembershipSet s(rep.reduction.variety);
  rep.assignments = std::uint64_t{1} << rep.conditioned.size();
  mpq_class total = 0;
  rep.max_conditional = 0;
  for (std::uint64_t mask = 0; mask < rep.assignments; ++mask) {
    ExactVector x0 = zero_vector(k);
    for (std::size_t j = 0; j < rep.conditioned.size(); ++j) {
      const auto& v = a[rep.conditioned[j]];
      x0 = (mask >> j) & 1u ? x0 - v : x0 + v;
    }
    // F_* = 0 iff the sum over I_0 lies in S - x0.
    mpq_class p = prob_in_set(main, s.translated(-x0), cfg);
    total += p;
    rep.max_conditional = std::max(rep.max_conditional, p);
  }
  rep.probability = total / mpq_class(mpz_class(std::to_string(rep.assignments)));
  rep.probability.canonicalize();
  rep.direct = prob_in_set(a, s, cfg);
  return rep;
}

}  // namespace lolab
