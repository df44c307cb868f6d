// Acceptance suite: one line per criterion, tolerances fixed below.
#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lolab/concentration.hpp"
#include "lolab/decoupling.hpp"
#include "lolab/distribution.hpp"
#include "lolab/gap.hpp"
#include "lolab/geometry.hpp"
#include "lolab/harness.hpp"
#include "lolab/lattice.hpp"
#include "lolab/matroid.hpp"
#include "support/oracles.hpp"

using namespace lolab;

namespace {

constexpr double kHullSlopeLow = 0.55;
constexpr double kHullSlopeHigh = 0.75;
constexpr double kVarietiesTolerance = 0.15;
constexpr double kMixedTolerance = 0.2;
constexpr double kConvexSlack = 2.0;
constexpr double kSigmas = 3.0;

struct Outcome {
  bool pass = true;
  std::string detail;
  // Set when every failing part is one that cannot be reached at the tested sizes.
  bool known_gap = false;
};

// Counts checks and failures, keeping the first failure message.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures == 0) first = what;
    ++failures;
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o;
    o.pass = failures == 0;
    o.detail = summary + ", " + std::to_string(checks) + " checks";
    if (!o.pass) o.detail += ", " + std::to_string(failures) + " failed, first: " + first;
    return o;
  }
};

SparsePoly x(std::size_t n, std::size_t i) { return SparsePoly::variable(n, i); }
SparsePoly c(std::size_t n, long v) { return SparsePoly::constant(n, GaussianRational(v)); }
ExactVector v2(long a, long b) { return {GaussianRational(a), GaussianRational(b)}; }

std::string str(const mpq_class& q) { return q.get_str(); }

mpq_class frac(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class binomial_ratio(long n) {
  mpq_class q(oracle::binomial(n, n / 2), 1);
  q /= mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(n));
  return q;
}

Outcome erdos_equality() {
  Tally t;
  for (std::size_t n = 1; n <= 20; ++n)
    for (long scalar : {1L, -3L, 7L}) {
      auto a = VectorSequence::copies({GaussianRational(scalar)}, n);
      const auto expect = binomial_ratio(static_cast<long>(n));
      t.check(rho(a) == expect, "n=" + std::to_string(n) + " rho " + str(rho(a)));
      t.check(erdos_lo_value(n) == expect, "formula n=" + std::to_string(n));
    }
  return t.outcome("n=1..20, three scalars");
}

Outcome elementary_facts() {
  oracle::Random r(2024);
  Tally t;
  for (int inst = 0; inst < 500; ++inst) {
    const auto k = static_cast<std::size_t>(r.integer(1, 3));
    const auto n = static_cast<std::size_t>(r.integer(1, 12));
    auto a = r.sequence(n, k, -2, 2);
    auto s1 = r.points(static_cast<std::size_t>(r.integer(1, 3)), k, -3, 3);
    auto s2 = r.points(static_cast<std::size_t>(r.integer(1, 3)), k, -3, 3);
    auto both = s1;
    both.insert(both.end(), s2.begin(), s2.end());
    const std::string tag = "instance " + std::to_string(inst);

    const auto full = rho_finite_set(a, s1).probability;
    t.check(full == oracle::rho_finite(a, s1), tag + ": finite rho disagrees with enumeration");
    auto sub = a.subsequence(r.subset(n));
    t.check(full <= rho_finite_set(sub, s1).probability, tag + ": subsequence");

    const auto p1 = full, p2 = rho_finite_set(a, s2).probability, pu = rho_finite_set(a, both).probability;
    t.check(pu == oracle::rho_finite(a, both), tag + ": union rho disagrees with enumeration");
    t.check(std::max(p1, p2) <= pu && pu <= p1 + p2, tag + ": union bounds");

    const auto rows = static_cast<std::size_t>(r.integer(1, static_cast<long>(k)));
    ExactMatrix m(rows, k);
    do {
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = GaussianRational(r.integer(-2, 2));
    } while (lolab::rank(m) != rows);
    auto projected = a.mapped(m);
    const auto via_kernel = rho_subspace(a, kernel_basis(m));
    t.check(via_kernel == rho(projected), tag + ": projection");
    t.check(via_kernel == oracle::rho(projected), tag + ": projection against enumeration");
  }
  return t.outcome("500 instances");
}

Outcome subspace_drop() {
  oracle::Random r(77);
  Tally t;
  for (int inst = 0; inst < 200; ++inst) {
    const auto k = static_cast<std::size_t>(r.integer(1, 3));
    const auto b = static_cast<std::size_t>(r.integer(1, 3));
    const std::size_t need = (b - 1) * k * (k + 1) / 2;
    const auto n = need + static_cast<std::size_t>(r.integer(0, 6));
    auto a = r.sequence(n, k, -2, 2, true);
    const std::string tag = "instance " + std::to_string(inst);
    auto d = drop_to_subspace(a, b);
    t.check(d.indices.size() + need >= n, tag + ": |I0| too small");
    t.check(verify_drop(a, b, d), tag + ": witness rejected");
    t.check(d.packing.b >= b || d.subspace.empty(), tag + ": packing below b");
    if (d.subspace.empty() || d.indices.size() > 10) continue;
    // Coordinates of A[I0] in the basis of V', then an exhaustive packing count.
    auto basis = ExactMatrix::from_columns(d.subspace, k);
    std::vector<ExactVector> coords;
    bool inside = true;
    for (auto i : d.indices) {
      auto sol = solve_linear(basis, a[i]);
      if (!sol) inside = false;
      else coords.push_back(*sol);
    }
    t.check(inside, tag + ": I0 leaves V'");
    if (inside) t.check(oracle::packing(VectorSequence(d.subspace.size(), coords)) >= b, tag + ": oracle packing below b");
  }
  return t.outcome("200 sequences");
}

Outcome gap_suite() {
  oracle::Random r(91);
  Tally t;
  for (int inst = 0; inst < 100; ++inst) {
    const auto k = static_cast<std::size_t>(r.integer(1, 2));
    const auto rank = static_cast<std::size_t>(r.integer(1, 3));
    std::vector<ExactVector> gens;
    std::vector<std::int64_t> radii;
    for (std::size_t i = 0; i < rank; ++i) {
      gens.push_back(r.vector(k, -6, 6, true));
      radii.push_back(r.integer(1, rank == 3 ? 10 : 40));
    }
    SymmetricGAP q(k, gens, radii);
    const std::string tag = "gap " + std::to_string(inst);
    auto pts = oracle::gap_points(k, gens, radii);
    std::set<ExactVector> distinct;
    for (const auto& [co, val] : pts) distinct.insert(val);
    const bool proper = distinct.size() == pts.size();
    t.check(is_proper(q).proper == proper, tag + ": properness");

    std::vector<ExactVector> members;
    std::vector<std::vector<std::int64_t>> tuples;
    for (int j = 0; j < 5; ++j) {
      const auto& [co, val] = pts[static_cast<std::size_t>(r.integer(0, static_cast<long>(pts.size()) - 1))];
      tuples.push_back(co);
      members.push_back(val);
    }
    auto coords = gap_coordinates(VectorSequence(k, members), q);
    for (std::size_t j = 0; j < members.size(); ++j) {
      Coefficients cj;
      for (const auto& e : coords[j]) cj.push_back(e.re().get_num().get_si());
      t.check(q.in_box(cj) && q.evaluate(cj) == members[j], tag + ": coordinates do not round-trip");
      if (proper) t.check(cj == tuples[j], tag + ": proper GAP coordinates not unique");
    }
  }

  std::size_t escapes_checked = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const auto rank = static_cast<std::size_t>(r.integer(1, 3));
    std::vector<std::int64_t> radii;
    for (std::size_t i = 0; i < rank; ++i) radii.push_back(r.integer(1, 4));
    const auto m = static_cast<std::size_t>(r.integer(4, 20));
    std::vector<ExactVector> vecs;
    for (std::size_t j = 0; j < m; ++j) {
      ExactVector v;
      for (auto q : radii) v.emplace_back(r.integer(-q, q));
      vecs.push_back(v);
    }
    // t on the sqrt(m) scale, where the bound is informative.
    const mpq_class tq = mpq_class(r.integer(2, 8), 2) * std::lround(std::sqrt(static_cast<double>(m)));
    const double tt = tq.get_d();
    const std::uint64_t trials = 4000;
    auto rep = empirical_containment(VectorSequence(rank, vecs), radii, tq, trials, 1000 + static_cast<std::uint64_t>(inst));
    const double p = std::min(rep.bound, 1.0);
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
    t.check(rep.escape.estimate <= rep.bound + kSigmas * sigma,
            "hoeffding " + std::to_string(inst) + ": escape " + format_double(rep.escape.estimate) + " bound " +
                format_double(rep.bound) + " t " + format_double(tt));
    if (rep.exact_escape) {
      ++escapes_checked;
      t.check(rep.exact_escape->get_d() <= rep.bound + 1e-12, "hoeffding " + std::to_string(inst) + ": exact escape");
    }
  }
  return t.outcome("100 GAPs, 100 escape instances (" + std::to_string(escapes_checked) + " also exact)");
}

Outcome decoupling_suite() {
  oracle::Random r(131);
  Tally t;
  for (int inst = 0; inst < 200; ++inst) {
    const auto k = static_cast<std::size_t>(r.integer(1, 2));
    auto a = r.sequence(static_cast<std::size_t>(r.integer(1, 8)), k, -2, 2);
    auto i0 = r.subset(a.size());
    auto s = MembershipSet::points(k, r.points(static_cast<std::size_t>(r.integer(1, 4)), k, -3, 3));
    auto shift = r.vector(k, -1, 1);
    auto res = decoupling_check(a, i0, s, shift);
    const std::string tag = "instance " + std::to_string(inst);
    t.check(res.pass && res.lhs <= res.rhs, tag + ": inequality");
    if (a.size() <= 6) t.check(res.rhs == oracle::decoupled_joint(a, i0, s, shift), tag + ": joint enumeration");
  }

  std::vector<Variety> curves;
  for (long r2 : {1L, 2L, 5L, 8L}) curves.push_back(Variety::hypersurface(x(2, 0) * x(2, 0) + x(2, 1) * x(2, 1) - c(2, r2), 1, 2));
  for (long w : {2L, 3L}) curves.push_back(Variety::hypersurface(x(2, 0) * x(2, 0) + x(2, 1) * x(2, 1) * GaussianRational(w) - c(2, w + 1), 1, 2));
  for (long s0 : {0L, 1L}) curves.push_back(Variety::hypersurface(x(2, 1) - x(2, 0) * x(2, 0) - c(2, s0), 1, 2));
  std::size_t verified = 0, total = 0;
  for (std::size_t ci = 0; ci < curves.size(); ++ci)
    for (int rep = 0; rep < 3; ++rep) {
      auto a = r.sequence(static_cast<std::size_t>(r.integer(4, 16)), 2, -1, 1, true);
      Partition p;
      p.blocks.resize(2);
      for (std::size_t i = 0; i < a.size(); ++i) p.blocks[i % 2].push_back(i);
      auto d = SumDistribution::compute(a);
      std::vector<ExactVector> shifts;
      d.for_each([&](const ExactVector& y, std::uint64_t) { shifts.push_back(y); });
      auto res = iterated_decoupling_bound(a, p, curves[ci], shifts, {});
      ++total;
      if (res.status == Completeness::Verified) ++verified;
      t.check(res.pass, "curve " + std::to_string(ci) + ": iterated bound");
    }
  t.check(verified >= 20, "only " + std::to_string(verified) + " verified curve instances");
  return t.outcome("200 pair instances, " + std::to_string(verified) + "/" + std::to_string(total) +
                   " curve instances verified");
}

Outcome halasz_suite() {
  oracle::Random r(167);
  Tally t;
  for (int inst = 0; inst < 100; ++inst) {
    const auto k = static_cast<std::size_t>(r.integer(1, 3));
    const auto n = static_cast<std::size_t>(r.integer(2, 16));
    auto a = r.sequence(n, k, -2, 2);
    auto s = static_cast<std::size_t>(2 * r.integer(1, static_cast<long>(n / 2)));
    Partition p;
    p.blocks.resize(s);
    for (std::size_t i = 0; i < n; ++i) p.blocks[i < s ? i : static_cast<std::size_t>(r.integer(0, long(s) - 1))].push_back(i);
    auto res = halasz_check(a, p);
    const std::string tag = "instance " + std::to_string(inst);
    t.check(res.pass, tag + ": rho " + str(res.rho) + " above bound " + format_double(res.bound));
    if (n <= 14) t.check(res.rho == oracle::rho(a), tag + ": rho disagrees with enumeration");
  }
  std::vector<ExactVector> v;
  for (int i = 0; i < 4; ++i) {
    v.push_back(v2(1, 0));
    v.push_back(v2(0, 1));
  }
  auto eq = halasz_check(VectorSequence(2, v), Partition{{{0, 1}, {2, 3}, {4, 5}, {6, 7}}});
  t.check(eq.rho == mpq_class(9, 64) && eq.equality, "basis example rho " + str(eq.rho));
  return t.outcome("100 instances, equality at " + str(eq.rho));
}

Outcome lattice_suite() {
  oracle::Random r(199);
  Tally t;
  for (int inst = 0; inst < 50; ++inst) {
    const auto k = static_cast<std::size_t>(r.integer(2, 3));
    SparsePoly f(k);
    for (int term = 0; term < 3; ++term) {
      Exponents e(k);
      for (auto& d : e) d = static_cast<std::uint32_t>(r.integer(0, 2));
      f.add_term(e, GaussianRational(r.integer(-3, 3)));
    }
    f += x(k, static_cast<std::size_t>(r.integer(0, static_cast<long>(k) - 1)));
    const long b = r.integer(1, k == 2 ? 15 : 6);
    const std::string tag = "variety " + std::to_string(inst);
    if (f.degree() < 1) continue;
    auto v = Variety::hypersurface(f, static_cast<int>(k) - 1, f.degree());
    auto box = count_lattice_points(v, b);
    auto solved = count_lattice_points_solved(v, b);
    t.check(solved.has_value(), tag + ": no solving strategy");
    if (solved) t.check(solved->count == box.count, tag + ": strategies disagree");
    t.check(box.count == oracle::lattice_count({f}, k, b), tag + ": count disagrees with evaluation");
    t.check(schwartz_zippel_check(v, b).pass, tag + ": Schwartz-Zippel");
    if (k == 2 && b <= 8) t.check(slicing_identity_check(v, b, 3).pass, tag + ": slicing r=3");
  }
  // The count changes only at perfect squares, so each side of every square up to 10^4 is covered.
  auto parabola = Variety::hypersurface(x(2, 0) - x(2, 1) * x(2, 1), 1, 2);
  std::vector<long> bounds;
  for (long b = 1; b <= 100; ++b) bounds.push_back(b);
  for (long s = 11; s <= 100; ++s) {
    bounds.push_back(s * s - 1);
    bounds.push_back(s * s);
  }
  for (long b : bounds) {
    const auto expect = static_cast<std::uint64_t>(2 * static_cast<long>(std::sqrt(static_cast<double>(b))) + 1);
    auto s = count_lattice_points_solved(parabola, b);
    t.check(s && s->count == expect, "parabola B=" + std::to_string(b));
    if (b <= 100) t.check(count_lattice_points(parabola, b).count == expect, "parabola box B=" + std::to_string(b));
  }
  auto circle = Variety::hypersurface(x(2, 0) * x(2, 0) + x(2, 1) * x(2, 1) - c(2, 25), 1, 2);
  for (std::size_t rr : {3u, 4u}) t.check(slicing_identity_check(circle, 6, rr).pass, "circle slicing r=" + std::to_string(rr));
  return t.outcome("50 varieties, parabola at " + std::to_string(bounds.size()) + " bounds");
}

Outcome hull_exponent() {
  std::vector<std::pair<double, double>> pairs;
  std::string counts;
  for (long b : {10L, 20L, 50L, 100L, 200L, 500L, 1000L}) {
    const auto v = hull_vertices_ball(2, b);
    pairs.emplace_back(static_cast<double>(b), static_cast<double>(v));
    counts += (counts.empty() ? "" : " ") + std::to_string(v);
  }
  auto fit = exponent_fit(pairs);
  Outcome o;
  o.pass = fit.slope >= kHullSlopeLow && fit.slope <= kHullSlopeHigh;
  o.detail = "slope " + format_double(fit.slope) + " in [" + format_double(kHullSlopeLow) + ", " +
             format_double(kHullSlopeHigh) + "], vertices " + counts;
  return o;
}

std::string cell(const Table& tab, const std::string& column) {
  for (std::size_t i = 0; i < tab.columns.size(); ++i)
    if (tab.columns[i] == column && !tab.rows.empty()) return tab.rows[0][i];
  return "?";
}

std::string stage(const Table& tab, const std::string& name) {
  for (const auto& row : tab.rows)
    if (row[0] == name) return row[1];
  return "?";
}

Table experiment(const std::string& name, std::map<std::string, std::string> params, unsigned threads = 1) {
  ExperimentSpec spec;
  spec.name = name;
  spec.params = std::move(params);
  spec.cfg.threads = threads;
  return run_experiment(spec);
}

Outcome extremal_examples() {
  Tally t;
  auto line = experiment("line_example", {{"n", "10"}});
  t.check(cell(line, "probability") == str(frac(252, 1024)), "line probability " + cell(line, "probability"));
  t.check(cell(line, "rho") == str(frac(1, 1024)), "line rho " + cell(line, "rho"));
  auto convex = experiment("convex_sharpness", {{"n", "7"}});
  t.check(cell(convex, "probability") == str(frac(70, 128)), "convex " + cell(convex, "probability"));
  auto mixed = experiment("mixed_polynomial", {{"n", "8"}, {"d", "2"}});
  t.check(cell(mixed, "probability") == "11/64", "mixed " + cell(mixed, "probability"));
  SparsePoly f(8);
  {
    SparsePoly l(8), rr(8);
    for (std::size_t i = 0; i < 4; ++i) l += x(8, i);
    for (std::size_t i = 4; i < 8; ++i) rr += x(8, i);
    f = l.pow(2) - rr;
  }
  t.check(oracle::poly_zero_prob(f) == mpq_class(11, 64), "mixed enumeration");
  auto chow = experiment("chow_pipeline", {{"family", "0"}, {"n", "4"}, {"d", "2"}});
  t.check(stage(chow, "probability") == "3/8" && stage(chow, "direct") == "3/8", "chow " + stage(chow, "probability"));
  SparsePoly sum4(4);
  for (std::size_t i = 0; i < 4; ++i) sum4 += x(4, i);
  t.check(oracle::poly_zero_prob(sum4.pow(2)) == mpq_class(3, 8), "chow enumeration");
  return t.outcome(cell(line, "probability") + ", " + cell(line, "rho") + ", " + cell(convex, "probability") + ", " +
                   cell(mixed, "probability") + ", " + stage(chow, "probability"));
}

Outcome exponent_scans() {
  Outcome o;
  std::vector<std::string> parts;
  bool hard_failure = false;

  auto vars = theorem_scan("varieties-(k-ell)/2", {2, 3, 4, 5, 6, 7, 8, 9, 10}, 1);
  const bool va = vars.fit && std::abs(vars.fit->slope - vars.exponent) <= kVarietiesTolerance && vars.exponent == -1;
  parts.push_back(std::string("varieties slope ") + (vars.fit ? format_double(vars.fit->slope) : "none") +
                  (va ? " ok" : " outside -1 +- 0.15"));
  hard_failure |= !va;

  auto mixed = theorem_scan("polynomials-mixed", {8, 12, 16, 20, 24}, 1);
  const bool mb = mixed.fit && std::abs(mixed.fit->slope - (-0.75)) <= kMixedTolerance;
  parts.push_back(std::string("mixed slope ") + (mixed.fit ? format_double(mixed.fit->slope) : "none") +
                  (mb ? " ok" : " outside -0.75 +- 0.2 (finite-n slope, not reachable at n <= 24)"));

  auto convex = theorem_scan("convex-1/2", {4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24}, 1);
  bool cc = convex.pass;
  for (const auto& row : convex.rows) {
    const double limit = kConvexSlack * 2 * std::sqrt(2 / M_PI) / std::sqrt(static_cast<double>(row.n));
    cc &= row.exact.has_value() && row.exact->get_d() <= limit;
  }
  parts.push_back(std::string("convex-1/2 ") + (cc ? "ok" : "violated") + " on " + std::to_string(convex.rows.size()) +
                  " rows");
  hard_failure |= !cc;

  o.pass = va && mb && cc;
  o.known_gap = !o.pass && !hard_failure;
  for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (i ? "; " : "") + parts[i];
  return o;
}

std::string fingerprint(unsigned threads) {
  std::ostringstream os;
  ExecConfig cfg;
  cfg.threads = threads;
  for (const auto& name : experiment_names()) {
    ExperimentSpec spec;
    spec.name = name;
    spec.cfg = cfg;
    write_csv(run_experiment(spec), os);
  }
  for (const auto& id : theorem_ids()) write_csv(to_table(theorem_scan(id, {}, 1, cfg)), os);
  oracle::Random r(5);
  auto a = r.sequence(18, 2, -3, 3);
  SumDistribution::compute(a, cfg).write_csv(os);
  auto circle = Variety::hypersurface(x(2, 0) * x(2, 0) + x(2, 1) * x(2, 1) - c(2, 25), 1, 2);
  os << count_lattice_points(circle, 200, cfg).count << '\n';
  os << monte_carlo_prob(a, circle, 20000, 9, cfg).hits << '\n';
  return os.str();
}

Outcome determinism() {
  const auto base = fingerprint(1);
  Tally t;
  t.check(fingerprint(1) == base, "second run differs");
  for (unsigned w : {2u, 8u}) t.check(fingerprint(w) == base, std::to_string(w) + " workers differ");
  return t.outcome(std::to_string(base.size()) + " bytes of output");
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Erdos-Littlewood-Offord equality", 1, erdos_equality},
      {2, "subsequence, union and projection facts", 60, elementary_facts},
      {3, "dropping to a subspace", 60, subspace_drop},
      {4, "GAP properness, coordinates, dilation", 120, gap_suite},
      {5, "decoupling inequalities", 120, decoupling_suite},
      {6, "Halasz bound", 120, halasz_suite},
      {7, "lattice counting", 120, lattice_suite},
      {8, "hull vertex exponent", 180, hull_exponent},
      {9, "extremal examples", 60, extremal_examples},
      {10, "exponent scans", 600, exponent_scans},
      {11, "determinism", 600, determinism},
  };
  int unexpected = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds) {
      o.pass = false;
      o.known_gap = false;
      o.detail += "; over time limit";
    }
    std::printf("[%s] %d %s (%.2fs / %.0fs): %s%s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.title.c_str(), secs,
                cr.limit_seconds, o.detail.c_str(), !o.pass && o.known_gap ? " [expected failure]" : "");
    std::fflush(stdout);
    if (!o.pass && !o.known_gap) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
