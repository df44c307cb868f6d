// Brute-force reference implementations. They share only field arithmetic and
// polynomial evaluation with the library, never its engines.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "lolab/gaussian_rational.hpp"
#include "lolab/linalg.hpp"
#include "lolab/membership.hpp"
#include "lolab/polynomial.hpp"
#include "lolab/sequence.hpp"

namespace oracle {

using lolab::ExactVector;
using lolab::GaussianRational;
using lolab::VectorSequence;

/// Law of the signed sum by visiting all 2^n sign vectors; counts out of 2^n.
inline std::map<ExactVector, std::uint64_t> law(const VectorSequence& a) {
  std::map<ExactVector, std::uint64_t> out;
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ExactVector x(a.k());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < a.k(); ++c) {
        if ((mask >> i) & 1u)
          x[c] -= a[i][c];
        else
          x[c] += a[i][c];
      }
    ++out[x];
  }
  return out;
}

inline mpq_class ratio(std::uint64_t count, std::size_t n) {
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(n);
  mpq_class q(mpz_class(std::to_string(count)), den);
  q.canonicalize();
  return q;
}

inline mpq_class prob(const VectorSequence& a, const std::function<bool(const ExactVector&)>& in_set) {
  std::uint64_t hits = 0;
  for (const auto& [x, c] : law(a))
    if (in_set(x)) hits += c;
  return ratio(hits, a.size());
}

inline mpq_class rho(const VectorSequence& a) {
  std::uint64_t best = 0;
  for (const auto& [x, c] : law(a)) best = std::max(best, c);
  return ratio(best, a.size());
}

/// sup_x P[X in S + x] for finite S, over every shift y - s that can matter.
inline mpq_class rho_finite(const VectorSequence& a, const std::vector<ExactVector>& s) {
  auto l = law(a);
  std::set<ExactVector> pts(s.begin(), s.end());
  std::uint64_t best = 0;
  for (const auto& [y, c0] : l)
    for (const auto& p : pts) {
      ExactVector x(a.k());
      for (std::size_t i = 0; i < a.k(); ++i) x[i] = y[i] - p[i];
      std::uint64_t hits = 0;
      for (const auto& q : pts) {
        ExactVector z(a.k());
        for (std::size_t i = 0; i < a.k(); ++i) z[i] = q[i] + x[i];
        auto it = l.find(z);
        if (it != l.end()) hits += it->second;
      }
      best = std::max(best, hits);
    }
  return ratio(best, a.size());
}

/// Rank by textbook Gaussian elimination with field division.
inline std::size_t rank(std::vector<ExactVector> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      GaussianRational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// Maximum number of disjoint bases by exhaustive search.
inline std::size_t packing(const VectorSequence& a) {
  const std::size_t n = a.size(), k = a.k();
  if (k == 0) return 0;
  std::vector<int> owner(n, -1);
  std::size_t best = 0;
  // Try to build `target` disjoint bases; sets are filled in index order.
  std::function<bool(std::size_t, std::size_t, std::vector<std::size_t>&, std::size_t)> fill =
      [&](std::size_t set, std::size_t target, std::vector<std::size_t>& chosen, std::size_t start) -> bool {
    if (set == target) return true;
    if (chosen.size() == k) {
      std::vector<ExactVector> rows;
      for (auto i : chosen) rows.push_back(a[i]);
      if (rank(rows) != k) return false;
      std::vector<std::size_t> next;
      return fill(set + 1, target, next, 0);
    }
    for (std::size_t i = start; i < n; ++i) {
      if (owner[i] >= 0) continue;
      owner[i] = static_cast<int>(set);
      chosen.push_back(i);
      bool ok = fill(set, target, chosen, i + 1);
      chosen.pop_back();
      owner[i] = -1;
      if (ok) return true;
    }
    return false;
  };
  for (std::size_t target = 1; target * k <= n; ++target) {
    std::vector<std::size_t> chosen;
    if (!fill(0, target, chosen, 0)) break;
    best = target;
  }
  return best;
}

/// N_S(B) by evaluating every defining polynomial at every box point.
inline std::uint64_t lattice_count(const std::vector<lolab::SparsePoly>& polys, std::size_t k, long b) {
  std::uint64_t count = 0;
  std::vector<long> c(k, -b);
  while (true) {
    ExactVector x;
    for (long v : c) x.emplace_back(v);
    bool in = true;
    for (const auto& f : polys)
      if (!f.evaluate(x).is_zero()) {
        in = false;
        break;
      }
    if (in) ++count;
    std::size_t i = 0;
    while (i < k && c[i] == b) c[i++] = -b;
    if (i == k) break;
    ++c[i];
  }
  return count;
}

/// All coefficient tuples of a GAP with their values.
inline std::vector<std::pair<std::vector<std::int64_t>, ExactVector>> gap_points(
    std::size_t k, const std::vector<ExactVector>& gens, const std::vector<std::int64_t>& radii) {
  std::vector<std::pair<std::vector<std::int64_t>, ExactVector>> out;
  std::vector<std::int64_t> c(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) c[i] = -radii[i];
  while (true) {
    ExactVector x(k);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) x[j] += GaussianRational(static_cast<long>(c[i])) * gens[i][j];
    out.emplace_back(c, x);
    std::size_t i = 0;
    while (i < c.size() && c[i] == radii[i]) {
      c[i] = -radii[i];
      ++i;
    }
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

/// P[F(xi) = 0] over all sign vectors.
inline mpq_class poly_zero_prob(const lolab::SparsePoly& f) {
  const std::size_t n = f.nvars();
  std::uint64_t hits = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ExactVector t;
    for (std::size_t i = 0; i < n; ++i) t.emplace_back((mask >> i) & 1u ? -1L : 1L);
    if (f.evaluate(t).is_zero()) ++hits;
  }
  return ratio(hits, n);
}

// P(E and E') by enumerating (xi on I0, independent copy on I0, xi on the rest).
inline mpq_class decoupled_joint(const VectorSequence& a, const std::vector<std::size_t>& i0, const lolab::MembershipSet& s,
                                 const ExactVector& shift) {
  std::vector<bool> in0(a.size(), false);
  for (auto i : i0) in0[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!in0[i]) rest.push_back(i);
  auto target = s.translated(-shift);
  std::uint64_t hits = 0;
  const std::size_t m = i0.size(), r = rest.size();
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << r); ++y) {
    ExactVector ysum(a.k());
    for (std::size_t j = 0; j < r; ++j) ysum = (y >> j) & 1u ? ysum - a[rest[j]] : ysum + a[rest[j]];
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << m); ++p)
      for (std::uint64_t q = 0; q < (std::uint64_t{1} << m); ++q) {
        ExactVector s1 = ysum, s2 = ysum;
        for (std::size_t j = 0; j < m; ++j) {
          s1 = (p >> j) & 1u ? s1 - a[i0[j]] : s1 + a[i0[j]];
          s2 = (q >> j) & 1u ? s2 - a[i0[j]] : s2 + a[i0[j]];
        }
        if (target.contains(s1) && target.contains(s2)) ++hits;
      }
  }
  return ratio(hits, r + 2 * m);
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---- random instances ----------------------------------------------------------

struct Random {
  std::mt19937_64 rng;
  explicit Random(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  ExactVector vector(std::size_t k, long lo, long hi, bool nonzero = false) {
    while (true) {
      ExactVector v;
      for (std::size_t i = 0; i < k; ++i) v.emplace_back(integer(lo, hi));
      if (!nonzero || std::any_of(v.begin(), v.end(), [](const auto& c) { return !c.is_zero(); })) return v;
    }
  }

  VectorSequence sequence(std::size_t n, std::size_t k, long lo, long hi, bool nonzero = false) {
    std::vector<ExactVector> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(vector(k, lo, hi, nonzero));
    return VectorSequence(k, vs);
  }

  std::vector<ExactVector> points(std::size_t count, std::size_t k, long lo, long hi) {
    std::vector<ExactVector> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(vector(k, lo, hi));
    return out;
  }

  std::vector<std::size_t> subset(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (integer(0, 1)) out.push_back(i);
    return out;
  }
};

}  // namespace oracle
