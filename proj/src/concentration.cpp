#include "lolab/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "lolab/errors.hpp"
#include "lolab/parallel.hpp"

namespace lolab {

namespace {

constexpr std::size_t kScanChunks = 64;
constexpr std::uint64_t kMcBlock = 4096;

std::vector<ExactVector> distinct(const std::vector<ExactVector>& pts) {
  std::set<ExactVector> seen(pts.begin(), pts.end());
  return {seen.begin(), seen.end()};
}

}  // namespace

mpq_class rho(const SumDistribution& d) { return dyadic(d.max_numerator(), d.n()); }

mpq_class rho(const VectorSequence& a, const ExecConfig& cfg) { return rho(SumDistribution::compute(a, cfg)); }

mpq_class prob_in_set(const SumDistribution& d, const MembershipSet& s, const ExecConfig& cfg) {
  if (s.k() != d.k()) throw std::invalid_argument("set dimension does not match the vectors");
  if (const auto* f = std::get_if<FinitePointSet>(&s.value())) {
    std::uint64_t total = 0;
    for (const auto& p : distinct(f->points)) total += d.numerator(p);
    return dyadic(total, d.n());
  }
  const std::size_t size = d.support_size();
  const std::size_t chunks = std::min(size, kScanChunks);
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_chunks(size, chunks, cfg.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      if (s.contains(d.point(i))) partial[c] += d.numerator_at(i);
  });
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return dyadic(total, d.n());
}

mpq_class prob_in_set(const VectorSequence& a, const MembershipSet& s, const ExecConfig& cfg) {
  if (s.is_empty_set()) return 0;
  return prob_in_set(SumDistribution::compute(a, cfg), s, cfg);
}

TranslateResult rho_translate_lower_bound(const SumDistribution& d, const MembershipSet& s,
                                          const std::vector<ExactVector>& candidates, const ExecConfig& cfg) {
  if (candidates.empty()) return {prob_in_set(d, s, cfg), zero_vector(d.k())};
  TranslateResult best{-1, {}};
  for (const auto& x : candidates) {
    mpq_class p = prob_in_set(d, s.translated(x), cfg);
    if (p > best.probability) best = {p, x};
  }
  return best;
}

TranslateResult rho_translate_lower_bound(const VectorSequence& a, const MembershipSet& s,
                                          const std::vector<ExactVector>& candidates, const ExecConfig& cfg) {
  return rho_translate_lower_bound(SumDistribution::compute(a, cfg), s, candidates, cfg);
}

std::vector<ExactVector> default_translate_candidates(const SumDistribution& d, const std::vector<ExactVector>& witness) {
  std::set<ExactVector> out;
  d.for_each([&](const ExactVector& y, std::uint64_t) {
    for (const auto& w : witness) out.insert(y - w);
  });
  return {out.begin(), out.end()};
}

TranslateResult rho_finite_set(const SumDistribution& d, const std::vector<ExactVector>& s, const ExecConfig& cfg) {
  auto pts = distinct(s);
  for (const auto& p : pts)
    if (p.size() != d.k()) throw std::invalid_argument("set dimension does not match the vectors");
  if (pts.empty()) return {0, zero_vector(d.k())};
  if (static_cast<double>(d.support_size()) * static_cast<double>(pts.size()) > static_cast<double>(cfg.max_pair_work))
    throw BudgetExceeded("rho_finite_set: support x |S| exceeds the pair-work limit");
  // P[X in S + x] = sum_s P[X = s + x]; only x = y - s with y in the support can be positive.
  std::map<ExactVector, std::uint64_t> mass;
  d.for_each([&](const ExactVector& y, std::uint64_t m) {
    for (const auto& p : pts) mass[y - p] += m;
  });
  auto best = mass.begin();
  for (auto it = mass.begin(); it != mass.end(); ++it)
    if (it->second > best->second) best = it;
  return {dyadic(best->second, d.n()), best->first};
}

TranslateResult rho_finite_set(const VectorSequence& a, const std::vector<ExactVector>& s, const ExecConfig& cfg) {
  return rho_finite_set(SumDistribution::compute(a, cfg), s, cfg);
}

mpq_class rho_subspace(const VectorSequence& a, const std::vector<ExactVector>& subspace, const ExecConfig& cfg) {
  for (const auto& v : subspace)
    if (v.size() != a.k()) throw std::invalid_argument("subspace vector has the wrong dimension");
  ExactMatrix pi = quotient_map(span_basis(subspace, a.k()), a.k());
  return rho(a.mapped(pi), cfg);
}

McEstimate wilson(std::uint64_t hits, std::uint64_t trials) {
  McEstimate e;
  e.hits = hits;
  e.trials = trials;
  if (trials == 0) return e;
  const double z = 2.5758;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  e.estimate = p;
  e.lower = std::max(0.0, centre - half);
  e.upper = std::min(1.0, centre + half);
  return e;
}

McEstimate monte_carlo_prob(const VectorSequence& a, const MembershipSet& s, std::uint64_t trials, std::uint64_t seed,
                            const ExecConfig& cfg) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_prob needs at least one trial");
  if (s.k() != a.k()) throw std::invalid_argument("set dimension does not match the vectors");
  if (s.is_empty_set()) return wilson(0, trials);
  const std::size_t blocks = static_cast<std::size_t>((trials + kMcBlock - 1) / kMcBlock);
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_chunks(blocks, blocks, cfg.threads, [&](std::size_t b, std::size_t, std::size_t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    const std::uint64_t count = std::min<std::uint64_t>(kMcBlock, trials - b * kMcBlock);
    for (std::uint64_t t = 0; t < count; ++t) {
      ExactVector x = zero_vector(a.k());
      std::uint64_t bits = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i % 64 == 0) bits = rng();
        bool negative = (bits >> (i % 64)) & 1u;
        for (std::size_t j = 0; j < a.k(); ++j) {
          if (negative) x[j] -= a[i][j];
          else x[j] += a[i][j];
        }
      }
      if (s.contains(x)) ++hits[b];
    }
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return wilson(total, trials);
}

}  // namespace lolab
