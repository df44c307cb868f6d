#include "lolab/gap.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "lolab/errors.hpp"
#include "lolab/parallel.hpp"

namespace lolab {

namespace {

constexpr std::size_t kEnumChunks = 64;
constexpr std::uint64_t kMcBlock = 4096;

std::uint64_t checked_volume(const SymmetricGAP& q, const ExecConfig& cfg, const char* what) {
  mpz_class v = q.volume();
  if (v > mpz_class(std::to_string(cfg.max_enumeration)))
    throw BudgetExceeded(std::string(what) + ": volume " + v.get_str() + " exceeds the enumeration limit");
  return std::stoull(v.get_str());
}

// Mixed-radix decoding of a flat index into a coefficient tuple, first coordinate most significant.
Coefficients decode(std::uint64_t index, const std::vector<std::int64_t>& radii) {
  Coefficients c(radii.size());
  for (std::size_t i = radii.size(); i-- > 0;) {
    auto base = static_cast<std::uint64_t>(2 * radii[i] + 1);
    c[i] = static_cast<std::int64_t>(index % base) - radii[i];
    index /= base;
  }
  return c;
}

}  // namespace

SymmetricGAP::SymmetricGAP(std::size_t k_, std::vector<ExactVector> gens, std::vector<std::int64_t> q)
    : k(k_), generators(std::move(gens)), radii(std::move(q)) {
  if (generators.size() != radii.size()) throw std::invalid_argument("GAP needs one radius per generator");
  for (const auto& g : generators)
    if (g.size() != k) throw std::invalid_argument("GAP generator has the wrong dimension");
  for (auto r : radii)
    if (r < 1) throw std::invalid_argument("GAP radii must be positive integers");
}

mpz_class SymmetricGAP::volume() const {
  mpz_class v = 1;
  for (auto r : radii) v *= 2 * r + 1;
  return v;
}

ExactVector SymmetricGAP::evaluate(const Coefficients& c) const {
  if (c.size() != rank()) throw std::invalid_argument("coefficient tuple has the wrong length");
  ExactVector x = zero_vector(k);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) x = x + GaussianRational(static_cast<long>(c[i])) * generators[i];
  return x;
}

bool SymmetricGAP::in_box(const Coefficients& c) const {
  if (c.size() != rank()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] < -radii[i] || c[i] > radii[i]) return false;
  return true;
}

std::vector<std::pair<ExactVector, Coefficients>> enumerate_gap(const SymmetricGAP& q, const ExecConfig& cfg) {
  const std::uint64_t volume = checked_volume(q, cfg, "enumerate_gap");
  std::vector<std::pair<ExactVector, Coefficients>> out(volume);
  parallel_chunks(volume, kEnumChunks, cfg.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Coefficients c = decode(i, q.radii);
      out[i] = {q.evaluate(c), std::move(c)};
    }
  });
  return out;
}

ProperReport is_proper(const SymmetricGAP& q, const ExecConfig& cfg) {
  auto all = enumerate_gap(q, cfg);
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  ProperReport r;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].first == all[i - 1].first) {
      r.proper = false;
      r.collision = std::make_pair(all[i - 1].second, all[i].second);
      break;
    }
  return r;
}

std::optional<Coefficients> gap_contains(const SymmetricGAP& q, const ExactVector& x, const ExecConfig& cfg) {
  if (x.size() != q.k) throw std::invalid_argument("point dimension does not match the GAP");
  ExactMatrix m = ExactMatrix::from_columns(q.generators, q.k);
  if (rank(m) == q.rank()) {
    auto sol = solve_linear(m, x);
    if (!sol) return std::nullopt;
    Coefficients c;
    for (const auto& s : *sol) {
      if (!s.is_real() || s.re().get_den() != 1 || !s.re().get_num().fits_slong_p()) return std::nullopt;
      c.push_back(s.re().get_num().get_si());
    }
    if (!q.in_box(c)) return std::nullopt;
    return c;
  }
  const std::uint64_t volume = checked_volume(q, cfg, "gap_contains");
  for (std::uint64_t i = 0; i < volume; ++i) {
    Coefficients c = decode(i, q.radii);
    if (q.evaluate(c) == x) return c;
  }
  return std::nullopt;
}

std::vector<std::int64_t> dilate(const std::vector<std::int64_t>& radii, const mpq_class& t) {
  if (t <= 0) throw std::invalid_argument("dilation factor must be positive");
  std::vector<std::int64_t> out;
  for (auto r : radii) {
    mpq_class s = t * r;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    out.push_back(c.get_si());
  }
  return out;
}

double hoeffding_tail_bound(std::size_t m, std::size_t r, double t) {
  if (m == 0) throw std::invalid_argument("hoeffding_tail_bound needs m >= 1");
  return 2.0 * static_cast<double>(r) * std::exp(-t * t / (2.0 * static_cast<double>(m)));
}

ContainmentReport empirical_containment(const VectorSequence& a, const std::vector<std::int64_t>& radii,
                                        const mpq_class& t, std::uint64_t trials, std::uint64_t seed,
                                        const ExecConfig& cfg) {
  const std::size_t r = radii.size();
  if (a.k() != r) throw std::invalid_argument("vectors must live in Z^r with r = number of radii");
  if (a.empty()) throw std::invalid_argument("empirical_containment needs m >= 1");
  std::vector<std::vector<std::int64_t>> ints(a.size(), std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto& x = a[i][j];
      if (!x.is_real() || x.re().get_den() != 1 || abs(x.re()) > radii[j])
        throw PreconditionError("vector " + std::to_string(i) + " is not an integer point of the box");
      ints[i][j] = x.re().get_num().get_si();
    }
  ContainmentReport rep;
  rep.dilated = dilate(radii, t);
  rep.bound = hoeffding_tail_bound(a.size(), r, t.get_d());
  auto outside = [&](const std::vector<std::int64_t>& s) {
    for (std::size_t j = 0; j < r; ++j)
      if (s[j] < -rep.dilated[j] || s[j] > rep.dilated[j]) return true;
    return false;
  };

  if (trials > 0) {
    const std::size_t blocks = static_cast<std::size_t>((trials + kMcBlock - 1) / kMcBlock);
    std::vector<std::uint64_t> hits(blocks, 0);
    parallel_chunks(blocks, blocks, cfg.threads, [&](std::size_t b, std::size_t, std::size_t) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
      std::mt19937_64 rng(seq);
      const std::uint64_t count = std::min<std::uint64_t>(kMcBlock, trials - b * kMcBlock);
      std::vector<std::int64_t> s(r);
      for (std::uint64_t trial = 0; trial < count; ++trial) {
        std::fill(s.begin(), s.end(), 0);
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (i % 64 == 0) bits = rng();
          const bool negative = (bits >> (i % 64)) & 1u;
          for (std::size_t j = 0; j < r; ++j) s[j] += negative ? -ints[i][j] : ints[i][j];
        }
        if (outside(s)) ++hits[b];
      }
    });
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    rep.escape = wilson(total, trials);
  }

  if (a.size() <= cfg.max_summands) {
    try {
      auto d = SumDistribution::compute(a, cfg);
      std::uint64_t mass = 0;
      for (std::size_t i = 0; i < d.support_size(); ++i) {
        ExactVector p = d.point(i);
        std::vector<std::int64_t> s(r);
        for (std::size_t j = 0; j < r; ++j) s[j] = p[j].re().get_num().get_si();
        if (outside(s)) mass += d.numerator_at(i);
      }
      rep.exact_escape = dyadic(mass, d.n());
    } catch (const BudgetExceeded&) {
    }
  }
  return rep;
}

VectorSequence gap_coordinates(const VectorSequence& a, const SymmetricGAP& q, const ExecConfig& cfg) {
  if (a.k() != q.k) throw std::invalid_argument("sequence dimension does not match the GAP");
  std::vector<ExactVector> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto c = gap_contains(q, a[i], cfg);
    if (!c) throw PreconditionError("element " + std::to_string(i) + " is not covered by the GAP");
    ExactVector v;
    for (auto x : *c) v.emplace_back(static_cast<long>(x));
    out.push_back(std::move(v));
  }
  return VectorSequence(q.rank(), std::move(out));
}

CoverageReport coverage_check(const VectorSequence& a, const SymmetricGAP& q, const ExecConfig& cfg) {
  CoverageReport rep;
  rep.volume = q.volume();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!gap_contains(q, a[i], cfg)) rep.outside_indices.push_back(i);
  rep.outside = rep.outside_indices.size();
  return rep;
}

}  // namespace lolab
