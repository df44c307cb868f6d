#include "lolab/distribution.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "lolab/errors.hpp"
#include "lolab/parallel.hpp"

namespace lolab {

namespace {

constexpr std::size_t kMergeChunks = 64;
constexpr std::size_t kParallelThreshold = 1 << 16;

int cmp(std::int64_t a, std::int64_t b) { return (a > b) - (a < b); }
int cmp(const mpz_class& a, const mpz_class& b) {
  int c = ::cmp(a, b);
  return (c > 0) - (c < 0);
}

template <typename C>
int compare_keys(const C* a, const C* b, std::size_t stride) {
  for (std::size_t j = 0; j < stride; ++j)
    if (int c = cmp(a[j], b[j])) return c;
  return 0;
}

template <typename C>
C from_mpz(const mpz_class& z) {
  if constexpr (std::is_same_v<C, std::int64_t>) {
    return static_cast<std::int64_t>(z.get_si());
  } else {
    return z;
  }
}

template <typename C>
mpz_class to_mpz(const C& c) {
  if constexpr (std::is_same_v<C, std::int64_t>) {
    return mpz_class(static_cast<long>(c));
  } else {
    return c;
  }
}

// Merges (prev + a) and (prev - a) restricted to one key range into `keys`/`weights`.
template <typename C>
void merge_range(const std::vector<C>& prev, const std::vector<std::uint64_t>& w, const std::vector<C>& a,
                 std::size_t stride, std::size_t p_begin, std::size_t p_end, std::size_t m_begin, std::size_t m_end,
                 std::vector<C>& keys, std::vector<std::uint64_t>& weights) {
  std::vector<C> plus(stride), minus(stride);
  auto load = [&](std::vector<C>& dst, std::size_t idx, bool add) {
    for (std::size_t j = 0; j < stride; ++j) dst[j] = add ? C(prev[idx * stride + j] + a[j]) : C(prev[idx * stride + j] - a[j]);
  };
  std::size_t p = p_begin, m = m_begin;
  if (p < p_end) load(plus, p, true);
  if (m < m_end) load(minus, m, false);
  while (p < p_end || m < m_end) {
    int c = p >= p_end ? 1 : m >= m_end ? -1 : compare_keys(plus.data(), minus.data(), stride);
    if (c <= 0) {
      keys.insert(keys.end(), plus.begin(), plus.end());
      weights.push_back(w[p] + (c == 0 ? w[m] : 0));
      if (c == 0 && ++m < m_end) load(minus, m, false);
      if (++p < p_end) load(plus, p, true);
    } else {
      keys.insert(keys.end(), minus.begin(), minus.end());
      weights.push_back(w[m]);
      if (++m < m_end) load(minus, m, false);
    }
  }
}

}  // namespace

mpq_class dyadic(std::uint64_t numerator, std::size_t n) {
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(n);
  mpq_class q(mpz_class(std::to_string(numerator)), den);
  q.canonicalize();
  return q;
}

template <typename C>
SumDistribution::Table<C> SumDistribution::convolve(const VectorSequence& a, const mpz_class& scale,
                                                    const ExecConfig& cfg) {
  const std::size_t stride = 2 * a.k();
  Table<C> t;
  t.keys.assign(stride, C(0));
  t.weights.assign(1, 1);
  std::vector<C> shift(stride);
  for (const auto& v : a) {
    for (std::size_t j = 0; j < a.k(); ++j) {
      mpq_class re = v[j].re() * scale, im = v[j].im() * scale;
      shift[2 * j] = from_mpz<C>(re.get_num());
      shift[2 * j + 1] = from_mpz<C>(im.get_num());
    }
    const std::size_t size = t.weights.size();
    const std::size_t chunks = size >= kParallelThreshold ? kMergeChunks : 1;
    // Chunk c takes plus-indices [size*c/chunks, size*(c+1)/chunks) and the minus
    // entries below the next chunk's first plus key, so equal keys never straddle chunks.
    std::vector<std::size_t> minus_cut(chunks + 1, size);
    minus_cut[0] = 0;
    std::vector<C> probe(stride), cand(stride);
    for (std::size_t c = 1; c < chunks; ++c) {
      std::size_t b = size * c / chunks;
      for (std::size_t j = 0; j < stride; ++j) probe[j] = t.keys[b * stride + j] + shift[j];
      std::size_t lo = 0, hi = size;
      while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        for (std::size_t j = 0; j < stride; ++j) cand[j] = t.keys[mid * stride + j] - shift[j];
        if (compare_keys(cand.data(), probe.data(), stride) < 0) lo = mid + 1;
        else hi = mid;
      }
      minus_cut[c] = lo;
    }
    std::vector<Table<C>> parts(chunks);
    parallel_chunks(chunks, chunks, cfg.threads, [&](std::size_t c, std::size_t, std::size_t) {
      std::size_t p_end = c + 1 == chunks ? size : size * (c + 1) / chunks;
      merge_range(t.keys, t.weights, shift, stride, size * c / chunks, p_end, minus_cut[c], minus_cut[c + 1],
                  parts[c].keys, parts[c].weights);
    });
    Table<C> next;
    std::size_t total = 0;
    for (const auto& part : parts) total += part.weights.size();
    if (total > cfg.max_support)
      throw BudgetExceeded("sum_distribution: support " + std::to_string(total) + " exceeds limit " +
                           std::to_string(cfg.max_support));
    next.keys.reserve(total * stride);
    next.weights.reserve(total);
    for (auto& part : parts) {
      next.keys.insert(next.keys.end(), std::make_move_iterator(part.keys.begin()),
                       std::make_move_iterator(part.keys.end()));
      next.weights.insert(next.weights.end(), part.weights.begin(), part.weights.end());
    }
    t = std::move(next);
  }
  return t;
}

SumDistribution SumDistribution::compute(const VectorSequence& a, const ExecConfig& cfg) {
  if (a.size() > cfg.max_summands || a.size() > 62)
    throw BudgetExceeded("sum_distribution: n = " + std::to_string(a.size()) + " exceeds limit " +
                         std::to_string(std::min<std::size_t>(cfg.max_summands, 62)));
  SumDistribution d;
  d.n_ = a.size();
  d.k_ = a.k();
  for (const auto& v : a)
    for (const auto& x : v) d.scale_ = lcm(d.scale_, lcm_denominator(x));
  // Coordinates of every partial sum are bounded by the sum of absolute values.
  mpz_class bound = 0;
  for (std::size_t j = 0; j < a.k(); ++j) {
    mpz_class re = 0, im = 0;
    for (const auto& v : a) {
      mpq_class r = abs(v[j].re()) * d.scale_, i = abs(v[j].im()) * d.scale_;
      re += r.get_num();
      im += i.get_num();
    }
    bound = std::max({bound, re, im});
  }
  mpz_class limit = 1;
  limit <<= 62;
  if (bound < limit) d.table_ = convolve<std::int64_t>(a, d.scale_, cfg);
  else d.table_ = convolve<mpz_class>(a, d.scale_, cfg);
  return d;
}

std::size_t SumDistribution::support_size() const {
  return std::visit([](const auto& t) { return t.weights.size(); }, table_);
}

ExactVector SumDistribution::point(std::size_t index) const {
  return std::visit(
      [&](const auto& t) {
        ExactVector x(k_);
        for (std::size_t j = 0; j < k_; ++j)
          x[j] = GaussianRational(mpq_class(to_mpz(t.keys[index * 2 * k_ + 2 * j]), scale_),
                                  mpq_class(to_mpz(t.keys[index * 2 * k_ + 2 * j + 1]), scale_));
        return x;
      },
      table_);
}

std::uint64_t SumDistribution::numerator_at(std::size_t index) const {
  return std::visit([&](const auto& t) { return t.weights.at(index); }, table_);
}

bool SumDistribution::scaled_key(const ExactVector& x, std::vector<mpz_class>& out) const {
  if (x.size() != k_) throw std::invalid_argument("point dimension does not match distribution");
  out.clear();
  for (const auto& c : x) {
    mpq_class re = c.re() * scale_, im = c.im() * scale_;
    if (re.get_den() != 1 || im.get_den() != 1) return false;
    out.push_back(re.get_num());
    out.push_back(im.get_num());
  }
  return true;
}

std::uint64_t SumDistribution::numerator(const ExactVector& x) const {
  std::vector<mpz_class> key;
  if (!scaled_key(x, key)) return 0;
  return std::visit(
      [&](const auto& t) -> std::uint64_t {
        using C = typename std::decay_t<decltype(t.keys)>::value_type;
        const std::size_t stride = 2 * k_;
        std::vector<C> probe(stride);
        for (std::size_t j = 0; j < stride; ++j) {
          if constexpr (std::is_same_v<C, std::int64_t>) {
            if (!key[j].fits_slong_p()) return 0;
          }
          probe[j] = from_mpz<C>(key[j]);
        }
        std::size_t lo = 0, hi = t.weights.size();
        while (lo < hi) {
          std::size_t mid = lo + (hi - lo) / 2;
          int c = stride == 0 ? 0 : compare_keys(&t.keys[mid * stride], probe.data(), stride);
          if (c == 0) return t.weights[mid];
          if (c < 0) lo = mid + 1;
          else hi = mid;
        }
        return 0;
      },
      table_);
}

mpq_class SumDistribution::probability(const ExactVector& x) const { return dyadic(numerator(x), n_); }

std::uint64_t SumDistribution::max_numerator() const {
  return std::visit([](const auto& t) { return *std::max_element(t.weights.begin(), t.weights.end()); }, table_);
}

void SumDistribution::for_each(const std::function<void(const ExactVector&, std::uint64_t)>& f) const {
  for (std::size_t i = 0; i < support_size(); ++i) f(point(i), numerator_at(i));
}

void SumDistribution::write_csv(std::ostream& os) const {
  for (std::size_t j = 0; j < k_; ++j) os << "x" << (j + 1) << ',';
  os << "numerator,n\n";
  for_each([&](const ExactVector& x, std::uint64_t m) {
    for (const auto& c : x) os << c.str() << ',';
    os << m << ',' << n_ << '\n';
  });
}

bool operator==(const SumDistribution& a, const SumDistribution& b) {
  if (a.n_ != b.n_ || a.k_ != b.k_ || a.support_size() != b.support_size()) return false;
  for (std::size_t i = 0; i < a.support_size(); ++i)
    if (a.numerator_at(i) != b.numerator_at(i) || a.point(i) != b.point(i)) return false;
  return true;
}

}  // namespace lolab
