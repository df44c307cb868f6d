#include "lolab/geometry.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lolab/errors.hpp"

namespace lolab {

namespace {

std::vector<mpq_class> real_coords(const ExactVector& v) {
  std::vector<mpq_class> out;
  for (const auto& c : v) {
    if (!c.is_real()) throw std::invalid_argument("convex geometry needs real coordinates");
    out.push_back(c.re());
  }
  return out;
}

// Phase one of the simplex method with Bland's rule: is {lambda >= 0 : A lambda = b} nonempty?
bool feasible(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
  const std::size_t rows = a.size();
  const std::size_t vars = rows == 0 ? 0 : a[0].size();
  const std::size_t cols = vars + rows;  // originals, then artificials
  std::vector<std::vector<mpq_class>> t(rows, std::vector<mpq_class>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < vars; ++j) t[i][j] = flip ? mpq_class(-a[i][j]) : a[i][j];
    t[i][vars + i] = 1;
    t[i][cols] = flip ? mpq_class(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = vars + i;
  // Reduced costs of minimizing the sum of artificials.
  std::vector<mpq_class> cost(cols + 1, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < vars || j == cols) cost[j] -= t[i][j];
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    mpq_class best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      mpq_class ratio = t[i][cols] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction cannot occur in phase one
    mpq_class piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      mpq_class f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (sgn(cost[enter]) != 0) {
      mpq_class f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return sgn(cost[cols]) == 0;
}

std::int64_t isqrt(std::int64_t v) {
  if (v < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

using P2 = std::pair<std::int64_t, std::int64_t>;

__int128 cross(const P2& o, const P2& a, const P2& b) {
  return static_cast<__int128>(a.first - o.first) * (b.second - o.second) -
         static_cast<__int128>(a.second - o.second) * (b.first - o.first);
}

}  // namespace

bool in_convex_hull(const ExactVector& p, const std::vector<ExactVector>& others) {
  if (others.empty()) return false;
  auto target = real_coords(p);
  const std::size_t d = target.size();
  std::vector<std::vector<mpq_class>> a(d + 1, std::vector<mpq_class>(others.size()));
  for (std::size_t j = 0; j < others.size(); ++j) {
    if (others[j].size() != d) throw std::invalid_argument("points have different dimensions");
    auto c = real_coords(others[j]);
    for (std::size_t i = 0; i < d; ++i) a[i][j] = c[i];
    a[d][j] = 1;
  }
  target.push_back(1);
  return feasible(std::move(a), std::move(target));
}

ConvexPositionReport is_convex_position(const std::vector<ExactVector>& points) {
  std::vector<std::size_t> first;
  std::set<ExactVector> seen;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (seen.insert(points[i]).second) first.push_back(i);
  ConvexPositionReport rep;
  if (first.size() <= 2) return rep;
  for (auto i : first) {
    std::vector<ExactVector> others;
    for (auto j : first)
      if (j != i) others.push_back(points[j]);
    if (in_convex_hull(points[i], others)) {
      rep.convex = false;
      rep.witness = i;
      return rep;
    }
  }
  return rep;
}

std::vector<P2> hull_2d(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<P2> h(2 * pts.size());
  std::size_t n = 0;
  for (const auto& p : pts) {
    while (n >= 2 && cross(h[n - 2], h[n - 1], p) <= 0) --n;
    h[n++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = n + 1; i-- > 0;) {
    while (n >= lower && cross(h[n - 2], h[n - 1], pts[i]) <= 0) --n;
    h[n++] = pts[i];
  }
  h.resize(n - 1);
  return h;
}

std::vector<P2> ball_hull_2d(std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("radius must be nonnegative");
  if (bound > 3'000'000) throw BudgetExceeded("ball_hull_2d: radius too large");
  const std::int64_t r2 = bound * bound;
  // Every hull vertex is the top or bottom point of its column.
  std::vector<P2> cand;
  for (std::int64_t x = -bound; x <= bound; ++x) {
    std::int64_t h = isqrt(r2 - x * x);
    cand.emplace_back(x, h);
    cand.emplace_back(x, -h);
  }
  return hull_2d(std::move(cand));
}

std::size_t hull_vertices_ball(std::size_t k, std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("radius must be nonnegative");
  const std::int64_t r2 = bound * bound;
  if (k == 2) return ball_hull_2d(bound).size();
  if (k == 3) {
    if (bound > 60) throw BudgetExceeded("hull_vertices_ball: radius too large for k = 3");
    // A vertex is extreme on each of the three axis-parallel lines through it.
    std::vector<std::array<std::int64_t, 3>> cand;
    for (std::int64_t x = -bound; x <= bound; ++x)
      for (std::int64_t y = -bound; y <= bound; ++y) {
        std::int64_t h = isqrt(r2 - x * x - y * y);
        if (h < 0) continue;
        for (std::int64_t z : {h, -h}) {
          if (std::llabs(x) != isqrt(r2 - y * y - z * z) || std::llabs(y) != isqrt(r2 - x * x - z * z)) continue;
          std::array<std::int64_t, 3> p{x, y, z};
          if (cand.empty() || cand.back() != p) cand.push_back(p);
        }
      }
    std::vector<ExactVector> pts;
    for (const auto& p : cand) pts.push_back({GaussianRational(p[0]), GaussianRational(p[1]), GaussianRational(p[2])});
    std::size_t vertices = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<ExactVector> others;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != i) others.push_back(pts[j]);
      if (!in_convex_hull(pts[i], others)) ++vertices;
    }
    return vertices;
  }
  throw std::invalid_argument("hull_vertices_ball supports k = 2 or 3");
}

ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw std::invalid_argument("exponent_fit needs at least three points");
  double sx = 0, sy = 0;
  for (const auto& [b, c] : pairs) {
    if (!(b > 0) || !(c > 0)) throw std::invalid_argument("exponent_fit needs positive B and counts");
    sx += std::log(b);
    sy += std::log(c);
  }
  const double n = static_cast<double>(pairs.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [b, c] : pairs) {
    sxx += (std::log(b) - mx) * (std::log(b) - mx);
    sxy += (std::log(b) - mx) * (std::log(c) - my);
  }
  if (sxx == 0) throw std::invalid_argument("exponent_fit needs at least two distinct B");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& [b, c] : pairs) {
    double e = std::log(c) - (fit.intercept + fit.slope * std::log(b));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace lolab
