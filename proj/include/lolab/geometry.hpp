#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lolab/linalg.hpp"

namespace lolab {

struct ConvexPositionReport {
  bool convex = true;
  std::optional<std::size_t> witness;  // input index of a point inside the hull of the others
};

/// Exact LP feasibility per point on real coordinates; repeated points count once.
ConvexPositionReport is_convex_position(const std::vector<ExactVector>& points);

/// True when p lies in the convex hull of `others` (real coordinates).
bool in_convex_hull(const ExactVector& p, const std::vector<ExactVector>& others);

/// Vertices of the convex hull of integer points in the plane, counterclockwise
/// from the lowest-leftmost one; collinear boundary points are not vertices.
std::vector<std::pair<std::int64_t, std::int64_t>> hull_2d(std::vector<std::pair<std::int64_t, std::int64_t>> pts);

/// Hull vertices of Z^2 intersected with the closed disc of radius B.
std::vector<std::pair<std::int64_t, std::int64_t>> ball_hull_2d(std::int64_t bound);

/// Number of vertices of the convex hull of Z^k intersected with the closed ball of radius B (k = 2 or 3).
std::size_t hull_vertices_ball(std::size_t k, std::int64_t bound);

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square of the log residuals
};

/// Least-squares slope of log(count) against log(B). Needs >= 3 pairs with
/// positive B and count and at least two distinct B.
ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& pairs);

}  // namespace lolab
