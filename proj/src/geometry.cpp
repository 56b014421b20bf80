#include "courtfilter/geometry.hpp"

#include <algorithm>
#include <vector>

#include "courtfilter/error.hpp"

namespace courtfilter {

void CourtSpec::validate() const {
  if (!(half_length > 0.0) || !(half_width > 0.0) ||
      !(ft_circle_center_abs_x > 0.0) || !(ft_circle_radius > 0.0) ||
      !(transition_half_width > 0.0)) {
    throw InputError("court lengths must be strictly positive");
  }
  if (ft_circle_center_abs_x + ft_circle_radius >= half_length) {
    throw InputError("free-throw circle does not fit inside the court");
  }
  if (transition_half_width >= half_length) {
    throw InputError("transition band is wider than the court");
  }
}

bool on_court(Vec2 p, const CourtSpec& court) noexcept {
  if (std::abs(p.x) > court.half_length) {
    return false;
  }
  return std::abs(p.y - court.center_y()) <= court.half_width;
}

bool in_ft_circle(Vec2 p, const CourtSpec& court) noexcept {
  const double cy = court.center_y();
  const double r = court.ft_circle_radius;
  const double cx = court.ft_circle_center_abs_x;
  return pair_distance(p, {cx, cy}) <= r || pair_distance(p, {-cx, cy}) <= r;
}

Vec2 mean_position(std::span<const Vec2> lineup) {
  if (lineup.size() != 5) {
    throw ContractError("mean_position needs exactly 5 on-court players, got " +
                        std::to_string(lineup.size()));
  }
  Vec2 sum;
  for (const Vec2& p : lineup) {
    sum.x += p.x;
    sum.y += p.y;
  }
  return {sum.x / 5.0, sum.y / 5.0};
}

namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

double convex_hull_area(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) {
    return 0.0;
  }

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    return 0.0;
  }

  double twice = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % hull.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) * 0.5;
}

}  // namespace courtfilter
