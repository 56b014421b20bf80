#pragma once

#include <cmath>
#include <span>

namespace courtfilter {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Where y = 0 sits. The x origin is always the half-court line.
enum class YOrigin {
  kCenter,    // y in [-half_width, half_width]
  kSideline,  // y in [0, 2 * half_width]
};

// Court model. Defaults follow FIBA: 28 m x 15 m, free-throw line 5.8 m from
// the baseline, free-throw circle radius 1.8 m.
struct CourtSpec {
  double half_length = 14.0;
  double half_width = 7.5;
  double ft_circle_center_abs_x = 8.2;
  double ft_circle_radius = 1.8;
  double transition_half_width = 4.0;
  bool attack_positive_x_first_half = true;
  YOrigin y_origin = YOrigin::kCenter;

  // Throws InputError when a length is non-positive or a feature does not
  // fit inside the court.
  void validate() const;

  // y coordinate of the long axis through both baskets.
  double center_y() const noexcept {
    return y_origin == YOrigin::kCenter ? 0.0 : half_width;
  }
  double area() const noexcept { return 4.0 * half_length * half_width; }
};

bool on_court(Vec2 p, const CourtSpec& court) noexcept;
bool in_ft_circle(Vec2 p, const CourtSpec& court) noexcept;

inline double speed(Vec2 v) noexcept { return std::hypot(v.x, v.y); }

// m/s -> km/h
inline double kmh(double meters_per_second) noexcept {
  return meters_per_second * 3.6;
}

inline double pair_distance(Vec2 a, Vec2 b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Component-wise mean. Throws ContractError unless exactly five points are
// given; callers select the on-court lineup first.
Vec2 mean_position(std::span<const Vec2> lineup);

// Monotone-chain hull plus shoelace. Fewer than three non-collinear points
// give zero.
double convex_hull_area(std::span<const Vec2> points);

}  // namespace courtfilter
