#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "courtfilter/activity_filter.hpp"
#include "courtfilter/geometry.hpp"
#include "courtfilter/timeline.hpp"

namespace cftest {

using namespace courtfilter;

struct Player {
  Vec2 pos;
  Vec2 vel;
};

inline PlayerState seen(Vec2 pos, Vec2 vel = {}) {
  PlayerState s;
  s.pos = pos;
  s.vel = vel;
  s.observed = true;
  return s;
}

inline std::vector<std::string> roster_of(std::size_t k) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < k; ++i) ids.push_back("p" + std::to_string(10 + i));
  return ids;
}

// Velocity along x giving the requested speed in km/h.
inline Vec2 kmh_vel(double kmh_value) { return {kmh_value / 3.6, 0.0}; }

// Five players around a centroid, all moving at the given speed.
inline std::vector<PlayerState> five_at(Vec2 center, double speed_kmh) {
  static constexpr Vec2 kOffsets[5] = {{0, 0}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
  std::vector<PlayerState> out;
  for (const auto& o : kOffsets) {
    out.push_back(seen({center.x + o.x, center.y + o.y}, kmh_vel(speed_kmh)));
  }
  return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("courtfilter_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Small random game: seven players, some substitution frames, free-throw
// dwells and slow stretches of varying speed, irregular sampling with the
// odd long gap.
inline GameTimeline random_timeline(std::mt19937_64& rng, std::size_t frames = 300) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CourtSpec court;
  GameTimeline tl(roster_of(7));
  std::vector<std::uint16_t> order{0, 1, 2, 3, 4, 5, 6};
  std::shuffle(order.begin(), order.end(), rng);
  Millis ms = 1000 + static_cast<Millis>(unit(rng) * 100);
  int mode = 0;  // 0 play, 1 slow, 2 free throw
  double slow_cap = 9.0;
  for (std::size_t f = 0; f < frames; ++f) {
    const double r = unit(rng);
    ms += r < 0.8 ? 10 + static_cast<Millis>(unit(rng) * 110)
          : r < 0.97 ? 120 + static_cast<Millis>(unit(rng) * 500)
                     : 900 + static_cast<Millis>(unit(rng) * 1500);
    if (unit(rng) < 0.06) {
      mode = static_cast<int>(unit(rng) * 3);
      slow_cap = 7.0 + unit(rng) * 5.0;
    }
    if (unit(rng) < 0.02) std::swap(order[static_cast<std::size_t>(unit(rng) * 5)], order[5]);
    int on_count = 5;
    const double odd = unit(rng);
    if (odd < 0.02) on_count = 4;
    if (odd > 0.98) on_count = 6;

    std::vector<PlayerState> states(7);
    const double side = unit(rng) < 0.5 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < 7; ++i) {
      const auto slot = order[i];
      const bool on = static_cast<int>(i) < on_count;
      Vec2 pos = on ? Vec2{(unit(rng) * 2 - 1) * court.half_length, (unit(rng) * 2 - 1) * 6.0}
                    : Vec2{0.0, 9.0};
      if (on && mode != 2 && in_ft_circle(pos, court)) pos.y = 5.0;
      if (on && mode == 2 && i == 0) pos = {side * 8.2 + unit(rng) * 0.5, unit(rng) * 0.5};
      double speed_kmh = 0.0;
      if (mode == 1) {
        speed_kmh = unit(rng) * slow_cap;
      } else {
        speed_kmh = unit(rng) * 25.0;
        if (i == 0) speed_kmh = 12.0 + unit(rng) * 10.0;
      }
      const double angle = unit(rng) * 6.283185307179586;
      states[slot] = seen(pos, {speed_kmh / 3.6 * std::cos(angle), speed_kmh / 3.6 * std::sin(angle)});
      if (f < 2 && i == 6) states[slot].observed = false;
    }
    tl.append(ms, states);
  }
  return tl;
}

}  // namespace cftest
