#include "courtfilter/calibration.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "courtfilter/error.hpp"

namespace courtfilter {

namespace {

double parse_double(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InputError("malformed grid spec '" + std::string(whole) + "'");
  }
  return value;
}

// Snap to a 1e-9 lattice so 8 + 3 * 0.2 prints as 8.6.
double snap(double v) { return std::round(v * 1e9) / 1e9; }

}  // namespace

GridAxis GridAxis::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  GridAxis axis;
  if (parts.size() == 1) {
    axis.start = axis.stop = parse_double(parts[0], text);
    axis.step = 1.0;
  } else if (parts.size() == 3) {
    axis.start = parse_double(parts[0], text);
    axis.stop = parse_double(parts[1], text);
    axis.step = parse_double(parts[2], text);
  } else {
    throw InputError("malformed grid spec '" + std::string(text) +
                     "', expected start:stop:step");
  }
  if (!(axis.step > 0.0) || axis.start > axis.stop) {
    throw InputError("malformed grid spec '" + std::string(text) +
                     "', need step > 0 and start <= stop");
  }
  return axis;
}

std::vector<double> GridAxis::values() const {
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = snap(start + static_cast<double>(i) * step);
  }
  return out;
}

CalibrationGrid sweep(const GameTimeline& timeline, const CourtSpec& court,
                      const FilterParams& base, const GridSpec& grid,
                      unsigned threads) {
  CalibrationGrid out;
  out.h2_values = grid.h2_kmh.values();
  out.h3_values = grid.h3_s.values();
  const std::size_t n2 = out.h2_values.size();
  const std::size_t n3 = out.h3_values.size();
  out.cells.assign(n2 * n3, 0.0);
  if (timeline.empty()) {
    return out;
  }

  // 1-A and 1-B do not depend on (h2, h3).
  const Selection pre = step_1b(timeline, step_1a(timeline, court), court, base);
  const auto ms = detail::selected_ms(timeline, pre);
  const auto fastest = detail::max_lineup_speed_kmh(timeline, pre);

  auto evaluate_row = [&](std::size_t i) {
    std::vector<bool> slow(ms.size());
    for (std::size_t r = 0; r < ms.size(); ++r) {
      slow[r] = fastest[r] < out.h2_values[i];
    }
    for (std::size_t j = 0; j < n3; ++j) {
      const Millis h3_ms = std::llround(out.h3_values[j] * 1000.0);
      const auto keep = detail::drop_long_runs(ms, slow, h3_ms, base.run_gap_break_ms);
      Millis total = 0;
      bool have_prev = false;
      Millis prev = 0;
      for (std::size_t r = 0; r < ms.size(); ++r) {
        if (!keep[r]) continue;
        if (have_prev) total += std::min(ms[r] - prev, base.active_gap_cap_ms);
        prev = ms[r];
        have_prev = true;
      }
      out.cells[i * n3 + j] = static_cast<double>(total) / 60000.0;
    }
  };

  unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(n2));
  if (workers == 1) {
    for (std::size_t i = 0; i < n2; ++i) evaluate_row(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n2; i = next++) evaluate_row(i);
    });
  }
  pool.clear();
  return out;
}

Recommendation recommend(const CalibrationGrid& grid, double target_minutes) {
  if (grid.empty()) {
    throw InputError("cannot recommend from an empty grid");
  }
  const double mid2 = 0.5 * (grid.h2_values.front() + grid.h2_values.back());
  const double mid3 = 0.5 * (grid.h3_values.front() + grid.h3_values.back());
  constexpr double kTie = 1e-9;

  Recommendation best;
  double best_err = 0.0;
  double best_center = 0.0;
  bool have = false;
  for (std::size_t i = 0; i < grid.h2_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.h3_values.size(); ++j) {
      const double m = grid.at(i, j);
      const double err = std::abs(m - target_minutes);
      const double center = std::hypot(grid.h2_values[i] - mid2, grid.h3_values[j] - mid3);
      const bool better = !have || err < best_err - kTie ||
                          (err <= best_err + kTie && center < best_center - kTie);
      if (better) {
        best = {grid.h2_values[i], grid.h3_values[j], m};
        best_err = err;
        best_center = center;
        have = true;
      }
    }
  }
  return best;
}

}  // namespace courtfilter
