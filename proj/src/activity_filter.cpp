#include "courtfilter/activity_filter.hpp"

#include <algorithm>
#include <cmath>

#include "courtfilter/error.hpp"

namespace courtfilter {

void FilterParams::validate() const {
  if (!(h1_s > 0.0)) throw InputError("h1 must be positive");
  if (!(h2_kmh > 0.0)) throw InputError("h2 must be positive");
  if (!(h3_s > 0.0)) throw InputError("h3 must be positive");
  if (run_gap_break_ms <= 0) throw InputError("run gap break must be positive");
  if (active_gap_cap_ms <= 0) throw InputError("active gap cap must be positive");
}

std::vector<std::string> FilterParams::feasibility_warnings() const {
  std::vector<std::string> out;
  if (h2_kmh <= 8.0) {
    out.push_back("h2 <= 8 km/h: walking players would count as stopped");
  }
  if (h3_s <= 1.0) {
    out.push_back("h3 <= 1 s: short live-ball pauses would be dropped");
  }
  return out;
}

Millis FilterParams::h1_ms() const { return std::llround(h1_s * 1000.0); }
Millis FilterParams::h3_ms() const { return std::llround(h3_s * 1000.0); }

namespace detail {

std::vector<bool> drop_long_runs(std::span<const Millis> ms,
                                 const std::vector<bool>& flagged,
                                 Millis min_duration_ms, Millis gap_break_ms) {
  const std::size_t n = ms.size();
  std::vector<bool> keep(n, true);
  std::size_t i = 0;
  while (i < n) {
    if (!flagged[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && flagged[j + 1] && ms[j + 1] - ms[j] <= gap_break_ms) {
      ++j;
    }
    if (ms[j] - ms[i] >= min_duration_ms) {
      std::fill(keep.begin() + static_cast<std::ptrdiff_t>(i),
                keep.begin() + static_cast<std::ptrdiff_t>(j + 1), false);
    }
    i = j + 1;
  }
  return keep;
}

std::vector<double> max_lineup_speed_kmh(const GameTimeline& timeline,
                                         const Selection& input) {
  std::vector<double> out(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    double fastest = 0.0;
    for (auto slot : input.lineups[i]) {
      fastest = std::max(fastest, kmh(speed(timeline.state(input.rows[i], slot).vel)));
    }
    out[i] = fastest;
  }
  return out;
}

std::vector<Millis> selected_ms(const GameTimeline& timeline,
                                const Selection& input) {
  std::vector<Millis> out(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out[i] = timeline.ms(input.rows[i]);
  }
  return out;
}

Selection keep(const Selection& input, const std::vector<bool>& mask) {
  Selection out;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (mask[i]) {
      out.rows.push_back(input.rows[i]);
      out.lineups.push_back(input.lineups[i]);
    }
  }
  return out;
}

}  // namespace detail

Selection step_1a(const GameTimeline& timeline, const CourtSpec& court) {
  Selection out;
  const std::size_t k = timeline.roster_size();
  for (std::size_t row = 0; row < timeline.size(); ++row) {
    Lineup lineup{};
    std::size_t count = 0;
    for (std::size_t slot = 0; slot < k && count <= 5; ++slot) {
      const PlayerState& s = timeline.state(row, slot);
      if (s.observed && on_court(s.pos, court)) {
        if (count < 5) {
          lineup[count] = static_cast<std::uint16_t>(slot);
        }
        ++count;
      }
    }
    if (count == 5) {
      out.rows.push_back(row);
      out.lineups.push_back(lineup);
    }
  }
  return out;
}

Selection step_1b(const GameTimeline& timeline, const Selection& input,
                  const CourtSpec& court, const FilterParams& params) {
  std::vector<bool> flagged(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    const auto& lineup = input.lineups[i];
    flagged[i] = std::any_of(lineup.begin(), lineup.end(), [&](std::uint16_t slot) {
      return in_ft_circle(timeline.state(input.rows[i], slot).pos, court);
    });
  }
  const auto ms = detail::selected_ms(timeline, input);
  return detail::keep(input, detail::drop_long_runs(ms, flagged, params.h1_ms(),
                                                    params.run_gap_break_ms));
}

Selection step_1c(const GameTimeline& timeline, const Selection& input,
                  const FilterParams& params) {
  const auto fastest = detail::max_lineup_speed_kmh(timeline, input);
  std::vector<bool> slow(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    slow[i] = fastest[i] < params.h2_kmh;
  }
  const auto ms = detail::selected_ms(timeline, input);
  return detail::keep(input, detail::drop_long_runs(ms, slow, params.h3_ms(),
                                                    params.run_gap_break_ms));
}

double active_minutes(const GameTimeline& timeline,
                      std::span<const std::size_t> rows, Millis gap_cap_ms) {
  Millis total = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    total += std::min(timeline.ms(rows[i]) - timeline.ms(rows[i - 1]), gap_cap_ms);
  }
  return static_cast<double>(total) / 60000.0;
}

FilterResult run_filter(const GameTimeline& timeline, const CourtSpec& court,
                        const FilterParams& params) {
  FilterResult result;
  FilterReport& report = result.report;
  report.rows_in = timeline.size();
  if (timeline.empty()) {
    return result;
  }
  Selection a = step_1a(timeline, court);
  Selection b = step_1b(timeline, a, court, params);
  Selection c = step_1c(timeline, b, params);
  report.rows_removed_1a = timeline.size() - a.size();
  report.rows_removed_1b = a.size() - b.size();
  report.rows_removed_1c = b.size() - c.size();
  report.rows_out = c.size();
  report.active_minutes = active_minutes(timeline, c.rows, params.active_gap_cap_ms);
  result.selection = std::move(c);
  return result;
}

Selection select_all(const GameTimeline& reduced, const CourtSpec& court) {
  Selection all = step_1a(reduced, court);
  if (all.size() != reduced.size()) {
    std::size_t bad = 0;
    while (bad < all.size() && all.rows[bad] == bad) {
      ++bad;
    }
    throw ContractError("frame at ms " + std::to_string(reduced.ms(bad)) +
                        " does not have exactly 5 players on court");
  }
  return all;
}

}  // namespace courtfilter
