#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "courtfilter/geometry.hpp"
#include "courtfilter/timeline.hpp"

namespace courtfilter {

struct FilterParams {
  double h1_s = 10.0;    // free-throw dwell
  double h2_kmh = 9.0;   // all-players speed threshold
  double h3_s = 2.5;     // slow-run duration
  Millis run_gap_break_ms = 1000;
  Millis active_gap_cap_ms = 1000;

  // Throws InputError on non-positive thresholds.
  void validate() const;

  // Values outside the ranges a real game supports (h2 <= 8 km/h, h3 <= 1 s).
  // These are allowed but worth reporting.
  std::vector<std::string> feasibility_warnings() const;

  Millis h1_ms() const;
  Millis h3_ms() const;
};

struct FilterReport {
  std::size_t rows_in = 0;
  std::size_t rows_removed_1a = 0;
  std::size_t rows_removed_1b = 0;
  std::size_t rows_removed_1c = 0;
  std::size_t rows_out = 0;
  double active_minutes = 0.0;
};

// Rows of a source timeline kept by the filter, with the five on-court
// players of each. Rows ascend; lineups is parallel to rows.
struct Selection {
  std::vector<std::size_t> rows;
  std::vector<Lineup> lineups;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
};

// Keeps the frames with exactly five players on court.
Selection step_1a(const GameTimeline& timeline, const CourtSpec& court);

// Drops every run of free-throw-circle frames lasting at least h1.
Selection step_1b(const GameTimeline& timeline, const Selection& input,
                  const CourtSpec& court, const FilterParams& params);

// Drops every run of all-slow frames lasting at least h3.
Selection step_1c(const GameTimeline& timeline, const Selection& input,
                  const FilterParams& params);

struct FilterResult {
  Selection selection;
  FilterReport report;
};

FilterResult run_filter(const GameTimeline& timeline, const CourtSpec& court,
                        const FilterParams& params);

// Sum of min(gap, cap) over consecutive kept rows, in minutes.
double active_minutes(const GameTimeline& timeline,
                      std::span<const std::size_t> rows, Millis gap_cap_ms);

// Every frame of a reduced timeline must hold exactly five on-court
// players; throws ContractError naming the first row that does not.
Selection select_all(const GameTimeline& reduced, const CourtSpec& court);

namespace detail {

// Per-row flag in, keep-mask out: marks rows inside flagged runs of at least
// min_duration_ms for removal. Runs break on gaps above gap_break_ms.
std::vector<bool> drop_long_runs(std::span<const Millis> ms,
                                 const std::vector<bool>& flagged,
                                 Millis min_duration_ms, Millis gap_break_ms);

// Fastest on-court player per selected row, km/h.
std::vector<double> max_lineup_speed_kmh(const GameTimeline& timeline,
                                         const Selection& input);

std::vector<Millis> selected_ms(const GameTimeline& timeline,
                                const Selection& input);

Selection keep(const Selection& input, const std::vector<bool>& mask);

}  // namespace detail

}  // namespace courtfilter
