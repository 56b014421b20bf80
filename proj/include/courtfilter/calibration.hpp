#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "courtfilter/activity_filter.hpp"

namespace courtfilter {

// Inclusive arithmetic range, e.g. "8:11:0.2".
struct GridAxis {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  // Throws InputError unless the text is "start:stop:step" with step > 0 and
  // start <= stop, or a single value.
  static GridAxis parse(std::string_view text);
  std::vector<double> values() const;
};

struct GridSpec {
  GridAxis h2_kmh{8.0, 11.0, 0.2};
  GridAxis h3_s{1.0, 4.0, 0.25};
};

struct CalibrationGrid {
  std::vector<double> h2_values;
  std::vector<double> h3_values;
  // Row-major: cells[i * h3_values.size() + j] is (h2_values[i], h3_values[j]).
  std::vector<double> cells;

  double at(std::size_t h2_index, std::size_t h3_index) const {
    return cells[h2_index * h3_values.size() + h3_index];
  }
  bool empty() const noexcept { return cells.empty(); }
};

// Active minutes for every (h2, h3) cell. Steps 1-A and 1-B run once; cells
// are evaluated on up to `threads` workers (0 = hardware concurrency).
CalibrationGrid sweep(const GameTimeline& timeline, const CourtSpec& court,
                      const FilterParams& base, const GridSpec& grid,
                      unsigned threads = 0);

struct Recommendation {
  double h2_kmh = 0.0;
  double h3_s = 0.0;
  double active_minutes = 0.0;
};

// Cell closest to the target; ties go to the cell nearest the grid's
// midpoint. Throws InputError on an empty grid.
Recommendation recommend(const CalibrationGrid& grid, double target_minutes = 40.0);

}  // namespace courtfilter
