#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "courtfilter/timeline.hpp"

namespace courtfilter {

// Wide CSV layout: "ms" then, per roster slot, <id>_pos_x, <id>_pos_y,
// <id>_vel_x, <id>_vel_y. Unobserved players leave their four cells empty.
// Numbers use the shortest representation that round-trips.
void write_wide_matrix(std::ostream& out, const GameTimeline& timeline);

// Inverse of write_wide_matrix. last_update_ms is set to the row's ms since
// the layout does not carry it. An empty stream yields an empty timeline.
GameTimeline read_wide_matrix(std::istream& in, TimelineInfo info = {});

// Shortest round-trip decimal form of a double ("4.28", "0", "15.25").
std::string format_number(double value);

}  // namespace courtfilter
