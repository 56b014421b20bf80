#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "courtfilter/activity_filter.hpp"
#include "courtfilter/geometry.hpp"
#include "courtfilter/timeline.hpp"

namespace courtfilter {

enum class Phase : std::uint8_t { kOffense, kDefense, kTransition };

std::string_view phase_name(Phase phase) noexcept;  // "O", "D", "Tr"

struct SideConfig {
  // When absent, sides never swap unless infer_halftime supplies a value.
  std::optional<Millis> halftime_ms;
  bool attack_positive_x_first_half = true;
};

// Midpoint of the widest gap between consecutive kept rows; nullopt with
// fewer than two rows.
std::optional<Millis> infer_halftime(std::span<const Millis> kept_ms);

// Team centroid per selected row.
std::vector<Vec2> team_centroids(const GameTimeline& timeline,
                                 const Selection& selection);

// Tr inside the closed band |x| <= transition_half_width, otherwise O on the
// side the team attacks in the current half and D on the other.
Phase classify(double centroid_x, Millis ms, const CourtSpec& court,
               const SideConfig& sides) noexcept;

std::vector<Phase> label_phases(std::span<const Vec2> centroids,
                                std::span<const Millis> ms,
                                const CourtSpec& court, const SideConfig& sides);
std::vector<Phase> label_phases(const GameTimeline& timeline,
                                const Selection& selection,
                                const CourtSpec& court, const SideConfig& sides);

struct ActionSegment {
  int act_id = 0;
  Millis start_ms = 0;
  Millis end_ms = 0;
  std::size_t first = 0;  // index into the selection, inclusive
  std::size_t last = 0;   // inclusive
  // O/D label of the committed side; empty when the team never left the band.
  std::optional<Phase> dominant_phase;

  double duration_s() const noexcept {
    return static_cast<double>(end_ms - start_ms) / 1000.0;
  }
};

struct SegmenterOptions {
  // Also split when consecutive rows are further apart than this. Off by
  // default; the split rule is purely spatial.
  std::optional<Millis> max_intra_action_gap_ms;
};

// A new action starts when the committed side (the last side the centroid
// was seen on outside the band) flips. Band frames between sides stay with
// the outgoing action.
std::vector<ActionSegment> assign_actions(std::span<const Vec2> centroids,
                                          std::span<const Millis> ms,
                                          std::span<const Phase> labels,
                                          const CourtSpec& court,
                                          const SegmenterOptions& options = {});

// act_id per selected row, 1-based.
std::vector<int> act_ids(std::span<const ActionSegment> segments,
                         std::size_t rows);

struct DurationWindow {
  double min_s = 4.0;
  double max_s = 38.0;
};

struct ActionSummary {
  std::size_t count = 0;
  std::vector<double> durations_s;
  // Fraction of actions inside the closed window; 0 when there are none.
  double share_in_window = 0.0;
  DurationWindow window;
};

ActionSummary summarize_actions(std::span<const ActionSegment> segments,
                                DurationWindow window = {});
ActionSummary summarize_durations(std::vector<double> durations_s,
                                  DurationWindow window = {});

}  // namespace courtfilter
