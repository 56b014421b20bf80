#include "courtfilter/action_segmenter.hpp"

#include <cmath>

#include "courtfilter/error.hpp"

namespace courtfilter {

std::string_view phase_name(Phase phase) noexcept {
  switch (phase) {
    case Phase::kOffense: return "O";
    case Phase::kDefense: return "D";
    case Phase::kTransition: return "Tr";
  }
  return "?";
}

std::optional<Millis> infer_halftime(std::span<const Millis> kept_ms) {
  if (kept_ms.size() < 2) {
    return std::nullopt;
  }
  std::size_t widest = 1;
  for (std::size_t i = 2; i < kept_ms.size(); ++i) {
    if (kept_ms[i] - kept_ms[i - 1] > kept_ms[widest] - kept_ms[widest - 1]) {
      widest = i;
    }
  }
  return kept_ms[widest - 1] + (kept_ms[widest] - kept_ms[widest - 1]) / 2;
}

std::vector<Vec2> team_centroids(const GameTimeline& timeline,
                                 const Selection& selection) {
  std::vector<Vec2> out(selection.size());
  for (std::size_t i = 0; i < selection.size(); ++i) {
    out[i] = mean_position(lineup_positions(timeline, selection.rows[i],
                                            selection.lineups[i]));
  }
  return out;
}

Phase classify(double centroid_x, Millis ms, const CourtSpec& court,
               const SideConfig& sides) noexcept {
  if (std::abs(centroid_x) <= court.transition_half_width) {
    return Phase::kTransition;
  }
  bool attack_positive = sides.attack_positive_x_first_half;
  if (sides.halftime_ms && ms >= *sides.halftime_ms) {
    attack_positive = !attack_positive;
  }
  return (centroid_x > 0.0) == attack_positive ? Phase::kOffense : Phase::kDefense;
}

std::vector<Phase> label_phases(std::span<const Vec2> centroids,
                                std::span<const Millis> ms,
                                const CourtSpec& court, const SideConfig& sides) {
  if (centroids.size() != ms.size()) {
    throw ContractError("centroids and timestamps differ in length");
  }
  std::vector<Phase> out(centroids.size());
  for (std::size_t i = 0; i < centroids.size(); ++i) {
    out[i] = classify(centroids[i].x, ms[i], court, sides);
  }
  return out;
}

std::vector<Phase> label_phases(const GameTimeline& timeline,
                                const Selection& selection,
                                const CourtSpec& court, const SideConfig& sides) {
  return label_phases(team_centroids(timeline, selection),
                      detail::selected_ms(timeline, selection), court, sides);
}

std::vector<ActionSegment> assign_actions(std::span<const Vec2> centroids,
                                          std::span<const Millis> ms,
                                          std::span<const Phase> labels,
                                          const CourtSpec& court,
                                          const SegmenterOptions& options) {
  if (centroids.size() != ms.size() || labels.size() != ms.size()) {
    throw ContractError("labels are not aligned with frames");
  }
  std::vector<ActionSegment> segments;
  if (ms.empty()) {
    return segments;
  }

  const double band = court.transition_half_width;
  int committed = 0;
  ActionSegment current;
  current.act_id = 1;
  current.first = 0;

  auto close = [&](std::size_t last) {
    current.last = last;
    current.start_ms = ms[current.first];
    current.end_ms = ms[last];
    segments.push_back(current);
  };

  for (std::size_t i = 0; i < ms.size(); ++i) {
    const double x = centroids[i].x;
    const int side = std::abs(x) > band ? (x > 0.0 ? 1 : -1) : 0;
    bool split = side != 0 && committed != 0 && side != committed;
    if (options.max_intra_action_gap_ms && i > 0 &&
        ms[i] - ms[i - 1] > *options.max_intra_action_gap_ms) {
      split = true;
    }
    if (split) {
      close(i - 1);
      const int next_id = current.act_id + 1;
      current = ActionSegment{};
      current.act_id = next_id;
      current.first = i;
    }
    if (side != 0) {
      committed = side;
      if (!current.dominant_phase && labels[i] != Phase::kTransition) {
        current.dominant_phase = labels[i];
      }
    }
  }
  close(ms.size() - 1);
  return segments;
}

std::vector<int> act_ids(std::span<const ActionSegment> segments,
                         std::size_t rows) {
  std::vector<int> out(rows, 0);
  for (const auto& seg : segments) {
    for (std::size_t i = seg.first; i <= seg.last && i < rows; ++i) {
      out[i] = seg.act_id;
    }
  }
  return out;
}

ActionSummary summarize_durations(std::vector<double> durations_s,
                                  DurationWindow window) {
  ActionSummary summary;
  summary.window = window;
  summary.count = durations_s.size();
  std::size_t inside = 0;
  for (double d : durations_s) {
    if (d >= window.min_s && d <= window.max_s) {
      ++inside;
    }
  }
  summary.share_in_window =
      summary.count == 0 ? 0.0
                         : static_cast<double>(inside) / static_cast<double>(summary.count);
  summary.durations_s = std::move(durations_s);
  return summary;
}

ActionSummary summarize_actions(std::span<const ActionSegment> segments,
                                DurationWindow window) {
  std::vector<double> durations;
  durations.reserve(segments.size());
  for (const auto& seg : segments) {
    durations.push_back(seg.duration_s());
  }
  return summarize_durations(std::move(durations), window);
}

}  // namespace courtfilter
