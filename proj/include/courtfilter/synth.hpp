#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "courtfilter/action_segmenter.hpp"
#include "courtfilter/geometry.hpp"
#include "courtfilter/timeline.hpp"

namespace courtfilter {

enum class StoppageType { kBench, kFreeThrow, kSlowRun, kHalftime };

std::string_view stoppage_name(StoppageType type) noexcept;

// How action durations are drawn. Durations are stratified quantiles
// (u = (i + 0.5) / n) shuffled by the seed, so a plan always yields the same
// multiset of durations.
struct DurationSpec {
  enum class Kind { kLognormal, kQuantile };
  Kind kind = Kind::kLognormal;
  double median_s = 15.66;
  double sigma = 0.35;
  // Piecewise-linear quantile function for kQuantile: (u, seconds) with u
  // running from 0 to 1.
  std::vector<std::pair<double, double>> knots;
  double min_s = 5.0;
  std::optional<double> max_s;
  // Rescale so the durations sum to this many seconds.
  std::optional<double> total_s;
};

struct PlannedStoppage {
  StoppageType type = StoppageType::kBench;
  double duration_s = 0.0;
  // Inserted after this 1-based action; spread evenly when absent.
  std::optional<int> after_action;
  // All-player speed during a slow run.
  double speed_kmh = 5.0;
};

// All five on-court players slow for a while in the middle of an action.
// Ground truth treats these as active play.
struct PlannedLull {
  double speed_kmh = 7.5;
  double duration_s = 0.5;
  int count = 1;
};

struct SynthPlan {
  int n_actions = 10;
  DurationSpec durations;
  std::vector<PlannedStoppage> stoppages;
  std::vector<PlannedLull> lulls;
  double pre_game_s = 5.0;
  double post_game_s = 5.0;
  double sampling_hz = 80.0;
  double sampling_jitter = 0.3;    // +-fraction of the nominal period
  double detection_prob = 0.6;     // per player per tick
  double velocity_noise_ms = 0.01; // +-m/s per component
  int roster_size = 12;
  double offense_spacing_m = 7.96;  // target mean pair distance
  double defense_spacing_m = 6.17;
  bool attack_positive_x_first_half = true;
  bool emit_extra_labels = false;  // also write pos_z and acc_* records
  std::uint64_t seed = 1;
  std::string team = "Synthetic";
  std::string date = "2017-01-01";
};

struct TruthAction {
  int act_id = 0;
  Millis start_ms = 0;
  Millis end_ms = 0;
  int side = 1;  // +1 or -1
  Phase phase = Phase::kOffense;
  // Centroid is back inside the band from here to end_ms; equals end_ms
  // when the action ends in a stoppage.
  Millis band_entry_ms = 0;
};

struct TruthStoppage {
  StoppageType type = StoppageType::kBench;
  Millis start_ms = 0;
  Millis end_ms = 0;
  double speed_kmh = 0.0;
};

struct GroundTruth {
  std::vector<std::pair<Millis, Millis>> active_intervals;  // [start, end)
  std::vector<TruthAction> actions;
  std::vector<TruthStoppage> stoppages;  // pre/post game included as bench
  std::optional<Millis> halftime_ms;
  double planted_active_s = 0.0;
  // Ticks falling in stoppages, by the step expected to drop them.
  std::size_t ticks_total = 0;
  std::size_t expected_removed_1a = 0;
  std::size_t expected_removed_1b = 0;
  std::size_t expected_removed_1c = 0;

  bool is_active(Millis ms) const;
  // Planted phase at an instant inside an action; nullopt outside actions.
  std::optional<Phase> expected_phase(Millis ms) const;
};

struct SynthGame {
  std::map<std::string, std::vector<RawRecord>> records;
  GroundTruth truth;
  TimelineInfo info;
};

// Throws InputError on an infeasible plan.
void validate_plan(const SynthPlan& plan, const CourtSpec& court);

SynthGame generate(const SynthPlan& plan, const CourtSpec& court = {});

// Writes <id>.csv per player, manifest.json and truth.json.
void write_dataset(const SynthGame& game, const std::filesystem::path& dir);

// Stoppage layout mirroring a regulation game: 151 actions, ~40 active
// minutes over a ~90 minute session.
SynthPlan regulation_game_plan(std::uint64_t seed = 1);

}  // namespace courtfilter
