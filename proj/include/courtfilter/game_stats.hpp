#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "courtfilter/action_segmenter.hpp"
#include "courtfilter/activity_filter.hpp"

namespace courtfilter {

struct FrameMetrics {
  double d_avg = 0.0;     // m, mean over ordered on-court pairs
  double con_hull = 0.0;  // m^2
  double vel_avg = 0.0;   // km/h
  Phase phase = Phase::kTransition;
};

std::vector<FrameMetrics> compute_frame_metrics(const GameTimeline& timeline,
                                                const Selection& selection,
                                                std::span<const Phase> labels);

// Mean over the n^2 - n ordered pairs.
double mean_pair_distance(std::span<const Vec2> points);

// Fixed-width bins. Edges default to whole multiples of the width covering
// the sample; explicit lo/hi pin them. Out-of-range values land in the
// first or last bin.
struct BinSpec {
  double width = 1.0;
  std::optional<double> lo;
  std::optional<double> hi;
};

struct Histogram {
  std::vector<double> edges;  // size = counts.size() + 1
  std::vector<std::size_t> counts;
};

struct DistributionSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  Histogram histogram;
};

// Quartiles are the medians of the lower and upper halves (the middle value
// excluded for odd n); every median averages the two middle values for even
// sizes. Throws InputError on an empty sample.
DistributionSummary summarize(std::vector<double> values, const BinSpec& bins);

struct MetricSummaries {
  DistributionSummary d_avg;
  DistributionSummary con_hull;
  DistributionSummary vel_avg;
};

struct MetricBins {
  BinSpec d_avg{1.0, {}, {}};
  BinSpec con_hull{5.0, {}, {}};
  BinSpec vel_avg{0.5, {}, {}};
};

struct PhaseSummaries {
  std::optional<MetricSummaries> offense;
  std::optional<MetricSummaries> defense;
};

// Offense and defense frames separately; Tr frames are left out.
PhaseSummaries summarize_by_phase(std::span<const FrameMetrics> metrics,
                                  const MetricBins& bins = {});

struct BandShares {
  double under_10s = 0.0;
  double from_10_to_20s = 0.0;  // closed on both ends
  double over_20s = 0.0;
};

struct DurationSummary {
  DistributionSummary distribution;
  BandShares bands;
};

DurationSummary duration_histogram(const ActionSummary& summary,
                                   const BinSpec& bins = BinSpec{2.0, {}, {}});
DurationSummary duration_histogram(std::span<const double> durations_s,
                                   const BinSpec& bins = BinSpec{2.0, {}, {}});

// Bins wide enough for both samples, starting at zero.
BinSpec shared_bins(std::span<const double> a, std::span<const double> b,
                    double width);

struct Comparison {
  double delta_mean = 0.0;
  double delta_median = 0.0;
  double delta_q25 = 0.0;
  double delta_q75 = 0.0;
  std::vector<double> delta_bin_share;  // computed minus reference, per bin
  std::optional<BandShares> delta_bands;
};

// computed minus reference. Throws InputError when histogram edges differ.
Comparison compare_with_reference(const DistributionSummary& computed,
                                  const DistributionSummary& reference);
Comparison compare_with_reference(const DurationSummary& computed,
                                  const DurationSummary& reference);

}  // namespace courtfilter
