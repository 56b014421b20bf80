#include "courtfilter/game_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "courtfilter/error.hpp"

namespace courtfilter {

namespace {

// Midpoint median of a sorted range.
double sorted_median(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double snap(double v) { return std::round(v * 1e9) / 1e9; }

Histogram make_histogram(std::span<const double> sorted, const BinSpec& bins) {
  if (!(bins.width > 0.0)) {
    throw InputError("histogram bin width must be positive");
  }
  const double w = bins.width;
  const double lo = bins.lo ? *bins.lo : std::floor(sorted.front() / w) * w;
  double hi = bins.hi ? *bins.hi : (std::floor(sorted.back() / w) + 1.0) * w;
  if (hi <= lo) hi = lo + w;
  const auto nbins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / w - 1e-9)));

  Histogram h;
  h.edges.resize(nbins + 1);
  for (std::size_t i = 0; i <= nbins; ++i) {
    h.edges[i] = snap(lo + static_cast<double>(i) * w);
  }
  h.counts.assign(nbins, 0);
  for (double v : sorted) {
    const double pos = std::floor((v - lo) / w);
    const auto idx = pos < 0.0 ? std::size_t{0}
                               : std::min(nbins - 1, static_cast<std::size_t>(pos));
    ++h.counts[idx];
  }
  return h;
}

BandShares band_shares(std::span<const double> durations) {
  BandShares b;
  if (durations.empty()) return b;
  for (double d : durations) {
    if (d < 10.0) {
      b.under_10s += 1.0;
    } else if (d <= 20.0) {
      b.from_10_to_20s += 1.0;
    } else {
      b.over_20s += 1.0;
    }
  }
  const auto n = static_cast<double>(durations.size());
  b.under_10s /= n;
  b.from_10_to_20s /= n;
  b.over_20s /= n;
  return b;
}

}  // namespace

double mean_pair_distance(std::span<const Vec2> points) {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  // Both orderings of a pair at once, so the result matches the unordered
  // mean bit for bit.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum += 2.0 * pair_distance(points[i], points[j]);
    }
  }
  return sum / static_cast<double>(n * n - n);
}

std::vector<FrameMetrics> compute_frame_metrics(const GameTimeline& timeline,
                                                const Selection& selection,
                                                std::span<const Phase> labels) {
  if (labels.size() != selection.size()) {
    throw ContractError("labels are not aligned with frames");
  }
  std::vector<FrameMetrics> out(selection.size());
  for (std::size_t i = 0; i < selection.size(); ++i) {
    const auto pos = lineup_positions(timeline, selection.rows[i], selection.lineups[i]);
    const auto vel = lineup_velocities(timeline, selection.rows[i], selection.lineups[i]);
    FrameMetrics& m = out[i];
    m.d_avg = mean_pair_distance(pos);
    m.con_hull = convex_hull_area(pos);
    double speeds = 0.0;
    for (const Vec2& v : vel) speeds += kmh(speed(v));
    m.vel_avg = speeds / 5.0;
    m.phase = labels[i];
  }
  return out;
}

DistributionSummary summarize(std::vector<double> values, const BinSpec& bins) {
  if (values.empty()) {
    throw InputError("cannot summarize an empty sample");
  }
  std::sort(values.begin(), values.end());
  DistributionSummary s;
  s.n = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
  s.median = sorted_median(values);
  const std::size_t half = s.n / 2;
  if (half == 0) {
    s.q25 = s.q75 = values.front();
  } else {
    const std::span<const double> all(values);
    s.q25 = sorted_median(all.first(half));
    s.q75 = sorted_median(all.last(half));
  }
  s.histogram = make_histogram(values, bins);
  return s;
}

PhaseSummaries summarize_by_phase(std::span<const FrameMetrics> metrics,
                                  const MetricBins& bins) {
  auto collect = [&](Phase phase) -> std::optional<MetricSummaries> {
    std::vector<double> d, h, v;
    for (const auto& m : metrics) {
      if (m.phase != phase) continue;
      d.push_back(m.d_avg);
      h.push_back(m.con_hull);
      v.push_back(m.vel_avg);
    }
    if (d.empty()) return std::nullopt;
    return MetricSummaries{summarize(std::move(d), bins.d_avg),
                           summarize(std::move(h), bins.con_hull),
                           summarize(std::move(v), bins.vel_avg)};
  };
  return {collect(Phase::kOffense), collect(Phase::kDefense)};
}

DurationSummary duration_histogram(std::span<const double> durations_s,
                                   const BinSpec& bins) {
  DurationSummary out;
  if (durations_s.empty()) return out;
  out.distribution = summarize({durations_s.begin(), durations_s.end()}, bins);
  out.bands = band_shares(durations_s);
  return out;
}

DurationSummary duration_histogram(const ActionSummary& summary, const BinSpec& bins) {
  return duration_histogram(summary.durations_s, bins);
}

BinSpec shared_bins(std::span<const double> a, std::span<const double> b, double width) {
  double top = 0.0;
  for (double v : a) top = std::max(top, v);
  for (double v : b) top = std::max(top, v);
  return BinSpec{width, 0.0, (std::floor(top / width) + 1.0) * width};
}

Comparison compare_with_reference(const DistributionSummary& computed,
                                  const DistributionSummary& reference) {
  if (computed.histogram.edges != reference.histogram.edges) {
    throw InputError("histogram bins differ between computed and reference summaries");
  }
  Comparison c;
  c.delta_mean = computed.mean - reference.mean;
  c.delta_median = computed.median - reference.median;
  c.delta_q25 = computed.q25 - reference.q25;
  c.delta_q75 = computed.q75 - reference.q75;
  auto share = [](const DistributionSummary& s, std::size_t i) {
    return s.n == 0 ? 0.0 : static_cast<double>(s.histogram.counts[i]) / static_cast<double>(s.n);
  };
  c.delta_bin_share.resize(computed.histogram.counts.size());
  for (std::size_t i = 0; i < c.delta_bin_share.size(); ++i) {
    c.delta_bin_share[i] = share(computed, i) - share(reference, i);
  }
  return c;
}

Comparison compare_with_reference(const DurationSummary& computed,
                                  const DurationSummary& reference) {
  Comparison c = compare_with_reference(computed.distribution, reference.distribution);
  c.delta_bands = BandShares{computed.bands.under_10s - reference.bands.under_10s,
                             computed.bands.from_10_to_20s - reference.bands.from_10_to_20s,
                             computed.bands.over_20s - reference.bands.over_20s};
  return c;
}

}  // namespace courtfilter
