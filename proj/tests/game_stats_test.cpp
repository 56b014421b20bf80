#include <gtest/gtest.h>

#include <random>

#include "courtfilter/error.hpp"
#include "courtfilter/game_stats.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace courtfilter;

namespace {

const CourtSpec kCourt;

struct OneFrame {
  GameTimeline tl{cftest::roster_of(5)};
  Selection sel;

  OneFrame(const std::vector<Vec2>& pos, const std::vector<Vec2>& vel) {
    std::vector<PlayerState> row;
    for (std::size_t i = 0; i < 5; ++i) row.push_back(cftest::seen(pos[i], vel[i]));
    tl.append(0, row);
    sel.rows = {0};
    sel.lineups = {Lineup{0, 1, 2, 3, 4}};
  }

  FrameMetrics metrics() const {
    const std::vector<Phase> labels{Phase::kOffense};
    return compute_frame_metrics(tl, sel, labels).at(0);
  }
};

TEST(FrameMetrics, CoincidentPlayers) {
  OneFrame f(std::vector<Vec2>(5, Vec2{1, 1}), std::vector<Vec2>(5, Vec2{2.5, 0}));
  const auto m = f.metrics();
  EXPECT_EQ(m.d_avg, 0.0);
  EXPECT_EQ(m.con_hull, 0.0);
  EXPECT_DOUBLE_EQ(m.vel_avg, 9.0);
}

TEST(FrameMetrics, UnitSquareAtRest) {
  OneFrame f({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}}, std::vector<Vec2>(5, Vec2{}));
  const auto m = f.metrics();
  EXPECT_DOUBLE_EQ(m.con_hull, 1.0);
  EXPECT_EQ(m.vel_avg, 0.0);
}

TEST(FrameMetrics, RandomFramesAgainstPairOracle) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> ux(-14, 14), uy(-7.5, 7.5), uv(-6, 6);
  for (int i = 0; i < 500; ++i) {
    std::vector<Vec2> pos(5), vel(5);
    for (auto& p : pos) p = {ux(rng), uy(rng)};
    for (auto& v : vel) v = {uv(rng), uv(rng)};
    const auto m = OneFrame(pos, vel).metrics();
    EXPECT_NEAR(m.d_avg, oracle::ordered_pair_mean(pos), 1e-12);
    EXPECT_EQ(m.d_avg, oracle::unordered_pair_mean(pos));
    EXPECT_LE(m.con_hull, kCourt.area());
    double lo = 1e9, hi = 0;
    for (auto v : vel) {
      lo = std::min(lo, kmh(speed(v)));
      hi = std::max(hi, kmh(speed(v)));
    }
    EXPECT_GE(m.vel_avg, lo - 1e-12);
    EXPECT_LE(m.vel_avg, hi + 1e-12);
  }
}

TEST(FrameMetrics, ZeroHullMeansCollinear) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const Vec2 a{u(rng), u(rng)}, d{u(rng), u(rng)};
    std::vector<Vec2> pos;
    for (int k = 0; k < 5; ++k) {
      const double t = std::round(u(rng));
      pos.push_back({a.x + t * d.x, a.y + t * d.y});
    }
    EXPECT_NEAR(convex_hull_area(pos), 0.0, 1e-9);
  }
}

TEST(FrameMetrics, LabelCountMustMatch) {
  OneFrame f(std::vector<Vec2>(5, Vec2{}), std::vector<Vec2>(5, Vec2{}));
  EXPECT_THROW(compute_frame_metrics(f.tl, f.sel, std::vector<Phase>{}), ContractError);
}

TEST(Summarize, ConstantSample) {
  const auto s = summarize(std::vector<double>(7, 3.5), BinSpec{1.0});
  EXPECT_EQ(s.n, 7u);
  EXPECT_EQ(s.mean, 3.5);
  EXPECT_EQ(s.median, 3.5);
  EXPECT_EQ(s.q25, 3.5);
  EXPECT_EQ(s.q75, 3.5);
}

TEST(Summarize, QuartilesAreHalfMedians) {
  // Odd n: middle value left out of both halves.
  const auto odd = summarize({7, 1, 3, 5, 9}, BinSpec{1.0});
  EXPECT_EQ(odd.median, 5);
  EXPECT_EQ(odd.q25, 2);
  EXPECT_EQ(odd.q75, 8);
  const auto even = summarize({1, 2, 3, 4, 5, 6}, BinSpec{1.0});
  EXPECT_EQ(even.median, 3.5);
  EXPECT_EQ(even.q25, 2);
  EXPECT_EQ(even.q75, 5);
  const auto one = summarize({4}, BinSpec{1.0});
  EXPECT_EQ(one.q25, 4);
  EXPECT_EQ(one.q75, 4);
}

TEST(Summarize, HistogramBins) {
  const auto s = summarize({0.2, 1.5, 1.7, 3.0}, BinSpec{1.0});
  EXPECT_EQ(s.histogram.edges, (std::vector<double>{0, 1, 2, 3, 4}));
  EXPECT_EQ(s.histogram.counts, (std::vector<std::size_t>{1, 2, 0, 1}));
  const auto pinned = summarize({-3, 0.5, 9}, BinSpec{1.0, 0.0, 2.0});
  EXPECT_EQ(pinned.histogram.counts, (std::vector<std::size_t>{2, 1}));
  EXPECT_THROW(summarize({}, BinSpec{1.0}), InputError);
}

TEST(SummarizeByPhase, SplitsOffenseAndDefense) {
  std::vector<FrameMetrics> m{{8, 50, 7, Phase::kOffense},
                              {6, 30, 6, Phase::kDefense},
                              {10, 70, 9, Phase::kOffense},
                              {1, 1, 1, Phase::kTransition}};
  const auto s = summarize_by_phase(m);
  ASSERT_TRUE(s.offense && s.defense);
  EXPECT_EQ(s.offense->d_avg.n, 2u);
  EXPECT_EQ(s.offense->d_avg.mean, 9);
  EXPECT_EQ(s.defense->con_hull.mean, 30);
  EXPECT_EQ(s.offense->vel_avg.q75, 9);
  const auto none = summarize_by_phase(std::vector<FrameMetrics>{{1, 1, 1, Phase::kTransition}});
  EXPECT_FALSE(none.offense || none.defense);
}

TEST(DurationHistogram, BandShares) {
  const auto all15 = duration_histogram(std::vector<double>{15, 15, 15});
  EXPECT_EQ(all15.bands.under_10s, 0);
  EXPECT_EQ(all15.bands.from_10_to_20s, 1);
  EXPECT_EQ(all15.bands.over_20s, 0);
  const auto mixed = duration_histogram(std::vector<double>{5, 15, 25, 15});
  EXPECT_EQ(mixed.bands.under_10s, 0.25);
  EXPECT_EQ(mixed.bands.from_10_to_20s, 0.5);
  EXPECT_EQ(mixed.bands.over_20s, 0.25);
  const auto edges = duration_histogram(std::vector<double>{10, 20, 9.999, 20.001});
  EXPECT_EQ(edges.bands.from_10_to_20s, 0.5);
}

TEST(DurationHistogram, BandsSumToOne) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0, 40);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> d(1 + i);
    for (auto& x : d) x = u(rng);
    const auto b = duration_histogram(d).bands;
    EXPECT_NEAR(b.under_10s + b.from_10_to_20s + b.over_20s, 1.0, 1e-12);
  }
}

TEST(DurationHistogram, AcceptsExternalList) {
  ActionSummary summary = summarize_durations({14, 12, 16, 30, 8});
  const auto h = duration_histogram(summary);
  EXPECT_EQ(h.distribution.median, 14);
  EXPECT_EQ(h.distribution.n, 5u);
}

TEST(Compare, IdenticalAndShifted) {
  const std::vector<double> a{5, 11, 13, 17, 25};
  std::vector<double> b;
  for (double x : a) b.push_back(x + 2);
  const BinSpec bins = shared_bins(a, b, 2.0);
  const auto sa = duration_histogram(a, bins);
  const auto sb = duration_histogram(b, bins);
  const auto same = compare_with_reference(sa, sa);
  EXPECT_EQ(same.delta_mean, 0);
  EXPECT_EQ(same.delta_median, 0);
  for (double d : same.delta_bin_share) EXPECT_EQ(d, 0);
  ASSERT_TRUE(same.delta_bands);
  EXPECT_EQ(same.delta_bands->over_20s, 0);
  const auto shifted = compare_with_reference(sb, sa);
  EXPECT_DOUBLE_EQ(shifted.delta_mean, 2);
  EXPECT_DOUBLE_EQ(shifted.delta_median, 2);
}

TEST(Compare, BinMismatchThrows) {
  const auto a = summarize({1, 2, 3}, BinSpec{1.0});
  const auto b = summarize({1, 2, 3}, BinSpec{0.5});
  EXPECT_THROW(compare_with_reference(a, b), InputError);
}

}  // namespace
