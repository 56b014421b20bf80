// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "courtfilter/action_segmenter.hpp"
#include "courtfilter/activity_filter.hpp"
#include "courtfilter/calibration.hpp"
#include "courtfilter/game_stats.hpp"
#include "courtfilter/ingest.hpp"
#include "courtfilter/serialize.hpp"
#include "courtfilter/synth.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace courtfilter;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

struct Segmented {
  FilterResult filtered;
  std::vector<Millis> ms;
  std::vector<Phase> labels;
  std::vector<ActionSegment> segments;
};

Segmented filter_and_segment(const GameTimeline& tl, const CourtSpec& court, const FilterParams& params) {
  Segmented s;
  s.filtered = run_filter(tl, court, params);
  s.ms = detail::selected_ms(tl, s.filtered.selection);
  SideConfig sides;
  sides.attack_positive_x_first_half = court.attack_positive_x_first_half;
  sides.halftime_ms = infer_halftime(s.ms);
  const auto centroids = team_centroids(tl, s.filtered.selection);
  s.labels = label_phases(centroids, s.ms, court, sides);
  s.segments = assign_actions(centroids, s.ms, s.labels, court);
  return s;
}

// The regulation game is shared by criteria 1, 2 and 8.
struct RegulationGame {
  SynthGame game;
  GameTimeline tl;
  Segmented result;
  double seconds = 0.0;
};

const RegulationGame& regulation() {
  static const RegulationGame g = [] {
    RegulationGame r;
    r.game = generate(regulation_game_plan(1));
    r.tl = merge_timeline(r.game.records, r.game.info);
    const auto t0 = std::chrono::steady_clock::now();
    r.result = filter_and_segment(r.tl, CourtSpec{}, FilterParams{});
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }();
  return g;
}

Outcome ground_truth_recovery() {
  const auto& g = regulation();
  const double planted = g.game.truth.planted_active_s / 60.0;
  const double got = g.result.filtered.report.active_minutes;
  const double rel = (got - planted) / planted;
  const long count = static_cast<long>(g.result.segments.size());
  const long planted_count = static_cast<long>(g.game.truth.actions.size());
  const bool ok = std::abs(rel) <= 0.02 && std::abs(count - planted_count) <= 1 && g.seconds < 10.0;
  return {ok, std::to_string(g.tl.size()) + " frames; active " + fmt(got, 3) + " vs planted " +
                  fmt(planted, 3) + " min (" + fmt(rel * 100, 2) + "%); actions " + std::to_string(count) +
                  " vs " + std::to_string(planted_count) + "; filter+segment " + fmt(g.seconds, 2) + " s"};
}

Outcome duration_window() {
  const auto summary = summarize_actions(regulation().result.segments, DurationWindow{4, 38});
  const double share = summary.share_in_window;
  // At least 97%, and within 2 points of the 97.0-97.8% range.
  const bool ok = share >= 0.97 && share <= 0.978 + 0.02;
  return {ok, std::to_string(static_cast<long>(std::lround(share * summary.count))) + "/" +
                  std::to_string(summary.count) + " = " + fmt(share * 100, 2) + "% in [4, 38] s"};
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Outcome monotonicity() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> h2(8.0, 11.0), h3(0.5, 4.0), step(0.05, 1.5);
  const CourtSpec court;
  std::size_t checks = 0, violations = 0;
  for (int t = 0; t < 50; ++t) {
    const auto tl = cftest::random_timeline(rng, 400);
    for (int k = 0; k < 20; ++k) {
      FilterParams base;
      base.h2_kmh = h2(rng);
      base.h3_s = h3(rng);
      FilterParams faster = base, longer = base;
      faster.h2_kmh += step(rng);
      longer.h3_s += step(rng);
      const auto r0 = run_filter(tl, court, base).selection.rows;
      const auto r_h2 = run_filter(tl, court, faster).selection.rows;
      const auto r_h3 = run_filter(tl, court, longer).selection.rows;
      checks += 2;
      if (!subset(r_h2, r0)) ++violations;   // raising h2 shrinks
      if (!subset(r0, r_h3)) ++violations;   // raising h3 grows
    }
  }
  return {violations == 0, std::to_string(checks) + " inclusion checks, " + std::to_string(violations) +
                               " violations"};
}

Outcome geometry_oracles() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-14, 14), uy(-7.5, 7.5);
  std::size_t hull_bad = 0, pair_bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<Vec2> pts(5);
    for (auto& p : pts) p = {ux(rng), uy(rng)};
    const double expect = oracle::hull_area(pts);
    const double got = convex_hull_area(pts);
    const double rel = std::abs(got - expect) / std::max(expect, 1e-300);
    worst = std::max(worst, expect > 0 ? rel : std::abs(got));
    if (expect > 0 ? rel > 1e-9 : got != 0.0) ++hull_bad;
    if (mean_pair_distance(pts) != oracle::unordered_pair_mean(pts)) ++pair_bad;
  }
  const double s = speed({1.26, 1.26});
  const bool speed_ok = std::abs(s - 1.7819) <= 1e-4;
  return {hull_bad == 0 && pair_bad == 0 && speed_ok,
          "hull mismatches " + std::to_string(hull_bad) + "/1000 (worst rel " + fmt(worst * 1e12, 3) +
              "e-12); d_avg ordered!=unordered " + std::to_string(pair_bad) + "/1000; speed " + fmt(s, 6)};
}

// Five players around a random-walk centroid; every frame on court.
GameTimeline random_reduced(std::mt19937_64& rng, bool mirrored) {
  std::uniform_real_distribution<double> u(0, 1);
  GameTimeline tl(cftest::roster_of(5));
  const int n = 50 + static_cast<int>(u(rng) * 500);
  double x = (u(rng) * 2 - 1) * 9;
  Millis t = static_cast<Millis>(u(rng) * 1000);
  for (int i = 0; i < n; ++i) {
    x += (u(rng) - 0.5) * 2.5;
    if (u(rng) < 0.03) x = -x;
    if (u(rng) < 0.02) x = u(rng) < 0.5 ? 4.0 : -4.0;
    x = std::clamp(x, -11.0, 11.0);
    std::vector<PlayerState> row;
    for (int p = 0; p < 5; ++p) {
      const double dx = (u(rng) - 0.5) * 4, dy = (u(rng) - 0.5) * 10;
      const double px = x + dx;
      row.push_back(cftest::seen({mirrored ? -px : px, dy}, {u(rng), u(rng)}));
    }
    t += 1 + static_cast<Millis>(u(rng) * 150);
    tl.append(t, row);
  }
  return tl;
}

Outcome segment_invariants() {
  const CourtSpec court;
  std::size_t partition_bad = 0, flip_bad = 0, mirror_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::mt19937_64 rng_a(1000 + trial), rng_b(1000 + trial);
    const auto tl = random_reduced(rng_a, false);
    const auto mirror = random_reduced(rng_b, true);
    auto run = [&](const GameTimeline& g, bool attack_positive) {
      const Selection sel = select_all(g, court);
      const auto ms = detail::selected_ms(g, sel);
      const auto c = team_centroids(g, sel);
      SideConfig sides;
      sides.attack_positive_x_first_half = attack_positive;
      sides.halftime_ms = ms[ms.size() / 2];
      const auto labels = label_phases(c, ms, court, sides);
      return std::tuple{assign_actions(c, ms, labels, court), c, labels};
    };
    const auto [segs, centroids, labels] = run(tl, true);
    const auto [msegs, mcentroids, mlabels] = run(mirror, false);

    std::size_t next = 0;
    bool ok = true;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      ok = ok && segs[i].first == next && segs[i].last >= segs[i].first &&
           segs[i].act_id == static_cast<int>(i + 1);
      next = segs[i].last + 1;
    }
    if (!ok || next != tl.size()) ++partition_bad;

    std::vector<double> xs;
    for (auto c : centroids) xs.push_back(c.x);
    const auto ids = act_ids(segs, tl.size());
    if (ids != oracle::act_ids(xs, court.transition_half_width)) ++flip_bad;
    if (act_ids(msegs, mirror.size()) != ids || mlabels != labels) ++mirror_bad;
  }
  return {partition_bad == 0 && flip_bad == 0 && mirror_bad == 0,
          "100 timelines; partition failures " + std::to_string(partition_bad) + ", flip-count mismatches " +
              std::to_string(flip_bad) + ", mirror mismatches " + std::to_string(mirror_bad)};
}

// Play, then a stretch built by `special`, then play, sampled every `step` ms.
template <typename F>
GameTimeline boundary_game(Millis step, Millis stretch_ms, F special) {
  GameTimeline tl(cftest::roster_of(7));
  auto add = [&](Millis t, std::vector<PlayerState> five) {
    five.push_back(cftest::seen({-1, 9}));
    five.push_back(cftest::seen({1, 9}));
    tl.append(t, five);
  };
  Millis t = 0;
  for (; t < 3000; t += step) add(t, cftest::five_at({2, 0}, 15));
  const Millis begin = t;
  for (; t <= begin + stretch_ms; t += step) add(t, special());
  const Millis resume = t;
  for (; t < resume + 3000; t += step) add(t, cftest::five_at({2, 0}, 15));
  return tl;
}

Outcome filter_boundaries() {
  const CourtSpec court;
  std::size_t cases = 0, mismatches = 0, wrong = 0;
  auto check = [&](const GameTimeline& tl, const FilterParams& p, std::size_t expect_removed) {
    ++cases;
    const auto r = run_filter(tl, court, p);
    if (r.selection.rows != oracle::filter(tl, court, p)) ++mismatches;
    if (tl.size() - r.selection.size() != expect_removed) ++wrong;
  };
  for (Millis step : {10, 20, 25, 50}) {
    for (double h1 : {5.0, 10.0, 12.5}) {
      FilterParams p;
      p.h1_s = h1;
      const auto dwell = [] {
        auto f = cftest::five_at({2, 0}, 15);
        f[2].pos = {-8.2, 0.3};
        return f;
      };
      const Millis h1_ms = std::llround(h1 * 1000);
      const auto exact = boundary_game(step, h1_ms, dwell);
      check(exact, p, static_cast<std::size_t>(h1_ms / step + 1));
      check(boundary_game(step, h1_ms - 100, dwell), p, 0);
    }
    for (double h3 : {1.0, 2.5, 3.5}) {
      FilterParams p;
      p.h3_s = h3;
      const Millis h3_ms = std::llround(h3 * 1000);
      const auto still = [] { return cftest::five_at({2, 0}, 3); };
      check(boundary_game(step, h3_ms, still), p, static_cast<std::size_t>(h3_ms / step + 1));
      check(boundary_game(step, h3_ms - step, still), p, 0);
      const auto four_slow = [] {
        auto f = cftest::five_at({2, 0}, 3);
        f[4].vel = cftest::kmh_vel(12);
        return f;
      };
      check(boundary_game(step, 20000, four_slow), p, 0);
    }
  }
  // The oracle also has to agree on messy input.
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    const auto tl = cftest::random_timeline(rng);
    FilterParams p;
    p.h1_s = 1.0 + i % 5;
    p.h3_s = 0.5 + (i % 7) * 0.5;
    ++cases;
    if (run_filter(tl, court, p).selection.rows != oracle::filter(tl, court, p)) ++mismatches;
  }
  return {mismatches == 0 && wrong == 0, std::to_string(cases) + " cases; oracle mismatches " +
                                             std::to_string(mismatches) + ", wrong removal counts " +
                                             std::to_string(wrong)};
}

// Stoppages and in-play lulls placed around (9 km/h, 2.5 s): 15 s dead
// stretches at 8.9 km/h, 2.6 s dead stretches at 5 km/h, 2.6 s lulls at
// 9.1 km/h and 2.4 s lulls at 7.5 km/h. Each internal stoppage adds one
// capped second, so the actions total 2400 s minus the stoppage count.
SynthPlan calibration_plan(std::uint64_t seed) {
  SynthPlan plan;
  plan.n_actions = 150;
  plan.seed = seed;
  plan.durations.kind = DurationSpec::Kind::kLognormal;
  plan.durations.median_s = 15.66;
  plan.durations.sigma = 0.35;
  plan.durations.min_s = 6.0;
  for (int i = 0; i < 10; ++i) plan.stoppages.push_back({StoppageType::kSlowRun, 15.0, {}, 8.9});
  for (int i = 0; i < 40; ++i) plan.stoppages.push_back({StoppageType::kSlowRun, 2.6, {}, 5.0});
  plan.durations.total_s = 2400.0 - static_cast<double>(plan.stoppages.size());
  plan.lulls = {{9.1, 2.6, 40}, {7.5, 2.4, 45}};
  return plan;
}

Outcome calibration_recommendation() {
  const auto game = generate(calibration_plan(7));
  const auto tl = merge_timeline(game.records);
  const GridSpec grid;
  const auto cells = sweep(tl, CourtSpec{}, FilterParams{}, grid);
  const auto rec = recommend(cells, 40.0);
  double at_target = -1;
  for (std::size_t i = 0; i < cells.h2_values.size(); ++i) {
    for (std::size_t j = 0; j < cells.h3_values.size(); ++j) {
      if (std::abs(cells.h2_values[i] - 9.0) < 1e-9 && std::abs(cells.h3_values[j] - 2.5) < 1e-9)
        at_target = cells.at(i, j);
    }
  }
  const bool fixture_ok = std::abs(at_target - 40.0) <= 0.3;
  const bool near = std::abs(rec.h2_kmh - 9.0) <= grid.h2_kmh.step + 1e-9 &&
                    std::abs(rec.h3_s - 2.5) <= grid.h3_s.step + 1e-9;
  return {fixture_ok && near, "(9.0, 2.5) gives " + fmt(at_target, 3) + " min; recommended (" +
                                  fmt(rec.h2_kmh, 2) + ", " + fmt(rec.h3_s, 2) + ") at " +
                                  fmt(rec.active_minutes, 3) + " min"};
}

Outcome planted_effect() {
  std::size_t runs = 0, held = 0;
  std::string worst;
  auto check = [&](const GameTimeline& tl, const Segmented& s) {
    ++runs;
    const auto metrics = compute_frame_metrics(tl, s.filtered.selection, s.labels);
    const auto by_phase = summarize_by_phase(metrics);
    if (!by_phase.offense || !by_phase.defense) return;
    const auto& o = *by_phase.offense;
    const auto& d = *by_phase.defense;
    if (o.d_avg.mean > d.d_avg.mean && o.con_hull.mean > d.con_hull.mean) ++held;
    if (worst.empty()) {
      worst = "d_avg " + fmt(o.d_avg.mean, 2) + " vs " + fmt(d.d_avg.mean, 2) + " m, hull " +
              fmt(o.con_hull.mean, 2) + " vs " + fmt(d.con_hull.mean, 2) + " m^2";
    }
  };
  check(regulation().tl, regulation().result);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthPlan plan;
    plan.n_actions = 30;
    plan.seed = seed;
    plan.stoppages = {{StoppageType::kHalftime, 60, {}, 0}, {StoppageType::kFreeThrow, 12, {}, 0}};
    const auto game = generate(plan);
    const auto tl = merge_timeline(game.records);
    check(tl, filter_and_segment(tl, CourtSpec{}, FilterParams{}));
  }
  return {held == runs, std::to_string(held) + "/" + std::to_string(runs) +
                            " seeded runs with offense > defense; regulation game " + worst};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const fs::path exe = COURTFILTER_EXE;
  const auto root = cftest::scratch_dir("acceptance_determinism");
  SynthPlan plan;
  plan.n_actions = 20;
  plan.stoppages = {{StoppageType::kHalftime, 30, {}, 0}, {StoppageType::kFreeThrow, 12, {}, 0},
                    {StoppageType::kSlowRun, 4, {}, 5.0}};
  save_json(root / "plan.json", to_json(plan));

  std::size_t files = 0, differing = 0, failed_commands = 0;
  for (const char* pass : {"a", "b"}) {
    const fs::path d = root / pass;
    const std::string q = "\"";
    const std::vector<std::string> cmds = {
        "synth --plan " + q + (root / "plan.json").string() + q + " --out " + q + (d / "data").string() + q,
        "ingest --manifest " + q + (d / "data" / "manifest.json").string() + q + " --out " + q +
            (d / "wide.csv").string() + q,
        "filter --wide " + q + (d / "wide.csv").string() + q + " --out " + q + (d / "filter").string() + q,
        "calibrate --wide " + q + (d / "wide.csv").string() + q + " --grid-h2 8.6:9.6:0.2 --grid-h3 2:3:0.25 --out " +
            q + (d / "calibrate").string() + q,
        "stats --reduced " + q + (d / "filter" / "reduced.csv").string() + q + " --segments " + q +
            (d / "filter" / "segments.csv").string() + q + " --out " + q + (d / "stats").string() + q};
    for (const auto& c : cmds) {
      const std::string line = q + exe.string() + q + " " + c + " > " + q + (d.string() + ".log") + q + " 2>&1";
      fs::create_directories(d);
      if (std::system(line.c_str()) != 0) ++failed_commands;
    }
  }
  for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const auto other = root / "b" / fs::relative(e.path(), root / "a");
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differing;
  }
  return {failed_commands == 0 && differing == 0 && files > 0,
          "5 commands x 2 runs; " + std::to_string(files) + " output files, " + std::to_string(differing) +
              " differ, " + std::to_string(failed_commands) + " failed"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 ground-truth recovery", ground_truth_recovery},
      {"2 duration window", duration_window},
      {"3 monotonicity", monotonicity},
      {"4 geometry oracles", geometry_oracles},
      {"5 phase/segment invariants", segment_invariants},
      {"6 filter boundaries", filter_boundaries},
      {"7 calibration recommendation", calibration_recommendation},
      {"8 planted-effect statistics", planted_effect},
      {"9 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
