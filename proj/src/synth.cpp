#include "courtfilter/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "courtfilter/error.hpp"
#include "courtfilter/serialize.hpp"
#include "courtfilter/wide_matrix.hpp"

namespace courtfilter {

std::string_view stoppage_name(StoppageType type) noexcept {
  switch (type) {
    case StoppageType::kBench: return "bench";
    case StoppageType::kFreeThrow: return "free_throw";
    case StoppageType::kSlowRun: return "slow_run";
    case StoppageType::kHalftime: return "halftime";
  }
  return "?";
}

namespace {

// Team kinematics, meters and seconds. The centroid enters an action just
// outside the band, settles at kSetX, and on a crossing runs through the band
// to the opposite edge.
constexpr double kBandEdge = 4.0;
constexpr double kEntryX = 4.1;
constexpr double kSetX = 9.0;
constexpr Millis kApproachMs = 1500;
constexpr Millis kLeaveMs = 3500;
constexpr double kRunnerRadius = 1.0;
constexpr double kRunnerOmega = 3.5;  // rad/s, 3.5 m/s on a 1 m circle
constexpr double kWiggleAmp = 0.3;
constexpr double kWiggleA = 1.3;
constexpr double kWiggleB = 0.9;
constexpr Millis kLullMarginMs = 300;

// Formation offsets at unit scale, x toward the attacked baseline. They sum
// to zero so the centroid follows the planned path.
constexpr std::array<Vec2, 5> kFormation = {
    Vec2{3.5, 4.0}, Vec2{3.5, -4.0}, Vec2{-1.0, 5.5}, Vec2{-1.0, -5.5}, Vec2{-5.0, 0.0}};

// splitmix64; portable so a seed gives the same bytes everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::uint64_t state_;
};

double round_to(double v, double quantum) { return std::round(v / quantum) * quantum; }

Millis to_ms(double seconds) { return std::llround(seconds * 1000.0); }

double base_pair_distance() {
  double sum = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) sum += pair_distance(kFormation[i], kFormation[j]);
  return sum / 20.0;
}

double spacing_scale(double target_m) { return target_m / base_pair_distance(); }

double nominal_period_ms(const SynthPlan& plan) { return 1000.0 / plan.sampling_hz; }

std::vector<double> draw_durations(const SynthPlan& plan, Rng& rng) {
  const auto n = static_cast<std::size_t>(plan.n_actions);
  const DurationSpec& spec = plan.durations;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    double d = 0.0;
    if (spec.kind == DurationSpec::Kind::kLognormal) {
      const boost::math::normal_distribution<double> z;
      d = spec.median_s * std::exp(spec.sigma * boost::math::quantile(z, u));
    } else {
      const auto& k = spec.knots;
      std::size_t s = 1;
      while (s + 1 < k.size() && k[s].first < u) ++s;
      const double t = (u - k[s - 1].first) / (k[s].first - k[s - 1].first);
      d = k[s - 1].second + t * (k[s].second - k[s - 1].second);
    }
    d = std::max(d, spec.min_s);
    if (spec.max_s) d = std::min(d, *spec.max_s);
    out[i] = d;
  }
  if (spec.total_s) {
    double sum = 0.0;
    for (double d : out) sum += d;
    for (double& d : out) d *= *spec.total_s / sum;
  }
  for (std::size_t i = n; i > 1; --i) {
    std::swap(out[i - 1], out[rng.below(i)]);
  }
  return out;
}

struct Lull {
  Millis begin = 0;  // relative to the action start
  Millis end = 0;
  double omega = 0.0;
};

struct Episode {
  bool is_action = false;
  Millis start = 0;
  Millis end = 0;
  Lineup lineup{};
  int side = 1;
  double scale = 1.0;
  // Action.
  int act_id = 0;
  bool crossing = false;
  Millis approach_ms = 0;
  Millis leave_ms = 0;
  Phase phase = Phase::kOffense;
  std::vector<Lull> lulls;
  double phase0 = 0.0;
  // Stoppage.
  StoppageType type = StoppageType::kBench;
  double slow_speed = 0.0;  // m/s
};

struct PlayerSample {
  Vec2 pos;
  Vec2 vel;
};

double centroid_x(const Episode& ep, double tau_ms) {
  const double dur = static_cast<double>(ep.end - ep.start);
  const double a = static_cast<double>(ep.approach_ms);
  const double l = static_cast<double>(ep.leave_ms);
  if (tau_ms < a) return ep.side * (kEntryX + (kSetX - kEntryX) * tau_ms / a);
  if (tau_ms < dur - l || l == 0.0) return ep.side * kSetX;
  return ep.side * (kSetX - (kSetX + kBandEdge) * (tau_ms - (dur - l)) / l);
}

double centroid_vx(const Episode& ep, double tau_ms) {
  const double dur = static_cast<double>(ep.end - ep.start);
  const double a = static_cast<double>(ep.approach_ms);
  const double l = static_cast<double>(ep.leave_ms);
  if (tau_ms < a) return ep.side * (kSetX - kEntryX) / (a / 1000.0);
  if (tau_ms < dur - l || l == 0.0) return 0.0;
  return -ep.side * (kSetX + kBandEdge) / (l / 1000.0);
}

// Runner angle and angular speed at tau, slowing inside lulls.
std::pair<double, double> runner_angle(const Episode& ep, double tau_ms) {
  double theta = ep.phase0 + kRunnerOmega * tau_ms / 1000.0;
  double omega = kRunnerOmega;
  for (const Lull& lull : ep.lulls) {
    const double b = static_cast<double>(lull.begin);
    const double e = static_cast<double>(lull.end);
    const double overlap = std::clamp(tau_ms, b, e) - b;
    theta -= (kRunnerOmega - lull.omega) * overlap / 1000.0;
    if (tau_ms >= b && tau_ms < e) omega = lull.omega;
  }
  return {theta, omega};
}

PlayerSample formation_sample(Vec2 center, Vec2 center_vel, int side, double scale,
                              std::size_t slot, double theta, double omega, double tau_s,
                              double wiggle_phase) {
  const Vec2 off{side * kFormation[slot].x * scale, kFormation[slot].y * scale};
  PlayerSample s{{center.x + off.x, center.y + off.y}, center_vel};
  if (slot == 0 || slot == 1) {
    const double sign = slot == 0 ? 1.0 : -1.0;
    s.pos.x += sign * kRunnerRadius * std::cos(theta);
    s.pos.y += sign * kRunnerRadius * std::sin(theta);
    s.vel.x += -sign * kRunnerRadius * omega * std::sin(theta);
    s.vel.y += sign * kRunnerRadius * omega * std::cos(theta);
  } else if (slot == 2 || slot == 3) {
    const double sign = slot == 2 ? 1.0 : -1.0;
    const double a = kWiggleA * tau_s + wiggle_phase;
    const double b = kWiggleB * tau_s + wiggle_phase;
    s.pos.x += sign * kWiggleAmp * std::sin(a);
    s.pos.y += sign * kWiggleAmp * std::cos(b);
    s.vel.x += sign * kWiggleAmp * kWiggleA * std::cos(a);
    s.vel.y += -sign * kWiggleAmp * kWiggleB * std::sin(b);
  }
  return s;
}

Vec2 bench_spot(std::size_t roster_slot, std::size_t roster_size, const CourtSpec& court) {
  const double x = -6.0 + 12.0 * (static_cast<double>(roster_slot) + 0.5) /
                              static_cast<double>(roster_size);
  return {x, court.half_width + 1.48};
}

PlayerSample sample_player(const Episode& ep, std::size_t roster_slot,
                           std::size_t roster_size, Millis t, const CourtSpec& court) {
  const auto it = std::find(ep.lineup.begin(), ep.lineup.end(), roster_slot);
  const bool on = it != ep.lineup.end() &&
                  !(!ep.is_action && (ep.type == StoppageType::kBench ||
                                      ep.type == StoppageType::kHalftime));
  if (!on) {
    return {bench_spot(roster_slot, roster_size, court), {0.0, 0.0}};
  }
  const auto slot = static_cast<std::size_t>(it - ep.lineup.begin());
  const double tau_ms = static_cast<double>(t - ep.start);
  const double tau_s = tau_ms / 1000.0;
  if (ep.is_action) {
    const auto [theta, omega] = runner_angle(ep, tau_ms);
    return formation_sample({centroid_x(ep, tau_ms), 0.0}, {centroid_vx(ep, tau_ms), 0.0},
                            ep.side, ep.scale, slot, theta, omega, tau_s, ep.phase0);
  }
  if (ep.type == StoppageType::kFreeThrow) {
    const double cx = court.ft_circle_center_abs_x;
    static constexpr std::array<Vec2, 5> kLane = {
        Vec2{-1.7, 3.0}, Vec2{-1.7, -3.0}, Vec2{0.0, 0.0}, Vec2{2.8, 3.5}, Vec2{2.8, -3.5}};
    return {{ep.side * (cx + kLane[slot].x), kLane[slot].y}, {0.0, 0.0}};
  }
  // Slow run: the set formation, runners circling at the slow speed.
  const double omega = ep.slow_speed / kRunnerRadius;
  return formation_sample({ep.side * kSetX, 0.0}, {0.0, 0.0}, ep.side, ep.scale, slot,
                          ep.phase0 + omega * tau_s, omega, tau_s, ep.phase0);
}

Lineup pick_lineup(Rng& rng, std::size_t roster_size) {
  std::vector<std::uint16_t> slots(roster_size);
  for (std::size_t i = 0; i < roster_size; ++i) slots[i] = static_cast<std::uint16_t>(i);
  for (std::size_t i = 0; i < 5; ++i) {
    std::swap(slots[i], slots[i + rng.below(roster_size - i)]);
  }
  Lineup lineup;
  std::copy_n(slots.begin(), 5, lineup.begin());
  std::sort(lineup.begin(), lineup.end());
  return lineup;
}

void check_formation(double scale, const CourtSpec& court, const char* which) {
  // Set-phase extents, worst case over the runner circle and the wiggle.
  double max_x = 0.0;
  double max_y = 0.0;
  double min_ft = 1e9;
  for (std::size_t slot = 0; slot < 5; ++slot) {
    const double extra = slot < 2 ? kRunnerRadius : (slot < 4 ? kWiggleAmp : 0.0);
    const Vec2 p{kSetX + kFormation[slot].x * scale, kFormation[slot].y * scale};
    max_x = std::max(max_x, std::abs(p.x) + extra);
    max_y = std::max(max_y, std::abs(p.y) + extra);
    min_ft = std::min(min_ft, pair_distance(p, {court.ft_circle_center_abs_x, 0.0}) - extra);
  }
  if (max_x >= court.half_length || max_y >= court.half_width) {
    throw InputError(std::string(which) + " spacing does not fit on the court");
  }
  if (min_ft <= court.ft_circle_radius) {
    throw InputError(std::string(which) + " spacing puts a player in the free-throw circle");
  }
}

}  // namespace

void validate_plan(const SynthPlan& plan, const CourtSpec& court) {
  court.validate();
  if (plan.n_actions < 1) throw InputError("plan needs at least one action");
  if (!(plan.sampling_hz > 0.0)) throw InputError("sampling_hz must be positive");
  if (plan.sampling_jitter < 0.0 || plan.sampling_jitter > 0.9)
    throw InputError("sampling_jitter must lie in [0, 0.9]");
  if (!(plan.detection_prob > 0.0) || plan.detection_prob > 1.0)
    throw InputError("detection_prob must lie in (0, 1]");
  if (plan.velocity_noise_ms < 0.0) throw InputError("velocity_noise_ms must be >= 0");
  if (plan.roster_size < 5 || plan.roster_size > 999)
    throw InputError("roster_size must lie in [5, 999]");
  if (plan.pre_game_s < 0.0 || plan.post_game_s < 0.0)
    throw InputError("pre/post game durations must be >= 0");
  if (std::abs(kBandEdge - court.transition_half_width) > 1e-9)
    throw InputError("synthetic kinematics assume a 4 m transition band");

  const DurationSpec& d = plan.durations;
  if (d.kind == DurationSpec::Kind::kLognormal) {
    if (!(d.median_s > 0.0) || d.sigma < 0.0)
      throw InputError("lognormal durations need median_s > 0 and sigma >= 0");
  } else {
    if (d.knots.size() < 2 || d.knots.front().first != 0.0 || d.knots.back().first != 1.0)
      throw InputError("quantile knots must run from u = 0 to u = 1");
    for (std::size_t i = 1; i < d.knots.size(); ++i) {
      if (!(d.knots[i].first > d.knots[i - 1].first) ||
          d.knots[i].second < d.knots[i - 1].second)
        throw InputError("quantile knots must increase");
    }
  }
  if (d.total_s && !(*d.total_s > 0.0)) throw InputError("total_s must be positive");

  const double two_samples_s = 2.0 * nominal_period_ms(plan) / 1000.0;
  Rng rng(plan.seed);
  for (double dur : draw_durations(plan, rng)) {
    if (dur < two_samples_s) {
      throw InputError("infeasible plan: action of " + std::to_string(dur) +
                       " s is shorter than 2 samples");
    }
  }
  for (const auto& s : plan.stoppages) {
    if (s.duration_s < two_samples_s)
      throw InputError("infeasible plan: " + std::string(stoppage_name(s.type)) +
                       " stoppage shorter than 2 samples");
    if (s.after_action && (*s.after_action < 1 || *s.after_action > plan.n_actions))
      throw InputError("stoppage after_action out of range");
    if (s.speed_kmh < 0.0) throw InputError("stoppage speed must be >= 0");
  }
  for (const auto& l : plan.lulls) {
    if (!(l.duration_s > 0.0) || l.count < 0 || !(l.speed_kmh > 0.0))
      throw InputError("lulls need positive duration and speed");
  }
  check_formation(spacing_scale(plan.offense_spacing_m), court, "offense");
  check_formation(spacing_scale(plan.defense_spacing_m), court, "defense");
}

SynthGame generate(const SynthPlan& plan, const CourtSpec& court) {
  validate_plan(plan, court);
  Rng rng(plan.seed);
  const auto durations = draw_durations(plan, rng);
  const auto n = static_cast<std::size_t>(plan.n_actions);
  const auto k = static_cast<std::size_t>(plan.roster_size);

  // Stoppages by the action they follow; unplaced ones spread over the gaps.
  std::vector<std::vector<PlannedStoppage>> after(n + 1);
  {
    std::vector<PlannedStoppage> unplaced;
    for (const auto& s : plan.stoppages) {
      if (s.after_action) {
        after[static_cast<std::size_t>(*s.after_action)].push_back(s);
      } else if (s.type == StoppageType::kHalftime) {
        after[std::max<std::size_t>(1, n / 2)].push_back(s);
      } else {
        unplaced.push_back(s);
      }
    }
    const std::size_t gaps = n > 1 ? n - 1 : 1;
    for (std::size_t j = 0; j < unplaced.size(); ++j) {
      const auto slot = 1 + static_cast<std::size_t>(
                                (static_cast<double>(j) + 0.5) * static_cast<double>(gaps) /
                                static_cast<double>(unplaced.size()));
      after[std::min(slot, n)].push_back(unplaced[j]);
    }
  }

  const double offense_scale = spacing_scale(plan.offense_spacing_m);
  const double defense_scale = spacing_scale(plan.defense_spacing_m);

  std::vector<Episode> episodes;
  GroundTruth truth;
  Millis t = 0;
  Lineup lineup = pick_lineup(rng, k);
  auto push_stoppage = [&](StoppageType type, Millis dur, int side, double scale,
                           double speed_kmh) {
    Episode ep;
    ep.start = t;
    ep.end = t + dur;
    ep.type = type;
    ep.lineup = lineup;
    ep.side = side;
    ep.scale = scale;
    ep.slow_speed = speed_kmh / 3.6;
    ep.phase0 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    episodes.push_back(ep);
    truth.stoppages.push_back({type, ep.start, ep.end, speed_kmh});
    t = ep.end;
  };

  if (plan.pre_game_s > 0.0) push_stoppage(StoppageType::kBench, to_ms(plan.pre_game_s), 1, 1.0, 0.0);

  bool second_half = false;
  int side = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Episode ep;
    ep.is_action = true;
    ep.act_id = static_cast<int>(i + 1);
    ep.start = t;
    ep.end = t + std::max<Millis>(1, to_ms(durations[i]));
    ep.lineup = lineup;
    ep.side = side;
    ep.crossing = i + 1 < n && after[i + 1].empty();
    const bool attack_positive = plan.attack_positive_x_first_half != second_half;
    ep.phase = (side > 0) == attack_positive ? Phase::kOffense : Phase::kDefense;
    ep.scale = ep.phase == Phase::kOffense ? offense_scale : defense_scale;
    const Millis dur = ep.end - ep.start;
    const Millis nominal = kApproachMs + (ep.crossing ? kLeaveMs : 0);
    const double squeeze = std::min(1.0, static_cast<double>(dur) / static_cast<double>(nominal));
    ep.approach_ms = std::llround(kApproachMs * squeeze);
    ep.leave_ms = ep.crossing ? std::llround(kLeaveMs * squeeze) : 0;
    if (ep.approach_ms + ep.leave_ms > dur) ep.leave_ms = dur - ep.approach_ms;
    ep.phase0 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    episodes.push_back(ep);

    TruthAction ta;
    ta.act_id = ep.act_id;
    ta.start_ms = ep.start;
    ta.end_ms = ep.end;
    ta.side = side;
    ta.phase = ep.phase;
    ta.band_entry_ms = ep.crossing
                           ? ep.end - ep.leave_ms +
                                 std::llround(static_cast<double>(ep.leave_ms) *
                                              (kSetX - kBandEdge) / (kSetX + kBandEdge))
                           : ep.end;
    truth.actions.push_back(ta);
    truth.planted_active_s += static_cast<double>(dur) / 1000.0;
    t = ep.end;

    for (const auto& s : after[i + 1]) {
      const bool leaves_court = s.type == StoppageType::kBench || s.type == StoppageType::kHalftime;
      push_stoppage(s.type, to_ms(s.duration_s), side, ep.scale, s.speed_kmh);
      if (s.type == StoppageType::kHalftime) {
        if (!truth.halftime_ms) truth.halftime_ms = (episodes.back().start + episodes.back().end) / 2;
        second_half = !second_half;
      }
      if (leaves_court) {
        lineup = pick_lineup(rng, k);
      }
    }
    side = -side;
  }
  if (plan.post_game_s > 0.0) push_stoppage(StoppageType::kBench, to_ms(plan.post_game_s), side, 1.0, 0.0);
  const Millis session_end = t;

  // Lulls go into the set phase of randomly chosen actions.
  std::vector<Episode*> actions;
  for (auto& e : episodes) {
    if (e.is_action) actions.push_back(&e);
  }
  for (const auto& planned : plan.lulls) {
    const Millis len = to_ms(planned.duration_s);
    for (int c = 0; c < planned.count; ++c) {
      bool placed = false;
      const std::size_t first_try = rng.below(n);
      for (std::size_t probe = 0; probe < n && !placed; ++probe) {
        Episode& target = *actions[(first_try + probe) % n];
        const Millis set_begin = target.approach_ms + kLullMarginMs;
        const Millis set_end = (target.end - target.start) - target.leave_ms - kLullMarginMs;
        std::sort(target.lulls.begin(), target.lulls.end(),
                  [](const Lull& a, const Lull& b) { return a.begin < b.begin; });
        std::vector<std::pair<Millis, Millis>> free;
        Millis cursor = set_begin;
        for (const Lull& l : target.lulls) {
          free.emplace_back(cursor, l.begin - kLullMarginMs);
          cursor = l.end + kLullMarginMs;
        }
        free.emplace_back(cursor, set_end);
        for (const auto& [b, e] : free) {
          if (e - b < len) continue;
          const Millis begin =
              b + static_cast<Millis>(rng.below(static_cast<std::size_t>(e - b - len + 1)));
          target.lulls.push_back({begin, begin + len, planned.speed_kmh / 3.6 / kRunnerRadius});
          placed = true;
          break;
        }
      }
      if (!placed) {
        throw InputError("infeasible plan: no action has room for another " +
                         std::to_string(planned.duration_s) + " s lull");
      }
    }
  }

  // Truth intervals: runs of back-to-back actions.
  for (const auto& ep : episodes) {
    if (!ep.is_action) continue;
    if (!truth.active_intervals.empty() && truth.active_intervals.back().second == ep.start) {
      truth.active_intervals.back().second = ep.end;
    } else {
      truth.active_intervals.emplace_back(ep.start, ep.end);
    }
  }

  // Sample on a jittered global clock; each player is seen on a random subset
  // of ticks, and by every tick that opens an episode.
  SynthGame game;
  game.info = {plan.team, plan.date};
  std::vector<std::string> ids(k);
  const int width = k >= 100 ? 3 : 2;
  for (std::size_t p = 0; p < k; ++p) {
    std::ostringstream id;
    id << 'p';
    id.width(width);
    id.fill('0');
    id << (p + 1);
    ids[p] = id.str();
  }
  std::vector<std::vector<RawRecord>> streams(k);
  const std::size_t per_tick = plan.emit_extra_labels ? 8 : 4;
  const auto expected_ticks = static_cast<std::size_t>(
      static_cast<double>(session_end) / nominal_period_ms(plan) * 1.05 + 16);
  for (auto& s : streams) {
    s.reserve(static_cast<std::size_t>(static_cast<double>(expected_ticks) * plan.detection_prob * 1.1) * per_tick);
  }

  const double y_shift = court.center_y();
  const double period = nominal_period_ms(plan);
  std::vector<bool> detected(k);
  std::size_t ep_index = 0;
  double clock = 0.0;
  while (true) {
    const Millis now = std::llround(clock);
    if (now >= session_end) break;
    const std::size_t prev_index = ep_index;
    while (ep_index + 1 < episodes.size() && episodes[ep_index].end <= now) ++ep_index;
    const Episode& ep = episodes[ep_index];
    const bool episode_start = ep_index != prev_index || truth.ticks_total == 0;

    ++truth.ticks_total;
    if (!ep.is_action) {
      switch (ep.type) {
        case StoppageType::kBench:
        case StoppageType::kHalftime: ++truth.expected_removed_1a; break;
        case StoppageType::kFreeThrow: ++truth.expected_removed_1b; break;
        case StoppageType::kSlowRun: ++truth.expected_removed_1c; break;
      }
    }

    bool any = false;
    for (std::size_t p = 0; p < k; ++p) {
      detected[p] = rng.uniform() < plan.detection_prob || episode_start;
      any = any || detected[p];
    }
    if (!any) detected[rng.below(k)] = true;

    for (std::size_t p = 0; p < k; ++p) {
      if (!detected[p]) continue;
      PlayerSample s = sample_player(ep, p, k, now, court);
      s.vel.x += rng.uniform(-plan.velocity_noise_ms, plan.velocity_noise_ms);
      s.vel.y += rng.uniform(-plan.velocity_noise_ms, plan.velocity_noise_ms);
      auto& out = streams[p];
      out.push_back({Label::kPosX, now, round_to(s.pos.x, 0.01)});
      out.push_back({Label::kPosY, now, round_to(s.pos.y + y_shift, 0.01)});
      out.push_back({Label::kVelX, now, round_to(s.vel.x, 0.001)});
      out.push_back({Label::kVelY, now, round_to(s.vel.y, 0.001)});
      if (plan.emit_extra_labels) {
        out.push_back({Label::kPosZ, now, 0.0});
        out.push_back({Label::kAccX, now, 0.0});
        out.push_back({Label::kAccY, now, 0.0});
        out.push_back({Label::kAccZ, now, 0.0});
      }
    }

    const double jitter = rng.uniform(-plan.sampling_jitter, plan.sampling_jitter);
    clock += std::max(1.0, std::round(period * (1.0 + jitter)));
  }

  for (std::size_t p = 0; p < k; ++p) {
    game.records.emplace(ids[p], std::move(streams[p]));
  }
  game.truth = std::move(truth);
  return game;
}

bool GroundTruth::is_active(Millis ms) const {
  const auto it = std::upper_bound(
      active_intervals.begin(), active_intervals.end(), ms,
      [](Millis v, const std::pair<Millis, Millis>& iv) { return v < iv.first; });
  if (it == active_intervals.begin()) return false;
  return ms < std::prev(it)->second;
}

std::optional<Phase> GroundTruth::expected_phase(Millis ms) const {
  const auto it = std::upper_bound(
      actions.begin(), actions.end(), ms,
      [](Millis v, const TruthAction& a) { return v < a.start_ms; });
  if (it == actions.begin()) return std::nullopt;
  const TruthAction& a = *std::prev(it);
  if (ms >= a.end_ms) return std::nullopt;
  if (ms >= a.band_entry_ms) return Phase::kTransition;
  return a.phase;
}

void write_dataset(const SynthGame& game, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Json manifest;
  manifest["team"] = game.info.team;
  manifest["date"] = game.info.date;
  manifest["delimiter"] = ",";
  Json players = Json::array();
  std::string buffer;
  for (const auto& [id, records] : game.records) {
    const std::string file = id + ".csv";
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw InputError("cannot write " + (dir / file).string());
    buffer.clear();
    buffer += "label,ms,value\n";
    for (const RawRecord& r : records) {
      buffer += label_name(r.label);
      buffer += ',';
      buffer += std::to_string(r.ms);
      buffer += ',';
      buffer += format_number(r.value);
      buffer += '\n';
      if (buffer.size() > (1u << 20)) {
        out << buffer;
        buffer.clear();
      }
    }
    out << buffer;
    players.push_back(Json{{"id", id}, {"name", id}, {"file", file}});
  }
  manifest["players"] = std::move(players);
  save_json(dir / "manifest.json", manifest);
  save_json(dir / "truth.json", to_json(game.truth));
}

SynthPlan regulation_game_plan(std::uint64_t seed) {
  SynthPlan plan;
  plan.n_actions = 151;
  plan.seed = seed;
  // Quantile knots hit a 15.66 s median, ~23% under 10 s, ~26% over 20 s and
  // four of 151 actions over 38 s.
  plan.durations.kind = DurationSpec::Kind::kQuantile;
  plan.durations.knots = {{0.0, 5.0},     {0.2318, 10.0}, {0.5, 15.66}, {0.7351, 20.0},
                          {0.96, 27.0},   {0.974, 38.0},  {1.0, 42.0}};
  plan.durations.min_s = 5.0;
  plan.pre_game_s = 660.0;
  plan.post_game_s = 660.0;
  auto add = [&](StoppageType type, double seconds, std::optional<int> after) {
    PlannedStoppage s;
    s.type = type;
    s.duration_s = seconds;
    s.after_action = after;
    plan.stoppages.push_back(s);
  };
  add(StoppageType::kBench, 120.0, 38);   // quarter breaks
  add(StoppageType::kHalftime, 900.0, 76);
  add(StoppageType::kBench, 120.0, 113);
  for (int after : {20, 55, 90, 130, 146}) add(StoppageType::kBench, 60.0, after);  // time-outs
  for (int after : {9, 27, 45, 63, 85, 101, 122, 140}) add(StoppageType::kFreeThrow, 12.0, after);
  for (int after : {5, 16, 31, 50, 69, 81, 96, 108, 118, 135}) add(StoppageType::kSlowRun, 4.0, after);
  return plan;
}

}  // namespace courtfilter
