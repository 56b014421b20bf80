#include "courtfilter/serialize.hpp"

#include <fstream>

#include "courtfilter/error.hpp"

namespace courtfilter {

namespace {

template <typename T>
void read_opt(const Json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("bad value for '") + key + "'");
  }
}

template <typename T>
void read_opt(const Json& doc, const char* key, std::optional<T>& out) {
  if (!doc.contains(key)) return;
  if (doc.at(key).is_null()) {
    out.reset();
    return;
  }
  T value{};
  read_opt(doc, key, value);
  out = value;
}

template <typename T>
Json opt_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

StoppageType parse_stoppage(const std::string& name) {
  if (name == "bench") return StoppageType::kBench;
  if (name == "free_throw") return StoppageType::kFreeThrow;
  if (name == "slow_run") return StoppageType::kSlowRun;
  if (name == "halftime") return StoppageType::kHalftime;
  throw InputError("unknown stoppage type '" + name + "'");
}

Json histogram_json(const Histogram& h) {
  return Json{{"edges", h.edges}, {"counts", h.counts}};
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

CourtSpec court_from_json(const Json& doc, CourtSpec court) {
  if (!doc.is_object()) throw InputError("court config must be an object");
  read_opt(doc, "half_length_m", court.half_length);
  read_opt(doc, "half_width_m", court.half_width);
  read_opt(doc, "ft_circle_center_abs_x_m", court.ft_circle_center_abs_x);
  read_opt(doc, "ft_circle_radius_m", court.ft_circle_radius);
  read_opt(doc, "transition_half_width_m", court.transition_half_width);
  read_opt(doc, "attack_positive_x_first_half", court.attack_positive_x_first_half);
  if (doc.contains("y_origin")) {
    std::string origin;
    read_opt(doc, "y_origin", origin);
    if (origin == "center") {
      court.y_origin = YOrigin::kCenter;
    } else if (origin == "sideline") {
      court.y_origin = YOrigin::kSideline;
    } else {
      throw InputError("y_origin must be 'center' or 'sideline'");
    }
  }
  court.validate();
  return court;
}

Json to_json(const CourtSpec& court) {
  return Json{{"half_length_m", court.half_length},
              {"half_width_m", court.half_width},
              {"ft_circle_center_abs_x_m", court.ft_circle_center_abs_x},
              {"ft_circle_radius_m", court.ft_circle_radius},
              {"transition_half_width_m", court.transition_half_width},
              {"attack_positive_x_first_half", court.attack_positive_x_first_half},
              {"y_origin", court.y_origin == YOrigin::kCenter ? "center" : "sideline"}};
}

FilterParams filter_params_from_json(const Json& doc, FilterParams params) {
  if (!doc.is_object()) throw InputError("filter config must be an object");
  read_opt(doc, "h1_s", params.h1_s);
  read_opt(doc, "h2_kmh", params.h2_kmh);
  read_opt(doc, "h3_s", params.h3_s);
  read_opt(doc, "run_gap_break_ms", params.run_gap_break_ms);
  read_opt(doc, "active_gap_cap_ms", params.active_gap_cap_ms);
  params.validate();
  return params;
}

Json to_json(const FilterParams& params) {
  return Json{{"h1_s", params.h1_s},
              {"h2_kmh", params.h2_kmh},
              {"h3_s", params.h3_s},
              {"run_gap_break_ms", params.run_gap_break_ms},
              {"active_gap_cap_ms", params.active_gap_cap_ms}};
}

Json to_json(const FilterReport& report) {
  return Json{{"rows_in", report.rows_in},
              {"rows_removed_1a", report.rows_removed_1a},
              {"rows_removed_1b", report.rows_removed_1b},
              {"rows_removed_1c", report.rows_removed_1c},
              {"rows_out", report.rows_out},
              {"active_minutes", report.active_minutes}};
}

SynthPlan plan_from_json(const Json& doc, SynthPlan plan) {
  if (!doc.is_object()) throw InputError("plan must be an object");
  read_opt(doc, "n_actions", plan.n_actions);
  read_opt(doc, "pre_game_s", plan.pre_game_s);
  read_opt(doc, "post_game_s", plan.post_game_s);
  read_opt(doc, "sampling_hz", plan.sampling_hz);
  read_opt(doc, "sampling_jitter", plan.sampling_jitter);
  read_opt(doc, "detection_prob", plan.detection_prob);
  read_opt(doc, "velocity_noise_ms", plan.velocity_noise_ms);
  read_opt(doc, "roster_size", plan.roster_size);
  read_opt(doc, "offense_spacing_m", plan.offense_spacing_m);
  read_opt(doc, "defense_spacing_m", plan.defense_spacing_m);
  read_opt(doc, "attack_positive_x_first_half", plan.attack_positive_x_first_half);
  read_opt(doc, "emit_extra_labels", plan.emit_extra_labels);
  read_opt(doc, "seed", plan.seed);
  read_opt(doc, "team", plan.team);
  read_opt(doc, "date", plan.date);

  if (doc.contains("durations")) {
    const Json& d = doc.at("durations");
    DurationSpec& spec = plan.durations;
    if (d.contains("kind")) {
      std::string kind;
      read_opt(d, "kind", kind);
      if (kind == "lognormal") {
        spec.kind = DurationSpec::Kind::kLognormal;
      } else if (kind == "quantile") {
        spec.kind = DurationSpec::Kind::kQuantile;
      } else {
        throw InputError("durations.kind must be 'lognormal' or 'quantile'");
      }
    }
    read_opt(d, "median_s", spec.median_s);
    read_opt(d, "sigma", spec.sigma);
    read_opt(d, "knots", spec.knots);
    read_opt(d, "min_s", spec.min_s);
    read_opt(d, "max_s", spec.max_s);
    read_opt(d, "total_s", spec.total_s);
  }
  if (doc.contains("stoppages")) {
    plan.stoppages.clear();
    for (const Json& s : doc.at("stoppages")) {
      PlannedStoppage ps;
      std::string type;
      read_opt(s, "type", type);
      ps.type = parse_stoppage(type);
      read_opt(s, "duration_s", ps.duration_s);
      read_opt(s, "after_action", ps.after_action);
      read_opt(s, "speed_kmh", ps.speed_kmh);
      plan.stoppages.push_back(ps);
    }
  }
  if (doc.contains("lulls")) {
    plan.lulls.clear();
    for (const Json& l : doc.at("lulls")) {
      PlannedLull pl;
      read_opt(l, "speed_kmh", pl.speed_kmh);
      read_opt(l, "duration_s", pl.duration_s);
      read_opt(l, "count", pl.count);
      plan.lulls.push_back(pl);
    }
  }
  return plan;
}

Json to_json(const SynthPlan& plan) {
  Json durations{{"kind", plan.durations.kind == DurationSpec::Kind::kLognormal ? "lognormal"
                                                                                 : "quantile"},
                 {"median_s", plan.durations.median_s},
                 {"sigma", plan.durations.sigma},
                 {"knots", plan.durations.knots},
                 {"min_s", plan.durations.min_s},
                 {"max_s", opt_json(plan.durations.max_s)},
                 {"total_s", opt_json(plan.durations.total_s)}};
  Json stoppages = Json::array();
  for (const auto& s : plan.stoppages) {
    stoppages.push_back(Json{{"type", stoppage_name(s.type)},
                             {"duration_s", s.duration_s},
                             {"after_action", opt_json(s.after_action)},
                             {"speed_kmh", s.speed_kmh}});
  }
  Json lulls = Json::array();
  for (const auto& l : plan.lulls) {
    lulls.push_back(
        Json{{"speed_kmh", l.speed_kmh}, {"duration_s", l.duration_s}, {"count", l.count}});
  }
  return Json{{"n_actions", plan.n_actions},
              {"durations", std::move(durations)},
              {"stoppages", std::move(stoppages)},
              {"lulls", std::move(lulls)},
              {"pre_game_s", plan.pre_game_s},
              {"post_game_s", plan.post_game_s},
              {"sampling_hz", plan.sampling_hz},
              {"sampling_jitter", plan.sampling_jitter},
              {"detection_prob", plan.detection_prob},
              {"velocity_noise_ms", plan.velocity_noise_ms},
              {"roster_size", plan.roster_size},
              {"offense_spacing_m", plan.offense_spacing_m},
              {"defense_spacing_m", plan.defense_spacing_m},
              {"attack_positive_x_first_half", plan.attack_positive_x_first_half},
              {"emit_extra_labels", plan.emit_extra_labels},
              {"seed", plan.seed},
              {"team", plan.team},
              {"date", plan.date}};
}

Json to_json(const GroundTruth& truth) {
  Json intervals = Json::array();
  for (const auto& [b, e] : truth.active_intervals) intervals.push_back(Json::array({b, e}));
  Json actions = Json::array();
  for (const auto& a : truth.actions) {
    actions.push_back(Json{{"act_id", a.act_id},
                           {"start_ms", a.start_ms},
                           {"end_ms", a.end_ms},
                           {"side", a.side},
                           {"phase", phase_name(a.phase)},
                           {"band_entry_ms", a.band_entry_ms}});
  }
  Json stoppages = Json::array();
  for (const auto& s : truth.stoppages) {
    stoppages.push_back(Json{{"type", stoppage_name(s.type)},
                             {"start_ms", s.start_ms},
                             {"end_ms", s.end_ms},
                             {"speed_kmh", s.speed_kmh}});
  }
  return Json{{"planted_active_s", truth.planted_active_s},
              {"halftime_ms", opt_json(truth.halftime_ms)},
              {"ticks_total", truth.ticks_total},
              {"expected_removed_1a", truth.expected_removed_1a},
              {"expected_removed_1b", truth.expected_removed_1b},
              {"expected_removed_1c", truth.expected_removed_1c},
              {"active_intervals", std::move(intervals)},
              {"actions", std::move(actions)},
              {"stoppages", std::move(stoppages)}};
}

Json to_json(const DistributionSummary& summary) {
  return Json{{"n", summary.n},
              {"mean", summary.mean},
              {"median", summary.median},
              {"q25", summary.q25},
              {"q75", summary.q75},
              {"histogram", histogram_json(summary.histogram)}};
}

Json to_json(const BandShares& bands) {
  return Json{{"under_10s", bands.under_10s},
              {"from_10_to_20s", bands.from_10_to_20s},
              {"over_20s", bands.over_20s}};
}

Json to_json(const Comparison& comparison) {
  Json doc{{"delta_mean", comparison.delta_mean},
           {"delta_median", comparison.delta_median},
           {"delta_q25", comparison.delta_q25},
           {"delta_q75", comparison.delta_q75},
           {"delta_bin_share", comparison.delta_bin_share}};
  if (comparison.delta_bands) doc["delta_bands"] = to_json(*comparison.delta_bands);
  return doc;
}

Json to_json(const Recommendation& rec) {
  return Json{{"h2_kmh", rec.h2_kmh},
              {"h3_s", rec.h3_s},
              {"active_minutes", rec.active_minutes},
              {"rule", "closest to target; ties go to the cell nearest the grid centre"}};
}

}  // namespace courtfilter
