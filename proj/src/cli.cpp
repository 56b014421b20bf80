#include "courtfilter/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "courtfilter/action_segmenter.hpp"
#include "courtfilter/activity_filter.hpp"
#include "courtfilter/calibration.hpp"
#include "courtfilter/error.hpp"
#include "courtfilter/game_stats.hpp"
#include "courtfilter/ingest.hpp"
#include "courtfilter/serialize.hpp"
#include "courtfilter/synth.hpp"
#include "courtfilter/wide_matrix.hpp"

namespace courtfilter {

namespace fs = std::filesystem;

namespace {

struct InputOptions {
  std::string manifest;
  std::string wide;
  std::string court_config;
  std::string config;
  std::optional<double> band_m;
};

struct FilterFlags {
  std::optional<double> h1_s;
  std::optional<double> h2_kmh;
  std::optional<double> h3_s;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  auto* m = cmd->add_option("--manifest", in.manifest, "player manifest (JSON)");
  auto* w = cmd->add_option("--wide", in.wide, "wide matrix CSV");
  m->excludes(w);
  cmd->add_option("--court-config", in.court_config, "court geometry (JSON)");
  cmd->add_option("--config", in.config, "filter settings (JSON)");
  cmd->add_option("--band-m", in.band_m, "transition half-width, m (default 4)");
}

void add_filter_flags(CLI::App* cmd, FilterFlags& f) {
  cmd->add_option("--h1-s", f.h1_s, "free-throw dwell, s (default 10)");
  cmd->add_option("--h2-kmh", f.h2_kmh, "slow speed threshold, km/h (default 9)");
  cmd->add_option("--h3-s", f.h3_s, "slow run duration, s (default 2.5)");
}

CourtSpec load_court(const InputOptions& in) {
  CourtSpec court;
  if (!in.config.empty()) {
    const Json doc = load_json(in.config);
    if (doc.contains("court")) court = court_from_json(doc.at("court"), court);
  }
  if (!in.court_config.empty()) court = court_from_json(load_json(in.court_config), court);
  if (in.band_m) court.transition_half_width = *in.band_m;
  court.validate();
  return court;
}

FilterParams load_params(const InputOptions& in, const FilterFlags& flags) {
  FilterParams params;
  if (!in.config.empty()) params = filter_params_from_json(load_json(in.config), params);
  if (flags.h1_s) params.h1_s = *flags.h1_s;
  if (flags.h2_kmh) params.h2_kmh = *flags.h2_kmh;
  if (flags.h3_s) params.h3_s = *flags.h3_s;
  params.validate();
  return params;
}

GameTimeline load_timeline(const InputOptions& in) {
  if (!in.manifest.empty()) return ingest_manifest(load_manifest(in.manifest));
  if (in.wide.empty()) throw InputError("one of --manifest or --wide is required");
  std::ifstream file(in.wide, std::ios::binary);
  if (!file) throw InputError("cannot open " + in.wide);
  try {
    return read_wide_matrix(file);
  } catch (const InputError& e) {
    throw InputError(in.wide + ": " + e.what());
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

DurationWindow parse_window(const std::string& text) {
  const auto colon = text.find(':');
  DurationWindow window;
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    window.min_s = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string hi = text.substr(colon + 1);
    window.max_s = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw InputError("malformed duration window '" + text + "', expected lo:hi");
  }
  if (!(window.min_s <= window.max_s)) throw InputError("duration window lo exceeds hi");
  return window;
}

// ---- ingest ----------------------------------------------------------------

struct IngestArgs {
  std::string manifest;
  std::string out;
};

int cmd_ingest(const IngestArgs& args, std::ostream& out) {
  const GameTimeline tl = ingest_manifest(load_manifest(args.manifest));
  auto file = open_out(args.out);
  write_wide_matrix(file, tl);
  out << "rows " << tl.size() << "\nplayers " << tl.roster_size() << '\n';
  return 0;
}

// ---- filter ----------------------------------------------------------------

struct FilterArgs {
  InputOptions in;
  FilterFlags flags;
  std::optional<Millis> halftime_ms;
  std::string window = "4:38";
  std::string out;
};

int cmd_filter(const FilterArgs& args, std::ostream& out, std::ostream& err) {
  const CourtSpec court = load_court(args.in);
  const FilterParams params = load_params(args.in, args.flags);
  const DurationWindow window = parse_window(args.window);
  std::vector<std::string> warnings = params.feasibility_warnings();
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  const GameTimeline tl = load_timeline(args.in);
  const FilterResult result = run_filter(tl, court, params);
  const Selection& sel = result.selection;

  const auto ms = detail::selected_ms(tl, sel);
  SideConfig sides;
  sides.attack_positive_x_first_half = court.attack_positive_x_first_half;
  sides.halftime_ms = args.halftime_ms ? args.halftime_ms : infer_halftime(ms);
  const auto centroids = team_centroids(tl, sel);
  const auto labels = label_phases(centroids, ms, court, sides);
  const auto segments = assign_actions(centroids, ms, labels, court);
  const auto ids = act_ids(segments, sel.size());
  const ActionSummary actions = summarize_actions(segments, window);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  {
    auto f = open_out(dir / "reduced.csv");
    write_wide_matrix(f, tl.subset(sel.rows));
  }
  {
    auto f = open_out(dir / "segments.csv");
    std::string buf = "ms,avg_pos_x,avg_pos_y,label,act_id\n";
    for (std::size_t i = 0; i < sel.size(); ++i) {
      buf += std::to_string(ms[i]) + ',' + format_number(centroids[i].x) + ',' +
             format_number(centroids[i].y) + ',' + std::string(phase_name(labels[i])) + ',' +
             std::to_string(ids[i]) + '\n';
    }
    f << buf;
  }
  {
    auto f = open_out(dir / "actions.csv");
    f << "act_id,start_ms,end_ms,duration_s,dominant_phase\n";
    for (const auto& s : segments) {
      f << s.act_id << ',' << s.start_ms << ',' << s.end_ms << ',' << format_number(s.duration_s())
        << ',' << (s.dominant_phase ? phase_name(*s.dominant_phase) : "") << '\n';
    }
  }
  Json report = to_json(result.report);
  report["params"] = to_json(params);
  report["court"] = to_json(court);
  report["halftime_ms"] = sides.halftime_ms ? Json(*sides.halftime_ms) : Json(nullptr);
  report["actions"] = Json{{"count", actions.count},
                           {"share_in_window", actions.share_in_window},
                           {"window_s", Json::array({window.min_s, window.max_s})},
                           {"dominant_phase", "extension: O/D label of the side the action is committed to"}};
  report["warnings"] = warnings;
  save_json(dir / "report.json", report);

  out << "active_minutes " << format_number(result.report.active_minutes) << "\nactions "
      << actions.count << '\n';
  return 0;
}

// ---- calibrate -------------------------------------------------------------

struct CalibrateArgs {
  InputOptions in;
  FilterFlags flags;
  std::string grid_h2 = "8:11:0.2";
  std::string grid_h3 = "1:4:0.25";
  double target_minutes = 40.0;
  unsigned threads = 0;
  std::string out;
};

int cmd_calibrate(const CalibrateArgs& args, std::ostream& out) {
  GridSpec grid;
  grid.h2_kmh = GridAxis::parse(args.grid_h2);
  grid.h3_s = GridAxis::parse(args.grid_h3);
  if (!(args.target_minutes > 0.0)) throw InputError("--target-minutes must be positive");
  const CourtSpec court = load_court(args.in);
  const FilterParams base = load_params(args.in, args.flags);
  const GameTimeline tl = load_timeline(args.in);

  const CalibrationGrid cells = sweep(tl, court, base, grid, args.threads);
  const Recommendation rec = recommend(cells, args.target_minutes);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  {
    auto f = open_out(dir / "contour.csv");
    std::string buf = "h2_kmh,h3_s,active_minutes\n";
    for (std::size_t i = 0; i < cells.h2_values.size(); ++i) {
      for (std::size_t j = 0; j < cells.h3_values.size(); ++j) {
        buf += format_number(cells.h2_values[i]) + ',' + format_number(cells.h3_values[j]) + ',' +
               format_number(cells.at(i, j)) + '\n';
      }
    }
    f << buf;
  }
  Json doc = to_json(rec);
  doc["target_minutes"] = args.target_minutes;
  save_json(dir / "recommendation.json", doc);
  out << "recommended h2_kmh " << format_number(rec.h2_kmh) << " h3_s " << format_number(rec.h3_s)
      << " active_minutes " << format_number(rec.active_minutes) << '\n';
  return 0;
}

// ---- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string reduced;
  std::string segments;
  std::string court_config;
  std::string reference;
  std::string window = "4:38";
  MetricBins bins;
  double duration_bin_s = 2.0;
  std::string out;
};

struct SegmentRow {
  Millis ms = 0;
  Phase label = Phase::kTransition;
  int act_id = 0;
};

std::vector<SegmentRow> read_segments(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::vector<SegmentRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) throw ParseError(path + ": expected 5 columns", line_no);
    SegmentRow row;
    try {
      row.ms = std::stoll(cells[0]);
      row.act_id = std::stoi(cells[4]);
    } catch (const std::exception&) {
      throw ParseError(path + ": bad number", line_no);
    }
    if (cells[3] == "O") {
      row.label = Phase::kOffense;
    } else if (cells[3] == "D") {
      row.label = Phase::kDefense;
    } else if (cells[3] == "Tr") {
      row.label = Phase::kTransition;
    } else {
      throw ParseError(path + ": unknown label '" + cells[3] + "'", line_no);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> durations_from_segments(const std::vector<SegmentRow>& rows) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j + 1 < rows.size() && rows[j + 1].act_id == rows[i].act_id) ++j;
    out.push_back(static_cast<double>(rows[j].ms - rows[i].ms) / 1000.0);
    i = j + 1;
  }
  return out;
}

// A reference entry is either a raw sample or a summary document.
DistributionSummary reference_summary(const Json& entry, const BinSpec& bins) {
  if (entry.is_array()) return summarize(entry.get<std::vector<double>>(), bins);
  DistributionSummary s;
  try {
    s.n = entry.at("n").get<std::size_t>();
    s.mean = entry.at("mean").get<double>();
    s.median = entry.at("median").get<double>();
    s.q25 = entry.at("q25").get<double>();
    s.q75 = entry.at("q75").get<double>();
    s.histogram.edges = entry.at("histogram").at("edges").get<std::vector<double>>();
    s.histogram.counts = entry.at("histogram").at("counts").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed reference summary: ") + e.what());
  }
  return s;
}

void add_histogram_rows(std::string& buf, const std::string& series, const Histogram& h) {
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    buf += series + ',' + format_number(h.edges[b]) + ',' + format_number(h.edges[b + 1]) + ',' +
           std::to_string(h.counts[b]) + '\n';
  }
}

Json metrics_json(const MetricSummaries& m) {
  return Json{{"d_avg", to_json(m.d_avg)},
              {"con_hull", to_json(m.con_hull)},
              {"vel_avg", to_json(m.vel_avg)}};
}

int cmd_stats(const StatsArgs& args, std::ostream& out) {
  CourtSpec court;
  if (!args.court_config.empty()) court = court_from_json(load_json(args.court_config));
  const DurationWindow window = parse_window(args.window);
  if (!(args.duration_bin_s > 0.0) || !(args.bins.d_avg.width > 0.0) ||
      !(args.bins.con_hull.width > 0.0) || !(args.bins.vel_avg.width > 0.0))
    throw InputError("bin widths must be positive");

  std::ifstream reduced_in(args.reduced, std::ios::binary);
  if (!reduced_in) throw InputError("cannot open " + args.reduced);
  const GameTimeline tl = read_wide_matrix(reduced_in);
  const auto segments = read_segments(args.segments);
  if (segments.size() != tl.size()) {
    throw InputError("segment table has " + std::to_string(segments.size()) +
                     " rows but the reduced matrix has " + std::to_string(tl.size()));
  }
  for (std::size_t i = 0; i < tl.size(); ++i) {
    if (segments[i].ms != tl.ms(i))
      throw InputError("segment table and reduced matrix disagree at row " + std::to_string(i + 1));
  }

  const Selection sel = select_all(tl, court);
  std::vector<Phase> labels;
  labels.reserve(segments.size());
  for (const auto& s : segments) labels.push_back(s.label);
  const auto metrics = compute_frame_metrics(tl, sel, labels);
  const PhaseSummaries phases = summarize_by_phase(metrics, args.bins);
  const auto durations = durations_from_segments(segments);
  const ActionSummary actions = summarize_durations(durations, window);

  std::optional<Json> reference;
  if (!args.reference.empty()) reference = load_json(args.reference);

  BinSpec duration_bins{args.duration_bin_s, {}, {}};
  if (reference && reference->contains("durations") && reference->at("durations").is_array()) {
    duration_bins =
        shared_bins(durations, reference->at("durations").get<std::vector<double>>(), args.duration_bin_s);
  }
  const DurationSummary duration_summary = duration_histogram(durations, duration_bins);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  {
    auto f = open_out(dir / "frame_metrics.csv");
    std::string buf = "ms,d_avg,con_hull,vel_avg,label\n";
    for (std::size_t i = 0; i < metrics.size(); ++i) {
      buf += std::to_string(tl.ms(i)) + ',' + format_number(metrics[i].d_avg) + ',' +
             format_number(metrics[i].con_hull) + ',' + format_number(metrics[i].vel_avg) + ',' +
             std::string(phase_name(metrics[i].phase)) + '\n';
    }
    f << buf;
  }

  Json summary;
  summary["frames"] = tl.size();
  summary["actions"] = Json{{"count", actions.count},
                            {"share_in_window", actions.share_in_window},
                            {"window_s", Json::array({window.min_s, window.max_s})},
                            {"durations", to_json(duration_summary.distribution)},
                            {"bands", to_json(duration_summary.bands)}};
  std::string hist = "series,lo,hi,count\n";
  add_histogram_rows(hist, "duration_s", duration_summary.distribution.histogram);
  const std::pair<const char*, const std::optional<MetricSummaries>*> sides[] = {
      {"offense", &phases.offense}, {"defense", &phases.defense}};
  for (const auto& [name, m] : sides) {
    if (!*m) continue;
    summary[name] = metrics_json(**m);
    add_histogram_rows(hist, std::string(name) + ".d_avg", (*m)->d_avg.histogram);
    add_histogram_rows(hist, std::string(name) + ".con_hull", (*m)->con_hull.histogram);
    add_histogram_rows(hist, std::string(name) + ".vel_avg", (*m)->vel_avg.histogram);
  }

  if (reference) {
    Json cmp = Json::object();
    if (reference->contains("durations") && !durations.empty()) {
      const Json& entry = reference->at("durations");
      DurationSummary ref;
      if (entry.is_array()) {
        ref = duration_histogram(entry.get<std::vector<double>>(), duration_bins);
      } else {
        ref.distribution = reference_summary(entry, duration_bins);
      }
      cmp["durations"] = entry.is_array() ? to_json(compare_with_reference(duration_summary, ref))
                                          : to_json(compare_with_reference(
                                                duration_summary.distribution, ref.distribution));
    }
    for (const auto& [name, m] : sides) {
      if (!*m || !reference->contains(name)) continue;
      const Json& side_ref = reference->at(name);
      Json side_cmp = Json::object();
      const std::tuple<const char*, const DistributionSummary*, const BinSpec*> metrics_list[] = {
          {"d_avg", &(*m)->d_avg, &args.bins.d_avg},
          {"con_hull", &(*m)->con_hull, &args.bins.con_hull},
          {"vel_avg", &(*m)->vel_avg, &args.bins.vel_avg}};
      for (const auto& [metric, computed, bins] : metrics_list) {
        if (!side_ref.contains(metric)) continue;
        const Json& entry = side_ref.at(metric);
        DistributionSummary ref;
        DistributionSummary mine = *computed;
        if (entry.is_array()) {
          // Re-bin both samples on one grid.
          std::vector<double> values;
          for (const auto& fm : metrics) {
            if (fm.phase != (std::string_view(name) == "offense" ? Phase::kOffense : Phase::kDefense))
              continue;
            values.push_back(std::string_view(metric) == "d_avg"      ? fm.d_avg
                             : std::string_view(metric) == "con_hull" ? fm.con_hull
                                                                      : fm.vel_avg);
          }
          const auto ref_values = entry.get<std::vector<double>>();
          const BinSpec common = shared_bins(values, ref_values, bins->width);
          mine = summarize(values, common);
          ref = summarize(ref_values, common);
        } else {
          ref = reference_summary(entry, *bins);
        }
        side_cmp[metric] = to_json(compare_with_reference(mine, ref));
      }
      cmp[name] = std::move(side_cmp);
    }
    summary["comparison"] = std::move(cmp);
  }

  save_json(dir / "summary.json", summary);
  {
    auto f = open_out(dir / "histograms.csv");
    f << hist;
  }
  out << "frames " << tl.size() << "\nactions " << actions.count << '\n';
  return 0;
}

// ---- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string plan;
  std::string court_config;
  bool regulation = false;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_synth(const SynthArgs& args, std::ostream& out) {
  CourtSpec court;
  if (!args.court_config.empty()) court = court_from_json(load_json(args.court_config));
  SynthPlan plan;
  if (args.regulation) {
    plan = regulation_game_plan(args.seed.value_or(1));
  } else if (!args.plan.empty()) {
    plan = plan_from_json(load_json(args.plan));
  } else {
    throw InputError("one of --plan or --regulation is required");
  }
  if (args.seed) plan.seed = *args.seed;
  const SynthGame game = generate(plan, court);
  write_dataset(game, args.out);
  save_json(fs::path(args.out) / "plan.json", to_json(plan));
  out << "players " << game.records.size() << "\nticks " << game.truth.ticks_total
      << "\nplanted_active_minutes " << format_number(game.truth.planted_active_s / 60.0) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Basketball tracking data: activity filter, action segmentation and team stats"};
  app.name("courtfilter");
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "merge per-player files into a wide matrix");
  c_ingest->add_option("--manifest", ingest.manifest, "player manifest (JSON)")->required();
  c_ingest->add_option("--out", ingest.out, "wide matrix CSV to write")->required();

  FilterArgs filter;
  auto* c_filter = app.add_subcommand("filter", "keep active frames and label actions");
  add_input_options(c_filter, filter.in);
  add_filter_flags(c_filter, filter.flags);
  c_filter->add_option("--halftime-ms", filter.halftime_ms, "side swap instant (default: inferred)");
  c_filter->add_option("--duration-window-s", filter.window, "action duration window lo:hi")
      ->capture_default_str();
  c_filter->add_option("--out", filter.out, "output directory")->required();

  CalibrateArgs calibrate;
  auto* c_cal = app.add_subcommand("calibrate", "sweep (h2, h3) and recommend a cell");
  add_input_options(c_cal, calibrate.in);
  add_filter_flags(c_cal, calibrate.flags);
  c_cal->add_option("--grid-h2", calibrate.grid_h2, "h2 grid start:stop:step, km/h")->capture_default_str();
  c_cal->add_option("--grid-h3", calibrate.grid_h3, "h3 grid start:stop:step, s")->capture_default_str();
  c_cal->add_option("--target-minutes", calibrate.target_minutes, "expected active minutes")
      ->capture_default_str();
  c_cal->add_option("--threads", calibrate.threads, "worker threads (0 = all cores)");
  c_cal->add_option("--out", calibrate.out, "output directory")->required();

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "team spacing and speed by phase, action durations");
  c_stats->add_option("--reduced", stats.reduced, "reduced matrix from filter")->required();
  c_stats->add_option("--segments", stats.segments, "segment table from filter")->required();
  c_stats->add_option("--court-config", stats.court_config, "court geometry (JSON)");
  c_stats->add_option("--reference", stats.reference, "reference samples or summaries (JSON)");
  c_stats->add_option("--duration-window-s", stats.window, "action duration window lo:hi")
      ->capture_default_str();
  c_stats->add_option("--bin-d-avg-m", stats.bins.d_avg.width, "d_avg bin width, m")->capture_default_str();
  c_stats->add_option("--bin-hull-m2", stats.bins.con_hull.width, "hull bin width, m^2")->capture_default_str();
  c_stats->add_option("--bin-vel-kmh", stats.bins.vel_avg.width, "speed bin width, km/h")->capture_default_str();
  c_stats->add_option("--bin-duration-s", stats.duration_bin_s, "duration bin width, s")->capture_default_str();
  c_stats->add_option("--out", stats.out, "output directory")->required();

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "generate a synthetic game with ground truth");
  auto* plan_opt = c_synth->add_option("--plan", synth.plan, "generation plan (JSON)");
  auto* reg_opt = c_synth->add_flag("--regulation", synth.regulation, "built-in 151-action game");
  plan_opt->excludes(reg_opt);
  c_synth->add_option("--court-config", synth.court_config, "court geometry (JSON)");
  c_synth->add_option("--seed", synth.seed, "override the plan seed");
  c_synth->add_option("--out", synth.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const char* stage = "";
  try {
    if (c_ingest->parsed()) {
      stage = "ingest";
      return cmd_ingest(ingest, out);
    }
    if (c_filter->parsed()) {
      stage = "filter";
      return cmd_filter(filter, out, err);
    }
    if (c_cal->parsed()) {
      stage = "calibrate";
      return cmd_calibrate(calibrate, out);
    }
    if (c_stats->parsed()) {
      stage = "stats";
      return cmd_stats(stats, out);
    }
    if (c_synth->parsed()) {
      stage = "synth";
      return cmd_synth(synth, out);
    }
  } catch (const InputError& e) {
    err << "error: " << stage << ": " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << stage << ": " << e.what() << '\n';
    return 2;
  } catch (const ContractError& e) {
    err << "internal error: " << stage << ": " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << stage << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace courtfilter
