#pragma once

#include <filesystem>
#include <json.hpp>

#include "courtfilter/activity_filter.hpp"
#include "courtfilter/calibration.hpp"
#include "courtfilter/game_stats.hpp"
#include "courtfilter/geometry.hpp"
#include "courtfilter/synth.hpp"

namespace courtfilter {

using Json = nlohmann::ordered_json;

// Reads a JSON document; throws InputError naming the file on failure.
Json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const Json& doc);

// Keys absent from the document keep the values already in `court`/`params`.
CourtSpec court_from_json(const Json& doc, CourtSpec court = {});
Json to_json(const CourtSpec& court);

FilterParams filter_params_from_json(const Json& doc, FilterParams params = {});
Json to_json(const FilterParams& params);
Json to_json(const FilterReport& report);

SynthPlan plan_from_json(const Json& doc, SynthPlan plan = {});
Json to_json(const SynthPlan& plan);
Json to_json(const GroundTruth& truth);

Json to_json(const DistributionSummary& summary);
Json to_json(const BandShares& bands);
Json to_json(const Comparison& comparison);
Json to_json(const Recommendation& rec);

}  // namespace courtfilter
