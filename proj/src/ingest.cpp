#include "courtfilter/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string_view>

#include "courtfilter/error.hpp"
#include "courtfilter/serialize.hpp"

namespace courtfilter {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

}  // namespace

std::vector<RawRecord> parse_record_file(std::istream& source, char delimiter) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;

  // Header: locate the three required columns.
  std::size_t label_col = 0;
  std::size_t ms_col = 0;
  std::size_t value_col = 0;
  std::size_t columns = 0;
  bool have_header = false;
  while (!have_header && std::getline(source, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split(line, delimiter);
    columns = fields.size();
    bool found[3] = {false, false, false};
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i] == "label") {
        label_col = i;
        found[0] = true;
      } else if (fields[i] == "ms") {
        ms_col = i;
        found[1] = true;
      } else if (fields[i] == "value") {
        value_col = i;
        found[2] = true;
      }
    }
    if (!found[0] || !found[1] || !found[2]) {
      throw ParseError("header must name label, ms and value columns", line_no);
    }
    have_header = true;
  }

  while (std::getline(source, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split(line, delimiter);
    if (fields.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const auto label = parse_label(fields[label_col]);
    if (!label) {
      throw ParseError("unknown label " + std::string(fields[label_col]), line_no);
    }
    RawRecord rec;
    rec.label = *label;
    if (!parse_number(fields[ms_col], rec.ms) || rec.ms < 0) {
      throw ParseError("bad ms '" + std::string(fields[ms_col]) + "'", line_no);
    }
    if (!parse_number(fields[value_col], rec.value)) {
      throw ParseError("bad value '" + std::string(fields[value_col]) + "'", line_no);
    }
    records.push_back(rec);
  }
  return records;
}

GameTimeline merge_timeline(
    const std::map<std::string, std::vector<RawRecord>>& per_player,
    TimelineInfo info) {
  if (per_player.empty()) {
    throw InputError("no players");
  }

  std::vector<std::string> roster;
  std::vector<std::vector<RawRecord>> streams;
  roster.reserve(per_player.size());
  streams.reserve(per_player.size());
  std::vector<Millis> all_ms;
  for (const auto& [id, records] : per_player) {
    roster.push_back(id);
    auto& stream = streams.emplace_back();
    stream.reserve(records.size());
    std::copy_if(records.begin(), records.end(), std::back_inserter(stream),
                 [](const RawRecord& r) { return is_planar(r.label); });
    // Stable: later duplicates are applied later and win.
    std::stable_sort(stream.begin(), stream.end(),
                     [](const RawRecord& a, const RawRecord& b) { return a.ms < b.ms; });
    for (std::size_t i = 0; i < stream.size(); ++i) {
      if (i == 0 || stream[i].ms != stream[i - 1].ms) {
        all_ms.push_back(stream[i].ms);
      }
    }
  }
  std::sort(all_ms.begin(), all_ms.end());
  all_ms.erase(std::unique(all_ms.begin(), all_ms.end()), all_ms.end());

  GameTimeline timeline(std::move(roster), std::move(info));
  timeline.reserve(all_ms.size());

  const std::size_t k = streams.size();
  std::vector<PlayerState> state(k);
  std::vector<std::size_t> cursor(k, 0);
  std::vector<std::uint8_t> seen(k, 0);  // bit 0: pos_x, bit 1: pos_y
  for (Millis ms : all_ms) {
    for (std::size_t p = 0; p < k; ++p) {
      const auto& stream = streams[p];
      auto& c = cursor[p];
      while (c < stream.size() && stream[c].ms <= ms) {
        const RawRecord& r = stream[c];
        PlayerState& s = state[p];
        switch (r.label) {
          case Label::kPosX: s.pos.x = r.value; seen[p] |= 1; break;
          case Label::kPosY: s.pos.y = r.value; seen[p] |= 2; break;
          case Label::kVelX: s.vel.x = r.value; break;
          case Label::kVelY: s.vel.y = r.value; break;
          default: break;
        }
        s.last_update_ms = r.ms;
        s.observed = seen[p] == 3;
        ++c;
      }
    }
    timeline.append(ms, state);
  }
  return timeline;
}

Manifest load_manifest(const std::filesystem::path& path) {
  const Json doc = load_json(path);
  Manifest manifest;
  try {
    manifest.info.team = doc.value("team", std::string{});
    manifest.info.date = doc.value("date", std::string{});
    const std::string delim = doc.value("delimiter", std::string{","});
    if (delim.size() != 1) {
      throw InputError("delimiter must be a single character");
    }
    manifest.delimiter = delim[0];
    const auto base = path.parent_path();
    for (const auto& entry : doc.at("players")) {
      ManifestEntry e;
      e.player_id = entry.at("id").get<std::string>();
      e.name = entry.value("name", e.player_id);
      std::filesystem::path file = entry.at("file").get<std::string>();
      e.file = file.is_absolute() ? file : base / file;
      manifest.players.push_back(std::move(e));
    }
  } catch (const Json::exception& ex) {
    throw InputError(path.string() + ": " + ex.what());
  }
  return manifest;
}

GameTimeline ingest_manifest(const Manifest& manifest) {
  std::map<std::string, std::vector<RawRecord>> per_player;
  for (const auto& entry : manifest.players) {
    std::ifstream in(entry.file);
    if (!in) {
      throw InputError("cannot open " + entry.file.string());
    }
    try {
      auto records = parse_record_file(in, manifest.delimiter);
      auto& slot = per_player[entry.player_id];
      slot.insert(slot.end(), records.begin(), records.end());
    } catch (const ParseError& ex) {
      throw InputError(entry.file.string() + ": " + ex.what());
    }
  }
  return merge_timeline(per_player, manifest.info);
}

}  // namespace courtfilter
