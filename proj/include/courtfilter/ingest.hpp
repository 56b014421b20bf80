#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "courtfilter/timeline.hpp"

namespace courtfilter {

// Reads a delimited "label,ms,value" stream with a header row. The header
// may list the three columns in any order and carry extra columns (a name
// or team column, say), which are ignored. Throws ParseError naming the
// offending line.
std::vector<RawRecord> parse_record_file(std::istream& source,
                                         char delimiter = ',');

// Merges per-player record streams onto one timeline with last observation
// carried forward. Keys are player ids; roster order is their lexicographic
// order. Duplicate (label, ms) pairs keep the last one in input order.
// Throws InputError("no players") on an empty map.
GameTimeline merge_timeline(const std::map<std::string, std::vector<RawRecord>>& per_player,
                            TimelineInfo info = {});

struct ManifestEntry {
  std::string player_id;
  std::string name;
  std::filesystem::path file;
};

struct Manifest {
  TimelineInfo info;
  char delimiter = ',';
  std::vector<ManifestEntry> players;
};

// JSON manifest: {"team", "date", "delimiter", "players": [{"id", "name",
// "file"}]}. Relative file paths resolve against the manifest directory.
Manifest load_manifest(const std::filesystem::path& path);

// Parses every file named by the manifest and merges them. Errors name the
// file that failed.
GameTimeline ingest_manifest(const Manifest& manifest);

}  // namespace courtfilter
