#include "courtfilter/wide_matrix.hpp"

#include <array>
#include <charconv>
#include <string_view>

#include "courtfilter/error.hpp"

namespace courtfilter {

namespace {

constexpr std::array<std::string_view, 4> kSuffixes = {"_pos_x", "_pos_y",
                                                       "_vel_x", "_vel_y"};

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_or_throw(std::string_view text, std::size_t line_no) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("bad number '" + std::string(text) + "'", line_no);
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_wide_matrix(std::ostream& out, const GameTimeline& timeline) {
  out << "ms";
  for (const auto& id : timeline.roster()) {
    for (auto suffix : kSuffixes) {
      out << ',' << id << suffix;
    }
  }
  out << '\n';
  std::string row;
  for (std::size_t r = 0; r < timeline.size(); ++r) {
    row.clear();
    row += std::to_string(timeline.ms(r));
    for (const PlayerState& s : timeline.players(r)) {
      if (!s.observed) {
        row += ",,,,";
        continue;
      }
      for (double v : {s.pos.x, s.pos.y, s.vel.x, s.vel.y}) {
        row += ',';
        row += format_number(v);
      }
    }
    row += '\n';
    out << row;
  }
}

GameTimeline read_wide_matrix(std::istream& in, TimelineInfo info) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty()) {
      break;
    }
  }
  if (line.empty()) {
    return GameTimeline({}, std::move(info));
  }

  const auto header = split_commas(line);
  if (header.empty() || header[0] != "ms" || (header.size() - 1) % 4 != 0) {
    throw ParseError("wide matrix header must be ms followed by 4 columns per player",
                     line_no);
  }
  std::vector<std::string> roster;
  for (std::size_t c = 1; c < header.size(); c += 4) {
    std::string_view first = header[c];
    if (!first.ends_with(kSuffixes[0])) {
      throw ParseError("unexpected column " + std::string(first), line_no);
    }
    const auto id = first.substr(0, first.size() - kSuffixes[0].size());
    for (std::size_t j = 1; j < 4; ++j) {
      if (header[c + j] != std::string(id) + std::string(kSuffixes[j])) {
        throw ParseError("unexpected column " + std::string(header[c + j]), line_no);
      }
    }
    roster.emplace_back(id);
  }

  GameTimeline timeline(std::move(roster), std::move(info));
  std::vector<PlayerState> states(timeline.roster_size());
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split_commas(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const Millis ms = parse_or_throw<Millis>(fields[0], line_no);
    for (std::size_t p = 0; p < states.size(); ++p) {
      const auto* cells = &fields[1 + 4 * p];
      const int empties = static_cast<int>(cells[0].empty()) + cells[1].empty() +
                          cells[2].empty() + cells[3].empty();
      PlayerState& s = states[p];
      s.last_update_ms = ms;
      if (empties == 4) {
        s = PlayerState{};
        s.last_update_ms = ms;
        continue;
      }
      if (empties != 0) {
        throw ParseError("partially empty player cells", line_no);
      }
      s.pos = {parse_or_throw<double>(cells[0], line_no),
               parse_or_throw<double>(cells[1], line_no)};
      s.vel = {parse_or_throw<double>(cells[2], line_no),
               parse_or_throw<double>(cells[3], line_no)};
      s.observed = true;
    }
    try {
      timeline.append(ms, states);
    } catch (const ContractError& ex) {
      throw ParseError(ex.what(), line_no);
    }
  }
  return timeline;
}

}  // namespace courtfilter
