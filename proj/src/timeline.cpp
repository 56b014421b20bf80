#include "courtfilter/timeline.hpp"

#include <array>
#include <utility>

#include "courtfilter/error.hpp"

namespace courtfilter {

namespace {

constexpr std::array<std::string_view, 8> kLabelNames = {
    "pos_x", "pos_y", "vel_x", "vel_y", "pos_z", "acc_x", "acc_y", "acc_z"};

}  // namespace

std::string_view label_name(Label label) noexcept {
  return kLabelNames[static_cast<std::size_t>(label)];
}

std::optional<Label> parse_label(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == text) {
      return static_cast<Label>(i);
    }
  }
  return std::nullopt;
}

GameTimeline::GameTimeline(std::vector<std::string> roster, TimelineInfo info)
    : roster_(std::move(roster)), info_(std::move(info)) {}

void GameTimeline::append(Millis ms, std::span<const PlayerState> players) {
  if (players.size() != roster_.size()) {
    throw ContractError("frame has " + std::to_string(players.size()) +
                        " players, roster has " + std::to_string(roster_.size()));
  }
  if (!ms_.empty() && ms <= ms_.back()) {
    throw ContractError("frame ms " + std::to_string(ms) +
                        " does not follow " + std::to_string(ms_.back()));
  }
  ms_.push_back(ms);
  states_.insert(states_.end(), players.begin(), players.end());
}

void GameTimeline::reserve(std::size_t rows) {
  ms_.reserve(rows);
  states_.reserve(rows * roster_.size());
}

GameTimeline GameTimeline::subset(std::span<const std::size_t> rows) const {
  GameTimeline out(roster_, info_);
  out.reserve(rows.size());
  for (std::size_t row : rows) {
    out.append(ms_[row], players(row));
  }
  return out;
}

std::array<Vec2, 5> lineup_positions(const GameTimeline& timeline,
                                     std::size_t row, const Lineup& lineup) {
  std::array<Vec2, 5> out;
  for (std::size_t i = 0; i < 5; ++i) {
    out[i] = timeline.state(row, lineup[i]).pos;
  }
  return out;
}

std::array<Vec2, 5> lineup_velocities(const GameTimeline& timeline,
                                      std::size_t row, const Lineup& lineup) {
  std::array<Vec2, 5> out;
  for (std::size_t i = 0; i < 5; ++i) {
    out[i] = timeline.state(row, lineup[i]).vel;
  }
  return out;
}

}  // namespace courtfilter
