#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "courtfilter/geometry.hpp"

namespace courtfilter {

using Millis = std::int64_t;

enum class Label : std::uint8_t {
  kPosX,
  kPosY,
  kVelX,
  kVelY,
  kPosZ,
  kAccX,
  kAccY,
  kAccZ,
};

std::string_view label_name(Label label) noexcept;
std::optional<Label> parse_label(std::string_view text) noexcept;

// pos_z and acc_* are accepted on input and dropped before frame assembly.
inline bool is_planar(Label label) noexcept {
  return label == Label::kPosX || label == Label::kPosY ||
         label == Label::kVelX || label == Label::kVelY;
}

// One sensor reading. The owning player is carried by PlayerRecords.
struct RawRecord {
  Label label = Label::kPosX;
  Millis ms = 0;
  double value = 0.0;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

struct PlayerRecords {
  std::string player_id;
  std::vector<RawRecord> records;
};

// A player's carried-forward state at one frame. `observed` turns true once
// both position components have been seen; until then the player counts as
// off-court.
struct PlayerState {
  Vec2 pos;
  Vec2 vel;
  Millis last_update_ms = 0;
  bool observed = false;
};

struct TimelineInfo {
  std::string team;
  std::string date;
};

// Roster slots of the five on-court players in a frame, ascending.
using Lineup = std::array<std::uint16_t, 5>;

struct FrameView {
  Millis ms;
  std::span<const PlayerState> players;
};

// The wide matrix: one row per detected instant, one PlayerState per roster
// slot. Rows are strictly increasing in ms. Storage is row-major and flat.
class GameTimeline {
 public:
  GameTimeline() = default;
  explicit GameTimeline(std::vector<std::string> roster, TimelineInfo info = {});

  // Throws ContractError on a roster-size mismatch or a non-increasing ms.
  void append(Millis ms, std::span<const PlayerState> players);
  void reserve(std::size_t rows);

  std::size_t size() const noexcept { return ms_.size(); }
  bool empty() const noexcept { return ms_.empty(); }
  std::size_t roster_size() const noexcept { return roster_.size(); }

  Millis ms(std::size_t row) const { return ms_[row]; }
  std::span<const Millis> timestamps() const noexcept { return ms_; }
  std::span<const PlayerState> players(std::size_t row) const {
    return {states_.data() + row * roster_.size(), roster_.size()};
  }
  const PlayerState& state(std::size_t row, std::size_t slot) const {
    return states_[row * roster_.size() + slot];
  }
  FrameView frame(std::size_t row) const { return {ms_[row], players(row)}; }

  const std::vector<std::string>& roster() const noexcept { return roster_; }
  const TimelineInfo& info() const noexcept { return info_; }

  // Copy of the given rows, which must be ascending.
  GameTimeline subset(std::span<const std::size_t> rows) const;

 private:
  std::vector<std::string> roster_;
  TimelineInfo info_;
  std::vector<Millis> ms_;
  std::vector<PlayerState> states_;
};

std::array<Vec2, 5> lineup_positions(const GameTimeline& timeline,
                                     std::size_t row, const Lineup& lineup);
std::array<Vec2, 5> lineup_velocities(const GameTimeline& timeline,
                                      std::size_t row, const Lineup& lineup);

}  // namespace courtfilter
