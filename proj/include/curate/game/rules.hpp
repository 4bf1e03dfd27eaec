#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "curate/scene/model.hpp"

namespace curate::game {

using scene::Container;
using scene::LevelConfig;
using scene::MuseumScene;
using scene::Pose;
using scene::Quat;
using scene::Vec3;

enum class ErrorCode {
  IllegalTransition,
  GateClosed,
  NotFound,
  AlreadyGrabbed,
  NotGrabbed,
  WrongRoom,
  Immovable,
  Config,
};

// Kebab-case wire names: "illegal-transition", "gate-closed", ...
std::string_view to_string(ErrorCode code);

class GameError : public std::runtime_error {
 public:
  GameError(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// "higher than X%" is strict, "100%" is >= 1.0. Comparisons allow 1e-9 of
// floating slack in the direction that keeps the literal reading, so 9/10 is
// not "higher than 90%".
bool passes(int correct, int required, double threshold, bool strict);

// Smallest correct count that passes, or required + 1 if none does.
int minimum_passing_count(const LevelConfig& level);

// Checks one level against the fixed rules for that level (theme, item and
// container counts, thresholds) and against the scene (items from that
// level's roaming room, initial poses clear of every container). Throws
// GameError{Config}.
void validate_level_config(const MuseumScene& scene, const LevelConfig& level);

// Levels 1..3 each present once and valid; NextLevel gates start closed and
// each of levels 1, 2 has one in its game room.
void validate_configs(const MuseumScene& scene);

}  // namespace curate::game
