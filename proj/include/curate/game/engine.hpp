#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "curate/game/rules.hpp"
#include "curate/game/scoring.hpp"

namespace curate::game {

enum class Phase { Roaming, Game, Finished };
std::string_view to_string(Phase p);

struct GameSession {
  std::string session_id;
  int current_level = 1;
  Phase phase = Phase::Roaming;
  std::string current_room;
  Vec3 position = Vec3::Zero();
  std::map<std::string, Pose> placements;  // game phase only
  std::optional<std::string> grabbed;
  std::optional<Quat> held_rotation;
  std::map<int, int> attempts;  // submissions per level
  std::set<std::string> gates_open;
  std::set<int> passed_levels;
  std::set<std::string> panels_read;
};

struct SubmitOutcome {
  GameSession session;
  AccuracyResult result;
  std::optional<std::string> gate_opened;  // set on pass for levels 1 and 2
};

// Session transitions over one immutable scene. Every operation takes the
// session by value and returns the successor, or throws GameError and leaves
// the caller's copy as it was.
//
//   Roaming(L) --enter_game--> Game(L) --return_to_roaming--> Roaming(L)
//   Game(L) --submit passes, L < 3--> gate next_level_L opens
//   Game(L) --teleport next_level_L--> Roaming(L+1)
//   Game(3) --submit passes--> Finished
class GameEngine {
 public:
  // Throws GameError{Config} when the scene's level configs or gates are off.
  explicit GameEngine(std::shared_ptr<const MuseumScene> scene);

  const MuseumScene& scene() const { return *scene_; }
  const LevelConfig& level(int level) const;

  GameSession new_session(std::string session_id) const;

  GameSession enter_game(GameSession s) const;
  GameSession return_to_roaming(GameSession s) const;
  GameSession teleport(GameSession s, const std::string& point_id) const;

  GameSession grab(GameSession s, const std::string& item_id) const;
  GameSession rotate(GameSession s, const std::string& item_id, const Quat& rotation) const;
  // Game phase: writes `pose` into placements. Roaming: the item snaps back.
  GameSession release(GameSession s, const Pose& pose) const;

  // Hover/touch. Checks the item is visible in the current room.
  GameSession touch(GameSession s, const std::string& item_id) const;
  GameSession open_panel(GameSession s, const std::string& exhibit_id) const;

  SubmitOutcome submit(GameSession s) const;

  // Initial placements of the current level's game items.
  std::map<std::string, Pose> initial_placements(int level) const;

 private:
  void move_to_room(GameSession& s, const std::string& room_id) const;
  void require_item_here(const GameSession& s, const std::string& item_id) const;

  std::shared_ptr<const MuseumScene> scene_;
};

}  // namespace curate::game
