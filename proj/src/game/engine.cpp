#include "curate/game/engine.hpp"

#include <algorithm>

namespace curate::game {
namespace {

bool contains_item(const std::vector<scene::GameItem>& items, const std::string& id) {
  return std::any_of(items.begin(), items.end(), [&](const scene::GameItem& g) { return g.exhibit_id == id; });
}

[[noreturn]] void illegal(const std::string& what) { throw GameError(ErrorCode::IllegalTransition, what); }

}  // namespace

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Roaming: return "Roaming";
    case Phase::Game: return "Game";
    case Phase::Finished: return "Finished";
  }
  return "?";
}

GameEngine::GameEngine(std::shared_ptr<const MuseumScene> scene) : scene_(std::move(scene)) {
  if (!scene_) throw GameError(ErrorCode::Config, "no scene");
  validate_configs(*scene_);
}

const LevelConfig& GameEngine::level(int level) const {
  const LevelConfig* l = scene_->find_level(level);
  if (!l) throw GameError(ErrorCode::Config, "no config for level " + std::to_string(level));
  return *l;
}

std::map<std::string, Pose> GameEngine::initial_placements(int lvl) const {
  std::map<std::string, Pose> out;
  for (const auto& it : level(lvl).items) out.emplace(it.exhibit_id, it.initial_pose);
  return out;
}

void GameEngine::move_to_room(GameSession& s, const std::string& room_id) const {
  const scene::Room* room = scene_->find_room(room_id);
  if (!room) throw GameError(ErrorCode::NotFound, "room " + room_id);
  s.current_room = room->id;
  s.position = room->spawn;
}

GameSession GameEngine::new_session(std::string session_id) const {
  GameSession s;
  s.session_id = std::move(session_id);
  move_to_room(s, scene_->roaming_room(1)->id);
  for (int l = 1; l <= scene::kLevelCount; ++l) s.attempts[l] = 0;
  for (const auto& p : scene_->teleport.points)
    if (p.initially_open && p.kind != scene::TeleportKind::NextLevel) s.gates_open.insert(p.id);
  return s;
}

GameSession GameEngine::enter_game(GameSession s) const {
  if (s.phase != Phase::Roaming) illegal("enter_game requires the roaming phase");
  s.phase = Phase::Game;
  s.grabbed.reset();
  s.held_rotation.reset();
  s.placements = initial_placements(s.current_level);
  move_to_room(s, level(s.current_level).room_id);
  return s;
}

GameSession GameEngine::return_to_roaming(GameSession s) const {
  if (s.phase != Phase::Game) illegal("return_to_roaming requires the game phase");
  s.phase = Phase::Roaming;
  s.grabbed.reset();
  s.held_rotation.reset();
  s.placements.clear();
  move_to_room(s, scene_->roaming_room(s.current_level)->id);
  return s;
}

GameSession GameEngine::teleport(GameSession s, const std::string& point_id) const {
  const scene::TeleportPoint* p = scene_->find_point(point_id);
  if (!p) throw GameError(ErrorCode::NotFound, "teleport point " + point_id);
  if (p->room_id != s.current_room)
    throw GameError(ErrorCode::WrongRoom, "teleport point " + point_id + " is not in " + s.current_room);
  if (!s.gates_open.count(p->id)) throw GameError(ErrorCode::GateClosed, "gate " + point_id + " is closed");

  switch (p->kind) {
    case scene::TeleportKind::Plain:
      s.position = p->position;
      return s;
    case scene::TeleportKind::EnterGame:
      return enter_game(std::move(s));
    case scene::TeleportKind::ReturnToRoaming:
      return return_to_roaming(std::move(s));
    case scene::TeleportKind::NextLevel:
      if (s.phase != Phase::Game || !s.passed_levels.count(s.current_level))
        illegal("next level requires a passed game phase");
      s.current_level += 1;
      s.phase = Phase::Roaming;
      s.grabbed.reset();
      s.held_rotation.reset();
      s.placements.clear();
      move_to_room(s, p->target_room);
      return s;
  }
  return s;
}

void GameEngine::require_item_here(const GameSession& s, const std::string& item_id) const {
  bool here = false;
  if (s.phase == Phase::Roaming) {
    const auto& ids = scene_->find_room(s.current_room)->exhibit_ids;
    here = std::find(ids.begin(), ids.end(), item_id) != ids.end();
  } else {
    const LevelConfig& l = level(s.current_level);
    here = contains_item(l.items, item_id) || contains_item(l.display_items, item_id);
  }
  if (here) return;
  if (scene_->find_exhibit(item_id))
    throw GameError(ErrorCode::WrongRoom, "item " + item_id + " is not in " + s.current_room);
  throw GameError(ErrorCode::NotFound, "item " + item_id);
}

GameSession GameEngine::grab(GameSession s, const std::string& item_id) const {
  if (s.phase == Phase::Finished) illegal("session is finished");
  if (s.grabbed) throw GameError(ErrorCode::AlreadyGrabbed, "already holding " + *s.grabbed);
  require_item_here(s, item_id);
  if (s.phase == Phase::Game && !s.placements.count(item_id))
    throw GameError(ErrorCode::Immovable, "item " + item_id + " is on display and cannot be moved");
  s.grabbed = item_id;
  return s;
}

GameSession GameEngine::rotate(GameSession s, const std::string& item_id, const Quat& rotation) const {
  if (!s.grabbed || *s.grabbed != item_id) throw GameError(ErrorCode::NotGrabbed, "item " + item_id + " is not held");
  s.held_rotation = rotation.normalized();
  return s;
}

GameSession GameEngine::release(GameSession s, const Pose& pose) const {
  if (!s.grabbed) throw GameError(ErrorCode::NotGrabbed, "nothing is held");
  if (s.phase == Phase::Game) {
    Pose p = pose;
    p.rotation.normalize();
    s.placements[*s.grabbed] = p;
  }
  s.grabbed.reset();
  s.held_rotation.reset();
  return s;
}

GameSession GameEngine::touch(GameSession s, const std::string& item_id) const {
  require_item_here(s, item_id);
  return s;
}

GameSession GameEngine::open_panel(GameSession s, const std::string& exhibit_id) const {
  if (s.phase != Phase::Roaming) illegal("panels are in the roaming rooms");
  require_item_here(s, exhibit_id);
  s.panels_read.insert(exhibit_id);
  return s;
}

SubmitOutcome GameEngine::submit(GameSession s) const {
  if (s.phase != Phase::Game) illegal("submit requires the game phase");
  const LevelConfig& l = level(s.current_level);
  SubmitOutcome out;
  out.result = score(*scene_, l, s.placements);
  s.attempts[s.current_level] += 1;
  if (out.result.passed) {
    s.passed_levels.insert(s.current_level);
    if (s.current_level == scene::kLevelCount) {
      s.phase = Phase::Finished;
    } else {
      for (const auto& p : scene_->teleport.points)
        if (p.kind == scene::TeleportKind::NextLevel && p.room_id == l.room_id) {
          s.gates_open.insert(p.id);
          out.gate_opened = p.id;
        }
    }
  }
  out.session = std::move(s);
  return out;
}

}  // namespace curate::game
