#include "curate/game/rules.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace curate::game {
namespace {

using scene::Theme;

struct LevelRule {
  Theme theme;
  std::size_t items;
  std::size_t display_items;
  int required;
  double threshold;
  bool strict;
  std::set<std::string> accepted_values;
  int capacity;  // 0 = any
};

const LevelRule& rule_for(int level) {
  static const std::array<LevelRule, 3> rules{{
      {Theme::Category, 12, 0, 12, 0.8, true, {"Bottle", "Tripod", "Ge", "Gui"}, 3},
      {Theme::Purpose, 12, 1, 10, 0.9, true, {"Eating", "War", "WineVessel", "MusicalInstrument", "Sacrifice"}, 2},
      {Theme::Dynasty, 9, 0, 9, 1.0, false, {"ShangZhou", "Han", "WeiJin"}, 0},
  }};
  return rules.at(static_cast<std::size_t>(level - 1));
}

[[noreturn]] void fail(const LevelConfig& l, const std::string& what) {
  throw GameError(ErrorCode::Config, "level " + std::to_string(l.level) + ": " + what);
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllegalTransition: return "illegal-transition";
    case ErrorCode::GateClosed: return "gate-closed";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::AlreadyGrabbed: return "already-grabbed";
    case ErrorCode::NotGrabbed: return "not-grabbed";
    case ErrorCode::WrongRoom: return "wrong-room";
    case ErrorCode::Immovable: return "immovable";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

bool passes(int correct, int required, double threshold, bool strict) {
  if (required <= 0) return false;
  const double accuracy = static_cast<double>(correct) / required;
  return strict ? accuracy > threshold + 1e-9 : accuracy >= threshold - 1e-9;
}

int minimum_passing_count(const LevelConfig& level) {
  for (int k = 0; k <= level.required_placements; ++k)
    if (passes(k, level.required_placements, level.pass_threshold, level.threshold_strict)) return k;
  return level.required_placements + 1;
}

void validate_level_config(const MuseumScene& scene, const LevelConfig& l) {
  if (l.level < 1 || l.level > scene::kLevelCount) fail(l, "level must be 1..3");
  const LevelRule& r = rule_for(l.level);

  if (l.theme != r.theme) fail(l, "theme must be " + std::string(scene::to_string(r.theme)));
  if (l.items.size() != r.items) fail(l, "expected " + std::to_string(r.items) + " placeable items");
  if (l.display_items.size() != r.display_items)
    fail(l, "expected " + std::to_string(r.display_items) + " display items");
  if (l.required_placements != r.required)
    fail(l, "required_placements must be " + std::to_string(r.required));
  if (l.threshold_strict != r.strict || std::abs(l.pass_threshold - r.threshold) > 1e-12)
    fail(l, "pass threshold must be " + std::string(r.strict ? "> " : ">= ") + std::to_string(r.threshold));

  const scene::Room* room = scene.find_room(l.room_id);
  if (!room || room->kind != scene::RoomKind::Game || room->level != l.level)
    fail(l, "room " + l.room_id + " is not the game room of this level");
  const scene::Room* roaming = scene.roaming_room(l.level);
  if (!roaming) fail(l, "no roaming room");

  if (l.containers.size() != r.accepted_values.size())
    fail(l, "expected " + std::to_string(r.accepted_values.size()) + " containers");
  std::set<std::string> ids, values;
  int total_capacity = 0;
  for (const auto& c : l.containers) {
    if (!ids.insert(c.id).second) fail(l, "duplicate container " + c.id);
    if (c.capacity < 1) fail(l, "container " + c.id + " capacity must be >= 1");
    if (r.capacity && c.capacity != r.capacity)
      fail(l, "container " + c.id + " capacity must be " + std::to_string(r.capacity));
    if (!(c.interaction_radius > 0)) fail(l, "container " + c.id + " radius must be positive");
    if (c.accepts_attribute != l.theme) fail(l, "container " + c.id + " sorts by the wrong attribute");
    if (!r.accepted_values.count(c.accepts_value)) fail(l, "container " + c.id + " accepts unknown value");
    values.insert(c.accepts_value);
    total_capacity += c.capacity;
  }
  if (values != r.accepted_values) fail(l, "containers must cover every value once");

  std::set<std::string> seen;
  for (const auto* group : {&l.items, &l.display_items})
    for (const auto& it : *group) {
      if (!seen.insert(it.exhibit_id).second) fail(l, "duplicate item " + it.exhibit_id);
      const auto& listed = roaming->exhibit_ids;
      if (std::find(listed.begin(), listed.end(), it.exhibit_id) == listed.end())
        fail(l, "item " + it.exhibit_id + " is not shown in " + roaming->id);
      for (const auto& c : l.containers)
        if ((it.initial_pose.position - c.position).norm() < c.interaction_radius)
          fail(l, "item " + it.exhibit_id + " starts inside container " + c.id);
    }

  const int reachable = std::min(static_cast<int>(l.items.size()), total_capacity);
  if (reachable != l.required_placements)
    fail(l, "min(items, total capacity) = " + std::to_string(reachable) + " but required is " +
                std::to_string(l.required_placements));
}

void validate_configs(const MuseumScene& scene) {
  if (scene.levels.size() != static_cast<std::size_t>(scene::kLevelCount))
    throw GameError(ErrorCode::Config, "expected exactly 3 level configs");
  for (int level = 1; level <= scene::kLevelCount; ++level) {
    const LevelConfig* l = scene.find_level(level);
    if (!l) throw GameError(ErrorCode::Config, "missing config for level " + std::to_string(level));
    validate_level_config(scene, *l);
  }
  std::array<int, 3> next_gates{};
  for (const auto& p : scene.teleport.points) {
    if (p.kind != scene::TeleportKind::NextLevel) continue;
    const scene::Room* from = scene.find_room(p.room_id);
    const scene::Room* to = scene.find_room(p.target_room);
    if (p.initially_open) throw GameError(ErrorCode::Config, "NextLevel gate " + p.id + " must start closed");
    if (!from || !to || from->kind != scene::RoomKind::Game || to->kind != scene::RoomKind::Roaming ||
        to->level != from->level + 1)
      throw GameError(ErrorCode::Config, "NextLevel gate " + p.id + " must lead from game room L to roaming room L+1");
    ++next_gates[static_cast<std::size_t>(from->level - 1)];
  }
  if (next_gates[0] != 1 || next_gates[1] != 1 || next_gates[2] != 0)
    throw GameError(ErrorCode::Config, "levels 1 and 2 need exactly one NextLevel gate each");
}

}  // namespace curate::game
