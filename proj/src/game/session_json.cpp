#include "curate/game/session_json.hpp"

#include "curate/scene/scene_io.hpp"

namespace curate::game {

using nlohmann::json;

namespace {

json quat_json(const Quat& q) { return {q.w(), q.x(), q.y(), q.z()}; }

Quat quat_from(const json& j) {
  return Quat(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(), j.at(3).get<double>());
}

Phase phase_from(const std::string& s) {
  if (s == "Roaming") return Phase::Roaming;
  if (s == "Game") return Phase::Game;
  if (s == "Finished") return Phase::Finished;
  throw scene::SchemaError("/phase", "unknown phase \"" + s + "\"");
}

}  // namespace

json to_json(const GameSession& s) {
  json placements = json::object();
  for (const auto& [id, pose] : s.placements) placements[id] = scene::to_json(pose);
  json attempts = json::object();
  for (const auto& [level, n] : s.attempts) attempts[std::to_string(level)] = n;
  return {{"session_id", s.session_id},
          {"level", s.current_level},
          {"phase", to_string(s.phase)},
          {"room", s.current_room},
          {"position", scene::to_json(s.position)},
          {"placements", placements},
          {"grabbed", s.grabbed ? json(*s.grabbed) : json(nullptr)},
          {"held_rotation", s.held_rotation ? quat_json(*s.held_rotation) : json(nullptr)},
          {"attempts", attempts},
          {"gates_open", s.gates_open},
          {"passed_levels", s.passed_levels},
          {"panels_read", s.panels_read}};
}

GameSession session_from_json(const json& j) {
  GameSession s;
  s.session_id = j.at("session_id").get<std::string>();
  s.current_level = j.at("level").get<int>();
  s.phase = phase_from(j.at("phase").get<std::string>());
  s.current_room = j.at("room").get<std::string>();
  s.position = scene::vec3_from_json(j.at("position"), "/position");
  for (const auto& [id, pose] : j.at("placements").items())
    s.placements[id] = scene::pose_from_json(pose, "/placements/" + id);
  if (!j.at("grabbed").is_null()) s.grabbed = j.at("grabbed").get<std::string>();
  if (!j.at("held_rotation").is_null()) s.held_rotation = quat_from(j.at("held_rotation"));
  for (const auto& [level, n] : j.at("attempts").items()) s.attempts[std::stoi(level)] = n.get<int>();
  s.gates_open = j.at("gates_open").get<std::set<std::string>>();
  s.passed_levels = j.at("passed_levels").get<std::set<int>>();
  s.panels_read = j.at("panels_read").get<std::set<std::string>>();
  return s;
}

json to_json(const AccuracyResult& r) {
  json items = json::object();
  for (const auto& [id, o] : r.per_item)
    items[id] = {{"assigned_container", o.assigned_container ? json(*o.assigned_container) : json(nullptr)},
                 {"correct", o.correct},
                 {"over_capacity", o.over_capacity}};
  return {{"per_item", items},
          {"correct_count", r.correct_count},
          {"required_placements", r.required_placements},
          {"accuracy", r.accuracy},
          {"passed", r.passed}};
}

}  // namespace curate::game
