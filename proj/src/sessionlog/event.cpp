#include "curate/sessionlog/event.hpp"

#include <array>
#include <utility>

#include "curate/scene/scene_io.hpp"

namespace curate::sessionlog {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 9> kKinds{{
    {EventKind::Teleport, "Teleport"},
    {EventKind::Touch, "Touch"},
    {EventKind::Grab, "Grab"},
    {EventKind::Rotate, "Rotate"},
    {EventKind::Release, "Release"},
    {EventKind::PanelOpen, "PanelOpen"},
    {EventKind::SubmitClick, "SubmitClick"},
    {EventKind::EnterGame, "EnterGame"},
    {EventKind::ReturnToRoaming, "ReturnToRoaming"},
}};

// JSON key of the target per kind; null when the kind has none.
const char* target_key(EventKind k) {
  switch (k) {
    case EventKind::Teleport: return "point_id";
    case EventKind::Touch:
    case EventKind::Grab:
    case EventKind::Rotate:
    case EventKind::Release: return "item_id";
    case EventKind::PanelOpen: return "exhibit_id";
    default: return nullptr;
  }
}

}  // namespace

std::string_view to_string(EventKind k) {
  for (const auto& [v, s] : kKinds)
    if (v == k) return s;
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (const auto& [v, name] : kKinds)
    if (name == s) return v;
  return std::nullopt;
}

json to_json(const InteractionEvent& e) {
  json j = {{"t", e.t}, {"kind", to_string(e.kind)}};
  if (const char* key = target_key(e.kind)) j[key] = e.target;
  if (e.kind == EventKind::Rotate && e.rotation) {
    const Quat& q = *e.rotation;
    j["rotation"] = {q.w(), q.x(), q.y(), q.z()};
  }
  if (e.kind == EventKind::Release && e.pose) j["pose"] = scene::to_json(*e.pose);
  if (!e.idempotency_key.empty()) j["idempotency_key"] = e.idempotency_key;
  return j;
}

InteractionEvent event_from_json(const json& j) {
  if (!j.is_object()) throw LogFormatError("event must be an object");
  InteractionEvent e;
  auto t = j.find("t");
  if (t == j.end() || !t->is_number_integer()) throw LogFormatError("event field t must be an integer");
  e.t = t->get<std::int64_t>();
  auto k = j.find("kind");
  if (k == j.end() || !k->is_string()) throw LogFormatError("event field kind must be a string");
  auto kind = parse_event_kind(k->get<std::string>());
  if (!kind) throw LogFormatError("unknown event kind \"" + k->get<std::string>() + "\"");
  e.kind = *kind;
  if (const char* key = target_key(e.kind)) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
      throw LogFormatError(std::string("event field ") + key + " must be a string");
    e.target = it->get<std::string>();
  }
  try {
    if (e.kind == EventKind::Rotate) {
      const json& r = j.at("rotation");
      if (!r.is_array() || r.size() != 4) throw LogFormatError("rotation must be [w, x, y, z]");
      e.rotation = Quat(r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>());
    }
    if (e.kind == EventKind::Release) e.pose = scene::pose_from_json(j.at("pose"), "/pose");
  } catch (const LogFormatError&) {
    throw;
  } catch (const std::exception& ex) {
    throw LogFormatError(std::string("bad event payload: ") + ex.what());
  }
  if (auto key = j.find("idempotency_key"); key != j.end()) {
    if (!key->is_string()) throw LogFormatError("idempotency_key must be a string");
    e.idempotency_key = key->get<std::string>();
  }
  return e;
}

}  // namespace curate::sessionlog
