#include "curate/scene/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace curate::scene {

using nlohmann::json;

namespace {

std::string kind_name(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return "null";
    case json::value_t::object: return "object";
    case json::value_t::array: return "array";
    case json::value_t::string: return "string";
    case json::value_t::boolean: return "boolean";
    case json::value_t::discarded: return "discarded";
    default: return "number";
  }
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw SchemaError(path, "expected object, got " + kind_name(obj));
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected number, got " + kind_name(j));
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "not finite");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected integer, got " + kind_name(j));
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected string, got " + kind_name(j));
  return j.get<std::string>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected boolean, got " + kind_name(j));
  return j.get<bool>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected array, got " + kind_name(j));
  return j;
}

Vec2 vec2(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [x, z]");
  return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

template <class E, class F>
E enumeration(const json& j, const std::string& path, F parse_fn) {
  const std::string s = text(j, path);
  auto v = parse_fn(s);
  if (!v) throw SchemaError(path, "unknown value \"" + s + "\"");
  return *v;
}

std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

// Walks `"<key>": [...]` with a per-element parser.
template <class T, class F>
std::vector<T> list(const json& obj, const std::string& path, const char* key, F parse_one) {
  const std::string p = path + "/" + key;
  const json& a = array(field(obj, path, key), p);
  std::vector<T> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(parse_one(a[i], at(p, i)));
  return out;
}

std::vector<std::string> string_list(const json& obj, const std::string& path, const char* key) {
  return list<std::string>(obj, path, key, text);
}

Rect rect_from(const json& j, const std::string& p) {
  Rect r;
  r.center = vec2(field(j, p, "center"), p + "/center");
  r.width = number(field(j, p, "width"), p + "/width");
  r.depth = number(field(j, p, "depth"), p + "/depth");
  if (const json* y = optional_field(j, "yaw")) r.yaw = number(*y, p + "/yaw");
  if (r.width <= 0 || r.depth <= 0) throw SchemaError(p, "width and depth must be positive");
  return r;
}

Exhibit exhibit_from(const json& j, const std::string& p) {
  Exhibit e;
  e.id = text(field(j, p, "id"), p + "/id");
  e.mesh_asset = text(field(j, p, "mesh_asset"), p + "/mesh_asset");
  e.display_name = text(field(j, p, "display_name"), p + "/display_name");
  e.knowledge_text = text(field(j, p, "knowledge_text"), p + "/knowledge_text");
  e.category = enumeration<Category>(field(j, p, "category"), p + "/category", parse_category);
  e.purpose = enumeration<Purpose>(field(j, p, "purpose"), p + "/purpose", parse_purpose);
  e.dynasty = enumeration<Dynasty>(field(j, p, "dynasty"), p + "/dynasty", parse_dynasty);
  e.level = integer(field(j, p, "level"), p + "/level");
  if (e.level < 1 || e.level > kLevelCount) throw SchemaError(p + "/level", "must be 1..3");
  return e;
}

Room room_from(const json& j, const std::string& p) {
  Room r;
  r.id = text(field(j, p, "id"), p + "/id");
  const std::string kind = text(field(j, p, "kind"), p + "/kind");
  if (kind == "Roaming") r.kind = RoomKind::Roaming;
  else if (kind == "Game") r.kind = RoomKind::Game;
  else throw SchemaError(p + "/kind", "unknown value \"" + kind + "\"");
  r.level = integer(field(j, p, "level"), p + "/level");
  if (r.level < 1 || r.level > kLevelCount) throw SchemaError(p + "/level", "must be 1..3");
  r.floor = rect_from(field(j, p, "floor"), p + "/floor");
  r.spawn = vec3_from_json(field(j, p, "spawn"), p + "/spawn");
  if (optional_field(j, "exhibits")) r.exhibit_ids = string_list(j, p, "exhibits");
  return r;
}

Stand stand_from(const json& j, const std::string& p) {
  Stand s;
  s.id = text(field(j, p, "id"), p + "/id");
  s.room_id = text(field(j, p, "room"), p + "/room");
  s.position = vec3_from_json(field(j, p, "position"), p + "/position");
  s.height = number(field(j, p, "height"), p + "/height");
  s.exhibit_id = text(field(j, p, "exhibit"), p + "/exhibit");
  const json& panel = field(j, p, "panel");
  s.panel.button_position =
      vec3_from_json(field(panel, p + "/panel", "button_position"), p + "/panel/button_position");
  s.panel.text_height = number(field(panel, p + "/panel", "text_height"), p + "/panel/text_height");
  return s;
}

TeleportArea area_from(const json& j, const std::string& p) {
  TeleportArea a;
  a.id = text(field(j, p, "id"), p + "/id");
  a.room_id = text(field(j, p, "room"), p + "/room");
  a.polygon = list<Vec2>(j, p, "polygon", vec2);
  if (a.polygon.size() < 3) throw SchemaError(p + "/polygon", "needs at least 3 vertices");
  return a;
}

TeleportPoint point_from(const json& j, const std::string& p) {
  TeleportPoint t;
  t.id = text(field(j, p, "id"), p + "/id");
  t.room_id = text(field(j, p, "room"), p + "/room");
  t.position = vec3_from_json(field(j, p, "position"), p + "/position");
  t.kind = enumeration<TeleportKind>(field(j, p, "kind"), p + "/kind", parse_teleport_kind);
  t.initially_open = boolean(field(j, p, "initially_open"), p + "/initially_open");
  if (const json* tr = optional_field(j, "target_room")) t.target_room = text(*tr, p + "/target_room");
  if (t.kind != TeleportKind::Plain && t.target_room.empty())
    throw SchemaError(p + "/target_room", "required for non-Plain points");
  return t;
}

LightingMeta lighting_from(const json& j, const std::string& p) {
  LightingMeta m;
  m.ambient = number(field(j, p, "ambient"), p + "/ambient");
  const json& d = field(j, p, "directional");
  m.directional_direction = vec3_from_json(field(d, p + "/directional", "direction"),
                                           p + "/directional/direction");
  m.directional_intensity =
      number(field(d, p + "/directional", "intensity"), p + "/directional/intensity");
  m.spotlights = list<Spotlight>(j, p, "spotlights", [](const json& s, const std::string& sp) {
    Spotlight out;
    out.target_exhibit_id = text(field(s, sp, "target"), sp + "/target");
    out.position = vec3_from_json(field(s, sp, "position"), sp + "/position");
    out.cone_angle_deg = number(field(s, sp, "cone_angle_deg"), sp + "/cone_angle_deg");
    return out;
  });
  m.reflection_probe = vec3_from_json(field(j, p, "reflection_probe"), p + "/reflection_probe");
  m.light_probes = list<LightProbe>(j, p, "light_probes", [](const json& s, const std::string& sp) {
    return LightProbe{text(field(s, sp, "exhibit"), sp + "/exhibit"),
                      vec3_from_json(field(s, sp, "position"), sp + "/position")};
  });
  for (auto& id : string_list(j, p, "static_ids")) m.static_ids.insert(std::move(id));
  return m;
}

Container container_from(const json& j, const std::string& p) {
  Container c;
  c.id = text(field(j, p, "id"), p + "/id");
  c.label = text(field(j, p, "label"), p + "/label");
  c.kind = enumeration<ContainerKind>(field(j, p, "kind"), p + "/kind", parse_container_kind);
  c.position = vec3_from_json(field(j, p, "position"), p + "/position");
  c.capacity = integer(field(j, p, "capacity"), p + "/capacity");
  const json& acc = field(j, p, "accepts");
  c.accepts_attribute =
      enumeration<Theme>(field(acc, p + "/accepts", "attribute"), p + "/accepts/attribute", parse_theme);
  c.accepts_value = text(field(acc, p + "/accepts", "value"), p + "/accepts/value");
  if (const json* a = optional_field(j, "interaction_radius"))
    c.interaction_radius = number(*a, p + "/interaction_radius");
  return c;
}

GameItem item_from(const json& j, const std::string& p) {
  return GameItem{text(field(j, p, "exhibit"), p + "/exhibit"),
                  pose_from_json(field(j, p, "initial_pose"), p + "/initial_pose")};
}

LevelConfig level_from(const json& j, const std::string& p) {
  LevelConfig l;
  l.level = integer(field(j, p, "level"), p + "/level");
  l.room_id = text(field(j, p, "room"), p + "/room");
  l.theme = enumeration<Theme>(field(j, p, "theme"), p + "/theme", parse_theme);
  l.items = list<GameItem>(j, p, "items", item_from);
  if (optional_field(j, "display_items")) l.display_items = list<GameItem>(j, p, "display_items", item_from);
  l.required_placements = integer(field(j, p, "required_placements"), p + "/required_placements");
  l.containers = list<Container>(j, p, "containers", container_from);
  l.pass_threshold = number(field(j, p, "pass_threshold"), p + "/pass_threshold");
  l.threshold_strict = boolean(field(j, p, "threshold_strict"), p + "/threshold_strict");
  return l;
}

template <class T>
void require_unique(const std::vector<T>& v, const char* what) {
  std::map<std::string, int> seen;
  for (const auto& x : v)
    if (++seen[x.id] > 1) throw InvariantError(std::string("duplicate ") + what + " id \"" + x.id + "\"");
}

void link(const MuseumScene& s) {
  for (const auto& e : s.exhibits)
    if (!s.find_asset(e.mesh_asset)) throw LinkError(e.mesh_asset, "exhibit " + e.id);
  for (const auto& r : s.rooms)
    for (const auto& id : r.exhibit_ids)
      if (!s.find_exhibit(id)) throw LinkError(id, "room " + r.id);
  for (const auto& st : s.stands) {
    if (!s.find_room(st.room_id)) throw LinkError(st.room_id, "stand " + st.id);
    if (!s.find_exhibit(st.exhibit_id)) throw LinkError(st.exhibit_id, "stand " + st.id);
  }
  for (const auto& a : s.teleport.areas)
    if (!s.find_room(a.room_id)) throw LinkError(a.room_id, "teleport area " + a.id);
  for (const auto& p : s.teleport.points) {
    if (!s.find_room(p.room_id)) throw LinkError(p.room_id, "teleport point " + p.id);
    if (!p.target_room.empty() && !s.find_room(p.target_room))
      throw LinkError(p.target_room, "teleport point " + p.id);
  }
  for (const auto& sp : s.lighting.spotlights)
    if (!s.find_exhibit(sp.target_exhibit_id)) throw LinkError(sp.target_exhibit_id, "spotlight");
  for (const auto& lp : s.lighting.light_probes)
    if (!s.find_exhibit(lp.exhibit_id)) throw LinkError(lp.exhibit_id, "light probe");
  for (const auto& l : s.levels) {
    const std::string ctx = "level " + std::to_string(l.level);
    if (!s.find_room(l.room_id)) throw LinkError(l.room_id, ctx);
    for (const auto* items : {&l.items, &l.display_items})
      for (const auto& it : *items)
        if (!s.find_exhibit(it.exhibit_id)) throw LinkError(it.exhibit_id, ctx);
  }
}

void check_invariants(const MuseumScene& s) {
  require_unique(s.exhibits, "exhibit");
  require_unique(s.assets, "asset");
  require_unique(s.rooms, "room");
  require_unique(s.stands, "stand");
  require_unique(s.teleport.points, "teleport point");
  require_unique(s.teleport.areas, "teleport area");

  for (int level = 1; level <= kLevelCount; ++level) {
    for (RoomKind kind : {RoomKind::Roaming, RoomKind::Game}) {
      int n = 0;
      for (const auto& r : s.rooms) n += (r.kind == kind && r.level == level);
      if (n != 1)
        throw InvariantError("expected exactly one " +
                             std::string(kind == RoomKind::Roaming ? "roaming" : "game") +
                             " room for level " + std::to_string(level) + ", found " +
                             std::to_string(n));
    }
  }
  if (s.rooms.size() != 2 * kLevelCount) throw InvariantError("expected exactly 3 roaming and 3 game rooms");

  for (const auto& r : s.rooms) {
    if (r.kind == RoomKind::Roaming && r.exhibit_ids.size() != kExhibitsPerRoamingRoom)
      throw InvariantError("roaming room " + r.id + " lists " + std::to_string(r.exhibit_ids.size()) +
                           " exhibits, expected 22");
    if (r.kind == RoomKind::Game && !r.exhibit_ids.empty())
      throw InvariantError("game room " + r.id + " must not list exhibits");
  }
  for (const auto& e : s.exhibits)
    if (e.knowledge_text.empty()) throw InvariantError("exhibit " + e.id + " has empty knowledge_text");
}

json rect_json(const Rect& r) {
  return {{"center", {r.center.x(), r.center.y()}}, {"width", r.width}, {"depth", r.depth}, {"yaw", r.yaw}};
}

json item_json(const GameItem& it) {
  return {{"exhibit", it.exhibit_id}, {"initial_pose", to_json(it.initial_pose)}};
}

}  // namespace

Vec3 vec3_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(path, "expected [x, y, z]");
  return {number(j[0], path + "/0"), number(j[1], path + "/1"), number(j[2], path + "/2")};
}

Pose pose_from_json(const json& j, const std::string& path) {
  Pose p;
  p.position = vec3_from_json(field(j, path, "position"), path + "/position");
  if (const json* r = optional_field(j, "rotation")) {
    if (!r->is_array() || r->size() != 4) throw SchemaError(path + "/rotation", "expected [w, x, y, z]");
    const std::string rp = path + "/rotation";
    p.rotation = Quat(number((*r)[0], rp + "/0"), number((*r)[1], rp + "/1"),
                      number((*r)[2], rp + "/2"), number((*r)[3], rp + "/3"));
    if (std::abs(p.rotation.norm() - 1.0) > 1e-6) throw SchemaError(rp, "quaternion is not unit length");
  }
  return p;
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const Pose& p) {
  const Quat& q = p.rotation;
  return {{"position", to_json(p.position)}, {"rotation", {q.w(), q.x(), q.y(), q.z()}}};
}

json to_json(const Container& c) {
  return {{"id", c.id},
          {"label", c.label},
          {"kind", to_string(c.kind)},
          {"position", to_json(c.position)},
          {"capacity", c.capacity},
          {"accepts", {{"attribute", to_string(c.accepts_attribute)}, {"value", c.accepts_value}}},
          {"interaction_radius", c.interaction_radius}};
}

json to_json(const LevelConfig& l) {
  json items = json::array(), display = json::array(), containers = json::array();
  for (const auto& it : l.items) items.push_back(item_json(it));
  for (const auto& it : l.display_items) display.push_back(item_json(it));
  for (const auto& c : l.containers) containers.push_back(to_json(c));
  return {{"level", l.level},
          {"room", l.room_id},
          {"theme", to_string(l.theme)},
          {"items", items},
          {"display_items", display},
          {"required_placements", l.required_placements},
          {"containers", containers},
          {"pass_threshold", l.pass_threshold},
          {"threshold_strict", l.threshold_strict}};
}

json to_json(const MuseumScene& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["scene_version"] = s.scene_version;

  json& assets = j["assets"] = json::array();
  for (const auto& a : s.assets) assets.push_back({{"id", a.id}, {"path", a.path}});

  json& exhibits = j["exhibits"] = json::array();
  for (const auto& e : s.exhibits)
    exhibits.push_back({{"id", e.id},
                        {"mesh_asset", e.mesh_asset},
                        {"display_name", e.display_name},
                        {"knowledge_text", e.knowledge_text},
                        {"category", to_string(e.category)},
                        {"purpose", to_string(e.purpose)},
                        {"dynasty", to_string(e.dynasty)},
                        {"level", e.level}});

  json& rooms = j["rooms"] = json::array();
  for (const auto& r : s.rooms) {
    json room = {{"id", r.id},
                 {"kind", r.kind == RoomKind::Roaming ? "Roaming" : "Game"},
                 {"level", r.level},
                 {"floor", rect_json(r.floor)},
                 {"spawn", to_json(r.spawn)}};
    if (r.kind == RoomKind::Roaming) room["exhibits"] = r.exhibit_ids;
    rooms.push_back(std::move(room));
  }

  json& stands = j["stands"] = json::array();
  for (const auto& st : s.stands)
    stands.push_back({{"id", st.id},
                      {"room", st.room_id},
                      {"position", to_json(st.position)},
                      {"height", st.height},
                      {"exhibit", st.exhibit_id},
                      {"panel",
                       {{"button_position", to_json(st.panel.button_position)},
                        {"text_height", st.panel.text_height}}}});

  json areas = json::array(), points = json::array();
  for (const auto& a : s.teleport.areas) {
    json poly = json::array();
    for (const auto& v : a.polygon) poly.push_back({v.x(), v.y()});
    areas.push_back({{"id", a.id}, {"room", a.room_id}, {"polygon", poly}});
  }
  for (const auto& p : s.teleport.points) {
    json point = {{"id", p.id},
                  {"room", p.room_id},
                  {"position", to_json(p.position)},
                  {"kind", to_string(p.kind)},
                  {"initially_open", p.initially_open}};
    if (!p.target_room.empty()) point["target_room"] = p.target_room;
    points.push_back(std::move(point));
  }
  j["teleport"] = {{"areas", areas}, {"points", points}};

  const LightingMeta& m = s.lighting;
  json spots = json::array(), probes = json::array();
  for (const auto& sp : m.spotlights)
    spots.push_back({{"target", sp.target_exhibit_id},
                     {"position", to_json(sp.position)},
                     {"cone_angle_deg", sp.cone_angle_deg}});
  for (const auto& lp : m.light_probes)
    probes.push_back({{"exhibit", lp.exhibit_id}, {"position", to_json(lp.position)}});
  j["lighting"] = {{"ambient", m.ambient},
                   {"directional",
                    {{"direction", to_json(m.directional_direction)},
                     {"intensity", m.directional_intensity}}},
                   {"spotlights", spots},
                   {"reflection_probe", to_json(m.reflection_probe)},
                   {"light_probes", probes},
                   {"static_ids", m.static_ids}};

  json& levels = j["levels"] = json::array();
  for (const auto& l : s.levels) levels.push_back(to_json(l));
  return j;
}

std::string serialize(const MuseumScene& scene) { return to_json(scene).dump(2) + "\n"; }

MuseumScene load_scene_json(const json& j) {
  const std::string root;
  const int schema = integer(field(j, root, "schema_version"), "/schema_version");
  if (schema != kSchemaVersion)
    throw SchemaError("/schema_version", "unsupported version " + std::to_string(schema));

  MuseumScene s;
  s.scene_version = text(field(j, root, "scene_version"), "/scene_version");
  s.assets = list<Asset>(j, root, "assets", [](const json& a, const std::string& p) {
    return Asset{text(field(a, p, "id"), p + "/id"), text(field(a, p, "path"), p + "/path")};
  });
  s.exhibits = list<Exhibit>(j, root, "exhibits", exhibit_from);
  s.rooms = list<Room>(j, root, "rooms", room_from);
  s.stands = list<Stand>(j, root, "stands", stand_from);
  const json& tp = field(j, root, "teleport");
  s.teleport.areas = list<TeleportArea>(tp, "/teleport", "areas", area_from);
  s.teleport.points = list<TeleportPoint>(tp, "/teleport", "points", point_from);
  s.lighting = lighting_from(field(j, root, "lighting"), "/lighting");
  s.levels = list<LevelConfig>(j, root, "levels", level_from);

  check_invariants(s);
  link(s);
  return s;
}

MuseumScene load_scene(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
  return load_scene_json(j);
}

MuseumScene load_scene_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scene(std::string_view(ss.str()));
}

}  // namespace curate::scene
