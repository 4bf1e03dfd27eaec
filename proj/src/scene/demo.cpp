#include "curate/scene/demo.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "curate/geometry/mesh_io.hpp"
#include "curate/scene/layout.hpp"
#include "curate/scene/scene_io.hpp"

namespace curate::scene {
namespace {

using geometry::Mesh;

struct BronzeType {
  const char* key;
  const char* name;
  Category category;
  Purpose purpose;
  const char* use;
};

constexpr std::array<BronzeType, 8> kTypes{{
    {"hu", "Hu wine jar", Category::Bottle, Purpose::WineVessel, "storing wine"},
    {"ding", "Ding tripod cauldron", Category::Tripod, Purpose::Sacrifice, "offering meat at rites"},
    {"ge", "Ge dagger-axe", Category::Ge, Purpose::War, "hooking and striking in chariot warfare"},
    {"gui", "Gui food vessel", Category::Gui, Purpose::Eating, "serving grain"},
    {"jue", "Jue wine cup", Category::Other, Purpose::WineVessel, "warming and pouring wine"},
    {"zun", "Zun wine vessel", Category::Other, Purpose::WineVessel, "holding wine at banquets"},
    {"li", "Li cooking pot", Category::Other, Purpose::Eating, "boiling food over a fire"},
    {"zhong", "Zhong bell", Category::Other, Purpose::MusicalInstrument, "court and ritual music"},
}};

const BronzeType& type_of(std::string_view key) {
  for (const auto& t : kTypes)
    if (key == t.key) return t;
  throw SceneError("unknown bronze type " + std::string(key));
}

// Exhibit types per roaming room. The leading entries are the game items.
const std::array<std::array<const char*, 22>, 3> kRoomTypes{{
    {"hu", "ding", "ge", "gui", "hu", "ding", "ge", "gui", "hu", "ding", "ge",
     "gui", "jue", "zun", "li", "zhong", "hu", "ding", "ge", "gui", "jue", "zun"},
    {"gui", "li", "gui", "ge", "ge", "jue", "zun", "hu", "zhong", "zhong", "ding",
     "ding", "zun", "hu", "ding", "ge", "gui", "jue", "li", "zhong", "hu", "ding"},
    {"ding", "gui", "hu", "ding", "gui", "hu", "jue", "zun", "li", "zhong", "ge",
     "ding", "gui", "hu", "jue", "zun", "li", "zhong", "ge", "ding", "gui", "hu"},
}};

constexpr std::array<Dynasty, 3> kDynastyCycle{Dynasty::ShangZhou, Dynasty::Han, Dynasty::WeiJin};

std::string dynasty_text(Dynasty d) {
  switch (d) {
    case Dynasty::ShangZhou: return "Shang and Zhou period";
    case Dynasty::Han: return "Han dynasty";
    case Dynasty::WeiJin: return "Wei and Jin period";
    default: return "unknown period";
  }
}

std::string two_digits(int n) { return (n < 10 ? "0" : "") + std::to_string(n); }

std::string exhibit_id(int level, int index) {
  return "l" + std::to_string(level) + "_" + kRoomTypes[level - 1][index] + "_" + two_digits(index + 1);
}

Rect roaming_floor(int level) { return Rect{{0.0, 40.0 * (level - 1)}, 20, 20, 0}; }
Rect game_floor(int level) { return Rect{{30.0, 40.0 * (level - 1)}, 12, 12, 0}; }

Vec3 at(const Rect& r, double x, double y, double z) {
  const Vec2 p = r.to_world({x, z});
  return {p.x(), y, p.y()};
}

TeleportArea area_for(const Room& room) {
  const Rect& f = room.floor;
  const double hx = f.width / 2 - 0.5, hz = f.depth / 2 - 0.5;
  TeleportArea a{"area_" + room.id, room.id, {}};
  for (const Vec2& c : {Vec2{-hx, -hz}, Vec2{hx, -hz}, Vec2{hx, hz}, Vec2{-hx, hz}})
    a.polygon.push_back(f.to_world(c));
  return a;
}

GameItem item(const std::string& id, const Vec3& p) { return GameItem{id, Pose{p, Quat::Identity()}}; }

Container container(std::string id, std::string label, ContainerKind kind, Vec3 pos, int capacity,
                    Theme theme, std::string value) {
  Container c;
  c.id = std::move(id);
  c.label = std::move(label);
  c.kind = kind;
  c.position = pos;
  c.capacity = capacity;
  c.accepts_attribute = theme;
  c.accepts_value = std::move(value);
  return c;
}

LevelConfig level_one(const Room& room) {
  const Rect& f = room.floor;
  LevelConfig l;
  l.level = 1;
  l.room_id = room.id;
  l.theme = Theme::Category;
  // Twelve bronzes on the central table, a 4 x 3 grid.
  for (int i = 0; i < 12; ++i)
    l.items.push_back(item(exhibit_id(1, i), at(f, -0.45 + 0.3 * (i % 4), 0.9, -0.3 + 0.3 * (i / 4))));
  l.required_placements = 12;
  l.containers = {
      container("shelf_bottle", "Bottles", ContainerKind::Shelf, at(f, -4.5, 1.0, 0), 3, Theme::Category, "Bottle"),
      container("shelf_tripod", "Tripods", ContainerKind::Shelf, at(f, 0, 1.0, -4.5), 3, Theme::Category, "Tripod"),
      container("shelf_ge", "Ge", ContainerKind::Shelf, at(f, 4.5, 1.0, 0), 3, Theme::Category, "Ge"),
      container("shelf_gui", "Gui", ContainerKind::Shelf, at(f, 0, 1.0, 4.5), 3, Theme::Category, "Gui"),
  };
  l.pass_threshold = 0.8;
  l.threshold_strict = true;
  return l;
}

LevelConfig level_two(const Room& room) {
  const Rect& f = room.floor;
  LevelConfig l;
  l.level = 2;
  l.room_id = room.id;
  l.theme = Theme::Purpose;
  // Long table on the west side; the thirteenth bronze sits on a chair.
  for (int i = 0; i < 12; ++i) l.items.push_back(item(exhibit_id(2, i), at(f, -4.0, 0.9, -2.75 + 0.5 * i)));
  l.display_items.push_back(item(exhibit_id(2, 12), at(f, -4.0, 0.5, 4.0)));
  l.required_placements = 10;
  const std::array<std::pair<const char*, Purpose>, 5> tables{{{"Eating", Purpose::Eating},
                                                                {"War", Purpose::War},
                                                                {"Wine vessels", Purpose::WineVessel},
                                                                {"Musical instruments", Purpose::MusicalInstrument},
                                                                {"Sacrifices", Purpose::Sacrifice}}};
  for (int i = 0; i < 5; ++i) {
    const std::string value(to_string(tables[i].second));
    l.containers.push_back(container("table_" + value, tables[i].first, ContainerKind::RoundTable,
                                     at(f, 3.5, 0.8, -4.0 + 2.0 * i), 2, Theme::Purpose, value));
  }
  l.pass_threshold = 0.9;
  l.threshold_strict = true;
  return l;
}

LevelConfig level_three(const Room& room) {
  const Rect& f = room.floor;
  LevelConfig l;
  l.level = 3;
  l.room_id = room.id;
  l.theme = Theme::Dynasty;
  for (int i = 0; i < 9; ++i) l.items.push_back(item(exhibit_id(3, i), at(f, -4.0 + 1.0 * i, 1.0, -4.0)));
  l.required_placements = 9;
  l.containers = {
      container("box_ShangZhou", "Shang Zhou", ContainerKind::Box, at(f, -3, 0.5, 3), 3, Theme::Dynasty, "ShangZhou"),
      container("box_Han", "Han", ContainerKind::Box, at(f, 0, 0.5, 3), 3, Theme::Dynasty, "Han"),
      container("box_WeiJin", "Wei Jin", ContainerKind::Box, at(f, 3, 0.5, 3), 3, Theme::Dynasty, "WeiJin"),
  };
  l.pass_threshold = 1.0;
  l.threshold_strict = false;
  return l;
}

// Surface of revolution about +y from a (radius, height) profile, bottom
// closed by a fan, top left open.
Mesh revolve(const std::string& name, const std::vector<Vec2>& profile, int segments) {
  Mesh m;
  m.name = name;
  const double top = profile.back().y();
  for (std::size_t r = 0; r < profile.size(); ++r) {
    for (int s = 0; s < segments; ++s) {
      const double a = 2 * std::numbers::pi * s / segments;
      m.positions.emplace_back(profile[r].x() * std::cos(a), profile[r].y(), profile[r].x() * std::sin(a));
      const double t = profile[r].y() / top;
      m.colors.emplace_back(0.36 + 0.1 * t, 0.45 + 0.03 * std::sin(3 * a), 0.33 - 0.08 * t);
    }
  }
  auto idx = [&](std::size_t r, int s) { return static_cast<std::uint32_t>(r * segments + (s % segments)); };
  for (std::size_t r = 0; r + 1 < profile.size(); ++r)
    for (int s = 0; s < segments; ++s) {
      m.triangles.push_back({idx(r, s), idx(r + 1, s + 1), idx(r, s + 1)});
      m.triangles.push_back({idx(r, s), idx(r + 1, s), idx(r + 1, s + 1)});
    }
  const auto centre = static_cast<std::uint32_t>(m.positions.size());
  m.positions.emplace_back(0, 0, 0);
  m.colors.emplace_back(0.3, 0.38, 0.3);
  for (int s = 0; s < segments; ++s) m.triangles.push_back({centre, idx(0, s), idx(0, s + 1)});
  return m;
}

Mesh blade(const std::string& name) {
  // A flat dagger-axe lying on its side: an extruded hexagonal outline.
  const std::vector<Vec2> outline{{-0.12, 0.0}, {0.08, 0.0}, {0.14, 0.012}, {0.08, 0.024}, {-0.12, 0.024}, {-0.14, 0.012}};
  const double half = 0.006;
  Mesh m;
  m.name = name;
  for (double z : {-half, half})
    for (const auto& p : outline) {
      m.positions.emplace_back(p.x(), z + half, p.y() - 0.012);
      m.colors.emplace_back(0.42, 0.48, 0.36);
    }
  const auto n = static_cast<std::uint32_t>(outline.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    m.triangles.push_back({i, j, n + j});
    m.triangles.push_back({i, n + j, n + i});
  }
  for (std::uint32_t i = 1; i + 1 < n; ++i) {
    m.triangles.push_back({0, i + 1, i});
    m.triangles.push_back({n, n + i, n + i + 1});
  }
  return m;
}

std::vector<Vec2> profile_for(std::string_view key) {
  if (key == "hu") return {{0.07, 0}, {0.11, 0.08}, {0.12, 0.16}, {0.07, 0.28}, {0.05, 0.33}, {0.065, 0.36}};
  if (key == "ding") return {{0.06, 0}, {0.13, 0.06}, {0.15, 0.14}, {0.15, 0.2}, {0.16, 0.22}};
  if (key == "gui") return {{0.08, 0}, {0.09, 0.03}, {0.13, 0.08}, {0.14, 0.13}, {0.15, 0.15}};
  if (key == "jue") return {{0.03, 0}, {0.05, 0.06}, {0.06, 0.14}, {0.08, 0.2}};
  if (key == "zun") return {{0.08, 0}, {0.09, 0.08}, {0.07, 0.16}, {0.1, 0.26}, {0.14, 0.32}};
  if (key == "li") return {{0.05, 0}, {0.12, 0.05}, {0.13, 0.12}, {0.12, 0.16}};
  if (key == "zhong") return {{0.12, 0}, {0.11, 0.12}, {0.09, 0.26}, {0.05, 0.3}};
  throw SceneError("no profile for " + std::string(key));
}

}  // namespace

MuseumScene demo_scene() {
  MuseumScene s;
  s.scene_version = "demo-1";
  for (const auto& t : kTypes) s.assets.push_back({std::string("asset_") + t.key, std::string("assets/") + t.key + ".ply"});

  s.lighting.ambient = 0.6;
  s.lighting.directional_direction = Vec3(-0.3, -1.0, 0.2).normalized();
  s.lighting.directional_intensity = 0.8;

  for (int level = 1; level <= kLevelCount; ++level) {
    Room roam;
    roam.id = "roaming_" + std::to_string(level);
    roam.kind = RoomKind::Roaming;
    roam.level = level;
    roam.floor = roaming_floor(level);
    roam.spawn = at(roam.floor, 0, 0, 0);

    const auto slots = layout_circle(kExhibitsPerRoamingRoom, roam.floor, 1.5);
    for (int i = 0; i < 22; ++i) {
      const BronzeType& t = type_of(kRoomTypes[level - 1][i]);
      Exhibit e;
      e.id = exhibit_id(level, i);
      e.mesh_asset = std::string("asset_") + t.key;
      e.display_name = std::string(t.name) + " No. " + std::to_string(level * 100 + i + 1);
      e.category = t.category;
      e.purpose = t.purpose;
      e.dynasty = kDynastyCycle[i % 3];
      e.level = level;
      e.knowledge_text = "Age: " + dynasty_text(e.dynasty) + ". Decoration: " +
                         (i % 2 ? "cloud-and-thunder ground with a taotie mask band"
                                : "kui dragons between raised string borders") +
                         ". Casting: piece-mould casting in sectioned clay moulds. Value: used for " +
                         t.use + ", it documents bronze craft and ritual life of its period.";
      s.exhibits.push_back(e);
      roam.exhibit_ids.push_back(e.id);

      const Vec3& base = slots[i];
      const Vec3 radial = (base - roam.spawn).normalized();
      const Vec3 tangent = Vec3::UnitY().cross(radial).normalized();
      Stand st;
      st.id = "stand_" + e.id;
      st.room_id = roam.id;
      st.position = base;
      st.height = 1.0;
      st.exhibit_id = e.id;
      st.panel.button_position = base + 0.6 * tangent + Vec3(0, 1.0, 0);
      st.panel.text_height = 1.0;
      s.stands.push_back(st);
      s.lighting.static_ids.insert(st.id);

      s.lighting.spotlights.push_back({e.id, base + Vec3(0, 3.0, 0) - 0.5 * radial, 30.0});
      s.lighting.light_probes.push_back({e.id, base + Vec3(0, 1.3, 0)});
    }

    Room game;
    game.id = "game_" + std::to_string(level);
    game.kind = RoomKind::Game;
    game.level = level;
    game.floor = game_floor(level);
    game.spawn = at(game.floor, 0, 0, 1.5);

    s.lighting.static_ids.insert(roam.id);
    s.lighting.static_ids.insert(game.id);
    s.rooms.push_back(roam);
    s.rooms.push_back(game);
    s.teleport.areas.push_back(area_for(roam));
    s.teleport.areas.push_back(area_for(game));

    const std::string L = std::to_string(level);
    s.teleport.points.push_back({"roam_" + L + "_center", roam.id, roam.spawn, TeleportKind::Plain, true, ""});
    s.teleport.points.push_back({"roam_" + L + "_north", roam.id, at(roam.floor, 0, 0, 5), TeleportKind::Plain, true, ""});
    s.teleport.points.push_back({"enter_game_" + L, roam.id, at(roam.floor, 0, 0, -9), TeleportKind::EnterGame, true, game.id});
    s.teleport.points.push_back({"game_" + L + "_center", game.id, game.spawn, TeleportKind::Plain, true, ""});
    s.teleport.points.push_back({"return_" + L, game.id, at(game.floor, -2, 0, -5), TeleportKind::ReturnToRoaming, true, roam.id});
    if (level < kLevelCount)
      s.teleport.points.push_back({"next_level_" + L, game.id, at(game.floor, 2, 0, -5), TeleportKind::NextLevel, false,
                                   "roaming_" + std::to_string(level + 1)});
  }
  s.lighting.reflection_probe = Vec3(0, 2.5, 40);

  s.levels = {level_one(*s.game_room(1)), level_two(*s.game_room(2)), level_three(*s.game_room(3))};
  return s;
}

std::vector<DemoAsset> demo_assets() {
  std::vector<DemoAsset> out;
  for (const auto& t : kTypes) {
    const std::string id = std::string("asset_") + t.key;
    out.push_back({id, std::string_view(t.key) == "ge" ? blade(id) : revolve(id, profile_for(t.key), 48)});
  }
  return out;
}

void write_demo(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "assets");
  const MuseumScene scene = demo_scene();
  geometry::write_file_bytes(dir / "scene.json", serialize(scene));
  for (const auto& a : demo_assets()) {
    const Asset* asset = scene.find_asset(a.id);
    geometry::save_mesh_file(a.mesh, dir / asset->path);
  }
}

}  // namespace curate::scene
