#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace curate::scene {

using Vec2 = Eigen::Vector2d;  // floor plane (x, z)
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kLevelCount = 3;
inline constexpr std::size_t kExhibitsPerRoamingRoom = 22;

enum class Category { Bottle, Tripod, Ge, Gui, Other };
enum class Purpose { Eating, War, WineVessel, MusicalInstrument, Sacrifice, Other };
enum class Dynasty { ShangZhou, Han, WeiJin, Other };

// The attribute a game level sorts by.
enum class Theme { Category, Purpose, Dynasty };

std::string_view to_string(Category c);
std::string_view to_string(Purpose p);
std::string_view to_string(Dynasty d);
std::string_view to_string(Theme t);
std::optional<Category> parse_category(std::string_view s);
std::optional<Purpose> parse_purpose(std::string_view s);
std::optional<Dynasty> parse_dynasty(std::string_view s);
std::optional<Theme> parse_theme(std::string_view s);

struct Asset {
  std::string id;
  std::string path;  // relative to the asset directory
};

struct Exhibit {
  std::string id;
  std::string mesh_asset;
  std::string display_name;
  std::string knowledge_text;
  Category category = Category::Other;
  Purpose purpose = Purpose::Other;
  Dynasty dynasty = Dynasty::Other;
  int level = 1;

  // Value of this exhibit's attribute for `theme`, e.g. "Tripod".
  std::string_view attribute(Theme theme) const;
};

struct Panel {
  Vec3 button_position = Vec3::Zero();
  double text_height = 1.0;
};

struct Stand {
  std::string id;
  std::string room_id;
  Vec3 position = Vec3::Zero();  // floor point under the stand
  double height = 1.0;           // display surface height above the floor
  std::string exhibit_id;
  Panel panel;
};

// Oriented floor rectangle. `yaw` rotates the local frame about +y.
struct Rect {
  Vec2 center = Vec2::Zero();
  double width = 0;  // local x extent
  double depth = 0;  // local z extent
  double yaw = 0;    // radians

  Vec2 to_local(const Vec2& p) const;
  Vec2 to_world(const Vec2& local) const;
  bool contains(const Vec2& p, double eps = 1e-9) const;
};

enum class RoomKind { Roaming, Game };

struct Room {
  std::string id;
  RoomKind kind = RoomKind::Roaming;
  int level = 1;
  Rect floor;
  Vec3 spawn = Vec3::Zero();
  std::vector<std::string> exhibit_ids;  // roaming rooms only
};

// Visitors reach a game scene from the roaming scene by teleport, so entry
// has its own gate kind.
enum class TeleportKind { Plain, NextLevel, ReturnToRoaming, EnterGame };
std::string_view to_string(TeleportKind k);
std::optional<TeleportKind> parse_teleport_kind(std::string_view s);

struct TeleportArea {
  std::string id;
  std::string room_id;
  std::vector<Vec2> polygon;  // convex, counter-clockwise seen from +y
};

struct TeleportPoint {
  std::string id;
  std::string room_id;
  Vec3 position = Vec3::Zero();
  TeleportKind kind = TeleportKind::Plain;
  bool initially_open = true;
  std::string target_room;  // empty for Plain
};

struct TeleportGraph {
  std::vector<TeleportArea> areas;
  std::vector<TeleportPoint> points;
};

struct Spotlight {
  std::string target_exhibit_id;
  Vec3 position = Vec3::Zero();
  double cone_angle_deg = 30;
};

struct LightProbe {
  std::string exhibit_id;
  Vec3 position = Vec3::Zero();
};

struct LightingMeta {
  double ambient = 1.0;
  Vec3 directional_direction{0, -1, 0};
  double directional_intensity = 1.0;
  std::vector<Spotlight> spotlights;
  Vec3 reflection_probe = Vec3::Zero();
  std::vector<LightProbe> light_probes;
  std::set<std::string> static_ids;
};

enum class ContainerKind { Shelf, RoundTable, Box, Booth };
std::string_view to_string(ContainerKind k);
std::optional<ContainerKind> parse_container_kind(std::string_view s);

inline constexpr double kDefaultInteractionRadius = 0.5;

struct Container {
  std::string id;
  std::string label;
  ContainerKind kind = ContainerKind::Shelf;
  Vec3 position = Vec3::Zero();
  int capacity = 1;
  Theme accepts_attribute = Theme::Category;
  std::string accepts_value;
  double interaction_radius = kDefaultInteractionRadius;  // "A"
};

struct Pose {
  Vec3 position = Vec3::Zero();
  Quat rotation = Quat::Identity();
};
bool operator==(const Pose& a, const Pose& b);

struct GameItem {
  std::string exhibit_id;
  Pose initial_pose;
};

struct LevelConfig {
  int level = 1;
  std::string room_id;  // the game room
  Theme theme = Theme::Category;
  std::vector<GameItem> items;          // placeable
  std::vector<GameItem> display_items;  // present but immovable
  int required_placements = 0;
  std::vector<Container> containers;
  double pass_threshold = 1.0;
  bool threshold_strict = false;
};

struct MuseumScene {
  std::string scene_version;
  std::vector<Asset> assets;
  std::vector<Exhibit> exhibits;
  std::vector<Room> rooms;
  std::vector<Stand> stands;
  TeleportGraph teleport;
  LightingMeta lighting;
  std::vector<LevelConfig> levels;

  const Exhibit* find_exhibit(std::string_view id) const;
  const Asset* find_asset(std::string_view id) const;
  const Room* find_room(std::string_view id) const;
  const Stand* find_stand_for(std::string_view exhibit_id) const;
  const TeleportPoint* find_point(std::string_view id) const;
  const LevelConfig* find_level(int level) const;
  const Room* roaming_room(int level) const;
  const Room* game_room(int level) const;
};

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Schema violation; path is a JSON pointer into the document.
class SchemaError : public SceneError {
 public:
  SchemaError(std::string path, const std::string& what)
      : SceneError(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A reference that does not resolve; message names the id.
class LinkError : public SceneError {
 public:
  explicit LinkError(std::string id, const std::string& context)
      : SceneError("unresolved reference \"" + id + "\" in " + context), id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class InvariantError : public SceneError {
 public:
  using SceneError::SceneError;
};

}  // namespace curate::scene
