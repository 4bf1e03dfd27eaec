#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "curate/scene/model.hpp"

namespace curate::scene {

// Finding codes, one per rule.
namespace rule {
inline constexpr const char* kRoomCount = "room-count";
inline constexpr const char* kRoamingRoomSize = "roaming-room-size";
inline constexpr const char* kExhibitLevel = "exhibit-level";
inline constexpr const char* kEmptyKnowledge = "empty-knowledge";
inline constexpr const char* kMissingStand = "missing-stand";
inline constexpr const char* kStandHeight = "stand-height";
inline constexpr const char* kStandOutsideRoom = "stand-outside-room";
inline constexpr const char* kPanelHeight = "panel-height";
inline constexpr const char* kPanelDistance = "panel-distance";
inline constexpr const char* kMissingSpotlight = "missing-spotlight";
inline constexpr const char* kDuplicateSpotlight = "duplicate-spotlight";
inline constexpr const char* kMissingLightProbe = "missing-light-probe";
inline constexpr const char* kExhibitStatic = "exhibit-static";
inline constexpr const char* kUnreachablePoint = "unreachable-teleport-point";
inline constexpr const char* kSpawnOutsideArea = "spawn-outside-area";
inline constexpr const char* kTeleportDisconnected = "teleport-disconnected";
}  // namespace rule

struct Finding {
  std::string code;
  std::string subject;  // offending id, may be empty
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool ok() const { return findings.empty(); }
  std::set<std::string> codes() const;
};

struct ValidationLimits {
  double stand_min_height = 0.6;
  double stand_max_height = 1.4;
  double panel_height_tolerance = 0.3;
  double panel_max_distance = 2.0;  // horizontal, button to stand
};

ValidationReport validate_scene(const MuseumScene& scene, const ValidationLimits& limits = {});

nlohmann::json to_json(const ValidationReport& report);

// Closed containment test for a convex polygon in either winding.
bool polygon_contains(const std::vector<Vec2>& polygon, const Vec2& p, double eps = 1e-9);

// Separating-axis test; touching polygons intersect.
bool polygons_intersect(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double eps = 1e-9);

}  // namespace curate::scene
