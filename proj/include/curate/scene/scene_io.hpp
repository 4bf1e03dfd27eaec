#pragma once

#include <filesystem>
#include <string_view>

#include "json.hpp"

#include "curate/scene/model.hpp"

namespace curate::scene {

// Parses, links and checks the load-time invariants (room counts, 22 exhibits
// per roaming room, unique ids). Throws SchemaError, LinkError or
// InvariantError. Layout and lighting rules are left to validate_scene.
MuseumScene load_scene(std::string_view document);
MuseumScene load_scene_json(const nlohmann::json& document);
MuseumScene load_scene_file(const std::filesystem::path& path);

nlohmann::json to_json(const MuseumScene& scene);
std::string serialize(const MuseumScene& scene);

// Shared with the game and sessionlog codecs.
nlohmann::json to_json(const Vec3& v);
nlohmann::json to_json(const Pose& p);
Vec3 vec3_from_json(const nlohmann::json& j, const std::string& path);
Pose pose_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json to_json(const LevelConfig& level);
nlohmann::json to_json(const Container& c);

}  // namespace curate::scene
