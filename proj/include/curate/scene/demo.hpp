#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "curate/geometry/mesh.hpp"
#include "curate/scene/model.hpp"

namespace curate::scene {

// A complete scene: 3 roaming rooms of 22 exhibits on circular stand layouts,
// 3 game rooms with the level configurations, lighting metadata and a
// connected teleport graph. Validates with zero findings.
MuseumScene demo_scene();

struct DemoAsset {
  std::string id;
  geometry::Mesh mesh;
};

// Procedural stand-ins for the scanned bronzes (vessels of revolution and a
// dagger-axe), colored, base at y = 0, under 0.4 m tall.
std::vector<DemoAsset> demo_assets();

// Writes scene.json and assets/<id>.ply under `dir`.
void write_demo(const std::filesystem::path& dir);

}  // namespace curate::scene
