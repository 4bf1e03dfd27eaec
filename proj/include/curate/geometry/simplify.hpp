#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "curate/geometry/mesh.hpp"

namespace curate::geometry {

inline constexpr std::size_t kDefaultTargetFaces = 20000;

struct SimplifyOptions {
  std::size_t target_face_count = kDefaultTargetFaces;
  // Adds heavily weighted planes perpendicular to open boundaries.
  bool preserve_boundary = false;
  // Upper bound on a collapse's area-normalized quadric error (m^2).
  std::optional<double> max_error;
  // Called with the face count after every collapse.
  std::function<void(std::size_t)> on_collapse;
};

struct SimplifyReport {
  std::size_t input_faces = 0;
  std::size_t output_faces = 0;
  std::size_t collapses = 0;
  // Candidate collapses refused because they would break manifoldness
  // (non-manifold edge, failed link condition, boundary pinch, duplicate face).
  std::size_t skipped_edges = 0;
  // Candidates refused because a neighbouring face would flip or degenerate.
  std::size_t rejected_flips = 0;
  std::size_t rejected_max_error = 0;
  std::size_t degenerate_faces = 0;
};

struct SimplifyResult {
  Mesh mesh;
  SimplifyReport report;
};

// Iterative edge collapse in ascending quadric-error order. Colored meshes use
// position+RGB quadrics; uvs are copied from the nearer source vertex.
// Throws std::invalid_argument when target_face_count < 2.
SimplifyResult simplify(const Mesh& mesh, const SimplifyOptions& options);

}  // namespace curate::geometry
