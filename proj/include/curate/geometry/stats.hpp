#pragma once

#include <cstddef>

#include "curate/geometry/mesh.hpp"

namespace curate::geometry {

struct MeshStats {
  std::size_t face_count = 0;
  std::size_t vertex_count = 0;
  Bounds bbox;
  std::size_t boundary_loop_count = 0;
  double max_extent = 0.0;
};

// Boundary loops are the connected components of edges with exactly one face.
MeshStats mesh_stats(const Mesh& mesh);

}  // namespace curate::geometry
