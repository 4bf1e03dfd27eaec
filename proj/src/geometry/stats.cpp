#include "curate/geometry/stats.hpp"

#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace curate::geometry {

MeshStats mesh_stats(const Mesh& mesh) {
  MeshStats s;
  s.face_count = mesh.face_count();
  s.vertex_count = mesh.vertex_count();
  s.bbox = bounds(mesh);
  s.max_extent = s.bbox.extent().maxCoeff();

  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edge_faces;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      auto a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_faces[{a, b}];
    }
  }

  std::vector<std::uint32_t> parent(mesh.vertex_count());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> on_boundary(mesh.vertex_count(), false);
  for (const auto& [edge, count] : edge_faces) {
    if (count != 1) continue;
    on_boundary[edge.first] = on_boundary[edge.second] = true;
    parent[find(edge.first)] = find(edge.second);
  }
  for (std::uint32_t v = 0; v < mesh.vertex_count(); ++v)
    if (on_boundary[v] && find(v) == v) ++s.boundary_loop_count;
  return s;
}

}  // namespace curate::geometry
