#include "curate/geometry/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace curate::geometry {

void validate(const Mesh& mesh) {
  if (mesh.positions.empty()) throw EmptyMeshError();
  if (mesh.has_colors() && mesh.colors.size() != mesh.positions.size())
    throw MeshError("color count does not match vertex count");
  if (mesh.has_uvs() && mesh.uvs.size() != mesh.positions.size())
    throw MeshError("uv count does not match vertex count");

  for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
    if (!mesh.positions[i].allFinite())
      throw MeshError("vertex " + std::to_string(i) + " has a non-finite coordinate");
  }
  const auto n = mesh.positions.size();
  for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
    const auto& t = mesh.triangles[f];
    for (auto idx : t) {
      if (idx >= n)
        throw MeshError("triangle " + std::to_string(f) + " references vertex " +
                        std::to_string(idx) + " of " + std::to_string(n));
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw MeshError("triangle " + std::to_string(f) + " repeats a vertex index");
  }
}

std::size_t remove_repeated_index_triangles(Mesh& mesh) {
  const auto before = mesh.triangles.size();
  std::erase_if(mesh.triangles, [](const Triangle& t) {
    return t[0] == t[1] || t[1] == t[2] || t[0] == t[2];
  });
  return before - mesh.triangles.size();
}

Vec3 face_normal_unnormalized(const Mesh& mesh, const Triangle& tri) {
  const Vec3& a = mesh.positions[tri[0]];
  const Vec3& b = mesh.positions[tri[1]];
  const Vec3& c = mesh.positions[tri[2]];
  return (b - a).cross(c - a);
}

double face_area(const Mesh& mesh, const Triangle& tri) {
  return 0.5 * face_normal_unnormalized(mesh, tri).norm();
}

Bounds bounds(const Mesh& mesh) {
  Bounds b;
  if (mesh.positions.empty()) return b;
  b.min = b.max = mesh.positions.front();
  for (const auto& p : mesh.positions) {
    b.min = b.min.cwiseMin(p);
    b.max = b.max.cwiseMax(p);
  }
  return b;
}

}  // namespace curate::geometry
