#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace curate::geometry {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Triangle = std::array<std::uint32_t, 3>;

// Indexed triangle surface in meters, +y up.
//
// `colors` and `uvs` are either empty or hold exactly one entry per vertex.
// Colors are linear RGB in [0,1].
struct Mesh {
  std::string name;
  std::vector<Vec3> positions;
  std::vector<Vec3> colors;
  std::vector<Vec2> uvs;
  std::vector<Triangle> triangles;

  std::size_t vertex_count() const { return positions.size(); }
  std::size_t face_count() const { return triangles.size(); }
  bool has_colors() const { return !colors.empty(); }
  bool has_uvs() const { return !uvs.empty(); }
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyMeshError : public MeshError {
 public:
  EmptyMeshError() : MeshError("mesh has no vertices") {}
};

// Throws MeshError when an index is out of range, a coordinate is not finite,
// a triangle repeats a vertex, or attribute arrays are mis-sized.
void validate(const Mesh& mesh);

// Drops triangles that repeat a vertex index. Returns the number removed.
std::size_t remove_repeated_index_triangles(Mesh& mesh);

Vec3 face_normal_unnormalized(const Mesh& mesh, const Triangle& tri);
double face_area(const Mesh& mesh, const Triangle& tri);

struct Bounds {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();
  Vec3 extent() const { return max - min; }
};

Bounds bounds(const Mesh& mesh);

}  // namespace curate::geometry
