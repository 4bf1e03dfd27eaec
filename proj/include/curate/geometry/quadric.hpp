#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "curate/geometry/mesh.hpp"

namespace curate::geometry {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Symmetric 4x4 form Q over homogeneous points; error(v) = [v,1]^T Q [v,1].
// Stored as the 10 upper-triangle coefficients
//   (aa, ab, ac, ad, bb, bc, bd, cc, cd, dd).
class Quadric {
 public:
  Quadric() = default;

  // Plane n.x + d = 0 with |n| = 1, scaled by `weight`.
  static Quadric from_plane(const Vec3& unit_normal, double offset, double weight = 1.0);

  const std::array<double, 10>& coefficients() const { return c_; }
  double weight() const { return weight_; }

  double evaluate(const Vec3& v) const;
  Eigen::Matrix3d linear_part() const;
  Vec3 linear_term() const { return {c_[3], c_[6], c_[8]}; }
  double constant_term() const { return c_[9]; }
  Eigen::Matrix4d matrix() const;

  // Point minimizing the form, or nullopt when the 3x3 block is singular
  // (|det| below 1e-12 relative to the block's scale).
  std::optional<Vec3> minimizer() const;

  Quadric& operator+=(const Quadric& other);
  friend Quadric operator+(Quadric lhs, const Quadric& rhs) { return lhs += rhs; }

 private:
  std::array<double, 10> c_{};
  double weight_ = 0.0;
};

// Position+RGB quadric for colored meshes: error(v) = v^T A v + 2 b^T v + c
// on v = (x, y, z, r, g, b), built from the triangle's 2-plane in R^6.
class AttributeQuadric {
 public:
  AttributeQuadric() { a_.setZero(); b_.setZero(); }

  static AttributeQuadric from_triangle(const Vec6& p0, const Vec6& p1, const Vec6& p2, double weight);
  // Embeds a purely geometric quadric (color block zero).
  static AttributeQuadric from_geometric(const Quadric& q);

  double evaluate(const Vec6& v) const;
  std::optional<Vec6> minimizer() const;

  const Mat6& a() const { return a_; }
  const Vec6& b() const { return b_; }
  double c() const { return c_; }
  double weight() const { return weight_; }

  AttributeQuadric& operator+=(const AttributeQuadric& other);
  friend AttributeQuadric operator+(AttributeQuadric lhs, const AttributeQuadric& rhs) { return lhs += rhs; }

 private:
  Mat6 a_;
  Vec6 b_;
  double c_ = 0.0;
  double weight_ = 0.0;
};

enum class QuadricWeighting { Area, Uniform };

struct QuadricSet {
  std::vector<Quadric> geometric;
  // Filled only when the mesh carries vertex colors.
  std::vector<AttributeQuadric> attribute;
  std::size_t degenerate_faces_skipped = 0;
};

// Per-vertex sums of the incident face quadrics.
QuadricSet compute_quadrics(const Mesh& mesh, QuadricWeighting weighting = QuadricWeighting::Area);

// True when the face's area is negligible next to its longest edge squared.
bool is_degenerate_face(const Mesh& mesh, const Triangle& tri);

// Relative singularity test shared by the minimizers.
template <int N>
bool is_singular(const Eigen::Matrix<double, N, N>& a) {
  const double scale = a.trace() / N;
  if (!(scale > 0.0)) return true;
  double s = 1.0;
  for (int i = 0; i < N; ++i) s *= scale;
  return std::abs(a.determinant()) < 1e-12 * s;
}

}  // namespace curate::geometry
