#include "curate/geometry/quadric.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace curate::geometry {

Quadric Quadric::from_plane(const Vec3& n, double d, double weight) {
  Quadric q;
  const double a = n.x(), b = n.y(), c = n.z();
  q.c_ = {a * a, a * b, a * c, a * d, b * b, b * c, b * d, c * c, c * d, d * d};
  for (auto& x : q.c_) x *= weight;
  q.weight_ = weight;
  return q;
}

double Quadric::evaluate(const Vec3& v) const {
  const double x = v.x(), y = v.y(), z = v.z();
  return c_[0] * x * x + 2 * c_[1] * x * y + 2 * c_[2] * x * z + 2 * c_[3] * x +
         c_[4] * y * y + 2 * c_[5] * y * z + 2 * c_[6] * y +
         c_[7] * z * z + 2 * c_[8] * z + c_[9];
}

Eigen::Matrix3d Quadric::linear_part() const {
  Eigen::Matrix3d m;
  m << c_[0], c_[1], c_[2],
       c_[1], c_[4], c_[5],
       c_[2], c_[5], c_[7];
  return m;
}

Eigen::Matrix4d Quadric::matrix() const {
  Eigen::Matrix4d m;
  m << c_[0], c_[1], c_[2], c_[3],
       c_[1], c_[4], c_[5], c_[6],
       c_[2], c_[5], c_[7], c_[8],
       c_[3], c_[6], c_[8], c_[9];
  return m;
}

std::optional<Vec3> Quadric::minimizer() const {
  const Eigen::Matrix3d a = linear_part();
  if (is_singular<3>(a)) return std::nullopt;
  return Vec3(a.fullPivLu().solve(-linear_term()));
}

Quadric& Quadric::operator+=(const Quadric& other) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  weight_ += other.weight_;
  return *this;
}

AttributeQuadric AttributeQuadric::from_triangle(const Vec6& p0, const Vec6& p1, const Vec6& p2,
                                                 double weight) {
  AttributeQuadric q;
  Vec6 e1 = p1 - p0;
  const double l1 = e1.norm();
  if (l1 == 0.0) return q;
  e1 /= l1;
  Vec6 e2 = (p2 - p0) - (p2 - p0).dot(e1) * e1;
  const double l2 = e2.norm();
  if (l2 == 0.0) return q;
  e2 /= l2;

  const double p0e1 = p0.dot(e1);
  const double p0e2 = p0.dot(e2);
  q.a_ = Mat6::Identity() - e1 * e1.transpose() - e2 * e2.transpose();
  q.b_ = p0e1 * e1 + p0e2 * e2 - p0;
  q.c_ = p0.dot(p0) - p0e1 * p0e1 - p0e2 * p0e2;
  q.a_ *= weight;
  q.b_ *= weight;
  q.c_ *= weight;
  q.weight_ = weight;
  return q;
}

AttributeQuadric AttributeQuadric::from_geometric(const Quadric& g) {
  AttributeQuadric q;
  q.a_.topLeftCorner<3, 3>() = g.linear_part();
  q.b_.head<3>() = g.linear_term();
  q.c_ = g.constant_term();
  q.weight_ = g.weight();
  return q;
}

double AttributeQuadric::evaluate(const Vec6& v) const {
  return v.dot(a_ * v) + 2.0 * b_.dot(v) + c_;
}

std::optional<Vec6> AttributeQuadric::minimizer() const {
  if (is_singular<6>(a_)) return std::nullopt;
  return Vec6(a_.fullPivLu().solve(-b_));
}

AttributeQuadric& AttributeQuadric::operator+=(const AttributeQuadric& other) {
  a_ += other.a_;
  b_ += other.b_;
  c_ += other.c_;
  weight_ += other.weight_;
  return *this;
}

bool is_degenerate_face(const Mesh& mesh, const Triangle& tri) {
  const Vec3& a = mesh.positions[tri[0]];
  const Vec3& b = mesh.positions[tri[1]];
  const Vec3& c = mesh.positions[tri[2]];
  const double longest = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
  if (longest == 0.0) return true;
  return (b - a).cross(c - a).norm() <= 1e-12 * longest;
}

QuadricSet compute_quadrics(const Mesh& mesh, QuadricWeighting weighting) {
  QuadricSet set;
  set.geometric.assign(mesh.vertex_count(), Quadric{});
  if (mesh.has_colors()) set.attribute.assign(mesh.vertex_count(), AttributeQuadric{});

  for (const auto& tri : mesh.triangles) {
    if (is_degenerate_face(mesh, tri)) {
      ++set.degenerate_faces_skipped;
      continue;
    }
    const Vec3 cross = face_normal_unnormalized(mesh, tri);
    const double area = 0.5 * cross.norm();
    const Vec3 n = cross.normalized();
    const double d = -n.dot(mesh.positions[tri[0]]);
    const double w = weighting == QuadricWeighting::Area ? area : 1.0;
    const Quadric q = Quadric::from_plane(n, d, w);
    for (auto v : tri) set.geometric[v] += q;

    if (mesh.has_colors()) {
      auto lift = [&](std::uint32_t v) {
        Vec6 p;
        p << mesh.positions[v], mesh.colors[v];
        return p;
      };
      const auto aq = AttributeQuadric::from_triangle(lift(tri[0]), lift(tri[1]), lift(tri[2]), w);
      for (auto v : tri) set.attribute[v] += aq;
    }
  }
  return set;
}

}  // namespace curate::geometry
