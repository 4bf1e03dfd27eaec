#include "curate/geometry/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace curate::geometry {
namespace {

struct PlaneFit {
  Vec3 centroid;
  Vec3 normal;  // oriented against `down`
  double hull_area = 0.0;
};

std::vector<Vec3> band_points(const Mesh& mesh, const Vec3& down) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : mesh.positions) {
    const double h = -down.dot(p);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const double limit = lo + kBottomBandFraction * (hi - lo);
  std::vector<Vec3> out;
  for (const auto& p : mesh.positions)
    if (-down.dot(p) <= limit) out.push_back(p);
  return out;
}

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Monotone-chain hull area of points projected onto the plane normal to `axis`.
double projected_hull_area(const std::vector<Vec3>& pts, const Vec3& axis) {
  Vec3 t1 = axis.unitOrthogonal();
  Vec3 t2 = axis.cross(t1);
  std::vector<Vec2> p;
  p.reserve(pts.size());
  for (const auto& q : pts) p.emplace_back(q.dot(t1), q.dot(t2));
  std::sort(p.begin(), p.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  if (p.size() < 3) return 0.0;
  std::vector<Vec2> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);
  double area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    area += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(area);
}

std::optional<PlaneFit> fit_band(const Mesh& mesh, const Vec3& down) {
  const auto pts = band_points(mesh, down);
  if (pts.size() < 3) return std::nullopt;
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) cov += (p - centroid) * (p - centroid).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const auto& values = eig.eigenvalues();
  // Collinear or coincident band: no plane.
  if (values(1) <= 1e-12 * std::max(values(2), 1e-300)) return std::nullopt;
  Vec3 n = eig.eigenvectors().col(0).normalized();
  if (n.dot(down) > 0) n = -n;
  PlaneFit fit{centroid, n, projected_hull_area(pts, n)};
  return fit;
}

}  // namespace

Mesh apply(const Mesh& mesh, const OrientationFix& fix) {
  Mesh out = mesh;
  for (auto& p : out.positions) p = fix.rotation * p + fix.translation;
  return out;
}

std::pair<Mesh, OrientationFix> normalize_orientation(const Mesh& mesh) {
  if (mesh.positions.empty()) throw EmptyMeshError();

  const Vec3 ext = bounds(mesh).extent();
  // Face areas of the box normal to x, y, z; ties prefer y, then x, then z.
  const double areas[3] = {ext.y() * ext.z(), ext.x() * ext.z(), ext.x() * ext.y()};
  int axis = 1;
  for (int a : {0, 2})
    if (areas[a] < areas[axis] * (1.0 - 1e-9)) axis = a;

  Vec3 down = Vec3::Zero();
  down[axis] = -1.0;
  auto low = fit_band(mesh, down);
  auto high = fit_band(mesh, -down);
  if (!low && !high) throw OrientationError("fewer than 3 non-collinear vertices in the bottom band");
  std::optional<PlaneFit> fit;
  if (low && (!high || low->hull_area >= high->hull_area * (1.0 - 1e-9))) {
    fit = low;
  } else {
    fit = high;
    down = -down;
  }

  // One refinement pass along the fitted normal.
  if (auto refined = fit_band(mesh, -fit->normal)) fit = refined;

  OrientationFix fix;
  fix.bottom_normal_before = fit->normal;
  fix.rotation = Eigen::Quaterniond::FromTwoVectors(fit->normal, Vec3::UnitY()).toRotationMatrix();
  const Vec3 base = fix.rotation * fit->centroid;
  fix.translation = Vec3(0.0, -base.y(), 0.0);
  return {apply(mesh, fix), fix};
}

}  // namespace curate::geometry
