#pragma once

#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "curate/geometry/mesh.hpp"

namespace curate::geometry {

// Rigid fix applied as p' = rotation * p + translation.
struct OrientationFix {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();
  // Fitted base-plane normal in the input frame, pointing from the base into the body.
  Vec3 bottom_normal_before = Vec3::UnitY();
};

class OrientationError : public MeshError {
 public:
  using MeshError::MeshError;
};

// Fraction of the height extent treated as the resting base.
inline constexpr double kBottomBandFraction = 0.05;

// Fits a plane to the lowest band of vertices and rotates the mesh so that
// plane's inward normal becomes +y, then translates the base to y = 0.
//
// The initial down axis is the one normal to the smallest bounding-box face;
// of its two ends, the one whose band spans the larger convex area is taken as
// the base (ties go to the negative end). One refinement pass re-selects the
// band along the fitted normal.
std::pair<Mesh, OrientationFix> normalize_orientation(const Mesh& mesh);

Mesh apply(const Mesh& mesh, const OrientationFix& fix);

}  // namespace curate::geometry
