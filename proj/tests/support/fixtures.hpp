#pragma once

#include <cstdint>
#include <random>

#include "curate/geometry/mesh.hpp"

namespace curate::testing {

using geometry::Mesh;
using geometry::Vec3;

// (n x n) quads split into 2n^2 triangles on the plane y = 0, spanning [0,size]^2.
Mesh planar_grid(int n, double size = 1.0);

// Closed axis-aligned cube [0,1]^3, 8 vertices, 12 outward-facing triangles.
Mesh unit_cube();

// Subdivided icosahedron projected onto a sphere: 20 * 4^level faces.
Mesh icosphere(int level, double radius = 1.0);

// Closed convex-ish blob: icosphere with random radial bumps.
Mesh random_blob(std::mt19937& rng, int level = 2);

// Cone-like vessel standing on a flat disk base at y = 0 with an apex on top.
Mesh vessel(int segments = 24, double radius = 0.1, double height = 0.3);

}  // namespace curate::testing
