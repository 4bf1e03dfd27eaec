#pragma once

#include <string>

#include "curate/geometry/mesh.hpp"

namespace curate::geometry {

// Encodes a single-mesh glTF 2.0 binary (.glb): float POSITION, optional
// COLOR_0 and TEXCOORD_0, uint32 indices, one node, one scene.
std::string write_glb(const Mesh& mesh);

}  // namespace curate::geometry
