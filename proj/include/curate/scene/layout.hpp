#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "curate/scene/model.hpp"

namespace curate::scene {

class LayoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stands on the circle inscribed in `room` shrunk by `wall_margin`, equally
// spaced, the first on the room's local +x axis. Floor points (y = 0).
std::vector<Vec3> layout_circle(std::size_t stand_count, const Rect& room, double wall_margin);

}  // namespace curate::scene
