#include "curate/scene/layout.hpp"

#include <cmath>
#include <numbers>

namespace curate::scene {

std::vector<Vec3> layout_circle(std::size_t stand_count, const Rect& room, double wall_margin) {
  if (stand_count < 1) throw LayoutError("stand_count must be at least 1");
  if (wall_margin < 0) throw LayoutError("wall_margin must be non-negative");
  const double radius = std::min(room.width, room.depth) / 2 - wall_margin;
  if (!(radius > 0)) throw LayoutError("room too small for the wall margin");

  std::vector<Vec3> out;
  out.reserve(stand_count);
  const double step = 2 * std::numbers::pi / static_cast<double>(stand_count);
  for (std::size_t i = 0; i < stand_count; ++i) {
    const double a = step * static_cast<double>(i);
    const Vec2 p = room.to_world({radius * std::cos(a), radius * std::sin(a)});
    out.emplace_back(p.x(), 0.0, p.y());
  }
  return out;
}

}  // namespace curate::scene
