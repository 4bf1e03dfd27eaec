#include "fixtures.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace curate::testing {

Mesh planar_grid(int n, double size) {
  Mesh m;
  m.name = "grid";
  const double h = size / n;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.positions.emplace_back(i * h, 0.0, j * h);
  auto id = [n](int i, int j) { return static_cast<std::uint32_t>(j * (n + 1) + i); };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Counter-clockwise seen from +y.
      m.triangles.push_back({id(i, j), id(i, j + 1), id(i + 1, j)});
      m.triangles.push_back({id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)});
    }
  }
  return m;
}

Mesh unit_cube() {
  Mesh m;
  m.name = "cube";
  for (int i = 0; i < 8; ++i) m.positions.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  m.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                 {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  return m;
}

Mesh icosphere(int level, double radius) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh m;
  m.name = "icosphere";
  m.positions = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                 {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : m.positions) p.normalize();
  m.triangles = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                 {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
                 {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const auto idx = static_cast<std::uint32_t>(m.positions.size());
      m.positions.push_back(((m.positions[a] + m.positions[b]) * 0.5).normalized());
      mid.emplace(key, idx);
      return idx;
    };
    std::vector<geometry::Triangle> next;
    for (const auto& f : m.triangles) {
      const auto a = midpoint(f[0], f[1]);
      const auto b = midpoint(f[1], f[2]);
      const auto c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    m.triangles = std::move(next);
  }
  for (auto& p : m.positions) p *= radius;
  return m;
}

Mesh random_blob(std::mt19937& rng, int level) {
  Mesh m = icosphere(level);
  std::uniform_real_distribution<double> bump(0.8, 1.2);
  for (auto& p : m.positions) p *= bump(rng);
  return m;
}

Mesh vessel(int segments, double radius, double height) {
  Mesh m;
  m.name = "vessel";
  m.positions.emplace_back(0.0, 0.0, 0.0);  // base center
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    m.positions.emplace_back(radius * std::cos(a), 0.0, radius * std::sin(a));
  }
  // Ring of the belly at mid height, then apex.
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    m.positions.emplace_back(0.8 * radius * std::cos(a), 0.6 * height, 0.8 * radius * std::sin(a));
  }
  m.positions.emplace_back(0.0, height, 0.0);
  const auto apex = static_cast<std::uint32_t>(m.positions.size() - 1);
  for (int i = 0; i < segments; ++i) {
    const auto a = static_cast<std::uint32_t>(1 + i);
    const auto b = static_cast<std::uint32_t>(1 + (i + 1) % segments);
    const auto c = static_cast<std::uint32_t>(1 + segments + i);
    const auto d = static_cast<std::uint32_t>(1 + segments + (i + 1) % segments);
    m.triangles.push_back({0, a, b});
    m.triangles.push_back({a, c, b});
    m.triangles.push_back({b, c, d});
    m.triangles.push_back({c, apex, d});
  }
  return m;
}

}  // namespace curate::testing
