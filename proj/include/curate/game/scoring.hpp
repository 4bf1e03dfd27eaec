#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curate/game/rules.hpp"

namespace curate::game {

// Nearest container whose center is closer than its radius A (or
// `override_radius` for every container). Equal distances go to the
// lexicographically smallest id.
std::optional<std::string> assign_container(const Vec3& position, const std::vector<Container>& containers,
                                            std::optional<double> override_radius = std::nullopt);

struct ItemOutcome {
  std::optional<std::string> assigned_container;
  bool correct = false;
  bool over_capacity = false;  // assigned, but beyond the container's nearest `capacity`

  bool operator==(const ItemOutcome&) const = default;
};

struct AccuracyResult {
  std::map<std::string, ItemOutcome> per_item;
  int correct_count = 0;
  int required_placements = 0;
  double accuracy = 0;
  bool passed = false;

  bool operator==(const AccuracyResult&) const = default;
};

// Pure scoring of one level. Items missing from `placements` are unplaced and
// incorrect. Over a container's capacity only the nearest items (ties by id)
// count.
AccuracyResult score(const MuseumScene& scene, const LevelConfig& level,
                     const std::map<std::string, Pose>& placements);

}  // namespace curate::game
