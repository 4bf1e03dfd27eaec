#include "curate/game/scoring.hpp"

#include <algorithm>
#include <tuple>

namespace curate::game {

std::optional<std::string> assign_container(const Vec3& position, const std::vector<Container>& containers,
                                            std::optional<double> override_radius) {
  const Container* best = nullptr;
  double best_d = 0;
  for (const auto& c : containers) {
    const double d = (position - c.position).norm();
    const double radius = override_radius.value_or(c.interaction_radius);
    if (!(d < radius)) continue;
    if (!best || d < best_d || (d == best_d && c.id < best->id)) {
      best = &c;
      best_d = d;
    }
  }
  if (!best) return std::nullopt;
  return best->id;
}

AccuracyResult score(const MuseumScene& scene, const LevelConfig& level,
                     const std::map<std::string, Pose>& placements) {
  AccuracyResult out;
  out.required_placements = level.required_placements;

  // container id -> (distance, item id) of the items assigned to it
  std::map<std::string, std::vector<std::pair<double, std::string>>> claims;
  for (const auto& item : level.items) {
    ItemOutcome& o = out.per_item[item.exhibit_id];
    auto it = placements.find(item.exhibit_id);
    if (it == placements.end()) continue;
    o.assigned_container = assign_container(it->second.position, level.containers);
    if (!o.assigned_container) continue;
    const auto c = std::find_if(level.containers.begin(), level.containers.end(),
                                [&](const Container& x) { return x.id == *o.assigned_container; });
    claims[c->id].emplace_back((it->second.position - c->position).norm(), item.exhibit_id);
  }

  for (auto& [container_id, list] : claims) {
    const auto c = std::find_if(level.containers.begin(), level.containers.end(),
                                [&](const Container& x) { return x.id == container_id; });
    std::sort(list.begin(), list.end());
    for (std::size_t rank = 0; rank < list.size(); ++rank) {
      ItemOutcome& o = out.per_item[list[rank].second];
      if (rank >= static_cast<std::size_t>(c->capacity)) {
        o.over_capacity = true;
        continue;
      }
      const scene::Exhibit* e = scene.find_exhibit(list[rank].second);
      o.correct = e && e->attribute(c->accepts_attribute) == c->accepts_value;
      out.correct_count += o.correct;
    }
  }

  out.accuracy = level.required_placements > 0
                     ? static_cast<double>(out.correct_count) / level.required_placements
                     : 0.0;
  out.passed = passes(out.correct_count, level.required_placements, level.pass_threshold,
                      level.threshold_strict);
  return out;
}

}  // namespace curate::game
