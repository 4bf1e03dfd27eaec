#include "curate/scene/validate.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace curate::scene {
namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 floor_of(const Vec3& p) { return {p.x(), p.z()}; }

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

class Collector {
 public:
  void add(const char* code, std::string subject, std::string message) {
    report.findings.push_back({code, std::move(subject), std::move(message)});
  }
  ValidationReport report;
};

void check_rooms(const MuseumScene& s, Collector& out) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& r : s.rooms) ++count[{static_cast<int>(r.kind), r.level}];
  bool good = s.rooms.size() == 2 * kLevelCount;
  for (int level = 1; level <= kLevelCount; ++level)
    for (RoomKind k : {RoomKind::Roaming, RoomKind::Game})
      good = good && count[{static_cast<int>(k), level}] == 1;
  if (!good) out.add(rule::kRoomCount, "", "expected one roaming and one game room per level");

  for (const auto& r : s.rooms) {
    if (r.kind != RoomKind::Roaming) continue;
    if (r.exhibit_ids.size() != kExhibitsPerRoamingRoom)
      out.add(rule::kRoamingRoomSize, r.id,
              "holds " + std::to_string(r.exhibit_ids.size()) + " exhibits, expected 22");
    for (const auto& id : r.exhibit_ids) {
      const Exhibit* e = s.find_exhibit(id);
      if (e && e->level != r.level)
        out.add(rule::kExhibitLevel, id,
                "level " + std::to_string(e->level) + " exhibit in level " +
                    std::to_string(r.level) + " room");
      if (!s.find_stand_for(id)) out.add(rule::kMissingStand, id, "exhibit has no stand");
    }
  }
  for (const auto& e : s.exhibits)
    if (e.knowledge_text.empty()) out.add(rule::kEmptyKnowledge, e.id, "knowledge text is empty");
}

void check_stands(const MuseumScene& s, const ValidationLimits& lim, Collector& out) {
  for (const auto& st : s.stands) {
    if (st.height < lim.stand_min_height || st.height > lim.stand_max_height)
      out.add(rule::kStandHeight, st.id, "height " + std::to_string(st.height) + " m outside band");
    if (const Room* r = s.find_room(st.room_id); r && !r->floor.contains(floor_of(st.position)))
      out.add(rule::kStandOutsideRoom, st.id, "not inside room " + r->id);
    if (std::abs(st.panel.text_height - st.height) > lim.panel_height_tolerance)
      out.add(rule::kPanelHeight, st.id, "panel text not level with the exhibit");
    const double d = (floor_of(st.panel.button_position) - floor_of(st.position)).norm();
    if (d > lim.panel_max_distance)
      out.add(rule::kPanelDistance, st.id, "panel button " + std::to_string(d) + " m from stand");
  }
}

void check_lighting(const MuseumScene& s, Collector& out) {
  std::map<std::string, int> spots, probes;
  for (const auto& sp : s.lighting.spotlights) ++spots[sp.target_exhibit_id];
  for (const auto& lp : s.lighting.light_probes) ++probes[lp.exhibit_id];
  for (const auto& e : s.exhibits) {
    const int n = spots[e.id];
    if (n == 0) out.add(rule::kMissingSpotlight, e.id, "missing spotlight");
    if (n > 1) out.add(rule::kDuplicateSpotlight, e.id, std::to_string(n) + " spotlights");
    if (probes[e.id] == 0) out.add(rule::kMissingLightProbe, e.id, "no light probe");
    if (s.lighting.static_ids.count(e.id))
      out.add(rule::kExhibitStatic, e.id, "exhibits are dynamic and must not be static");
  }
}

void check_teleport(const MuseumScene& s, Collector& out) {
  const auto& areas = s.teleport.areas;
  const auto& points = s.teleport.points;

  auto containing = [&](const std::string& room, const Vec3& p) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < areas.size(); ++i)
      if (areas[i].room_id == room && polygon_contains(areas[i].polygon, floor_of(p))) hits.push_back(i);
    return hits;
  };

  // Nodes are areas. Points join the areas holding them and, for transition
  // kinds, every area of the target room.
  DisjointSet ds(areas.size());
  for (std::size_t i = 0; i < areas.size(); ++i)
    for (std::size_t j = i + 1; j < areas.size(); ++j)
      if (areas[i].room_id == areas[j].room_id && polygons_intersect(areas[i].polygon, areas[j].polygon))
        ds.unite(i, j);

  for (const auto& p : points) {
    const auto here = containing(p.room_id, p.position);
    if (here.empty()) {
      out.add(rule::kUnreachablePoint, p.id, "unreachable teleport point: outside every area of " + p.room_id);
      continue;
    }
    for (std::size_t k = 1; k < here.size(); ++k) ds.unite(here[0], here[k]);
    if (p.target_room.empty()) continue;
    for (std::size_t a = 0; a < areas.size(); ++a)
      if (areas[a].room_id == p.target_room) ds.unite(here[0], a);
  }

  for (const auto& r : s.rooms)
    if (containing(r.id, r.spawn).empty())
      out.add(rule::kSpawnOutsideArea, r.id, "spawn is outside every teleport area");

  if (!areas.empty()) {
    const std::size_t root = ds.find(0);
    for (std::size_t i = 1; i < areas.size(); ++i)
      if (ds.find(i) != root) {
        out.add(rule::kTeleportDisconnected, areas[i].id, "not reachable from " + areas[0].id);
        break;
      }
  }
}

}  // namespace

std::set<std::string> ValidationReport::codes() const {
  std::set<std::string> c;
  for (const auto& f : findings) c.insert(f.code);
  return c;
}

bool polygon_contains(const std::vector<Vec2>& poly, const Vec2& p, double eps) {
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const Vec2 e = b - a;
    const double c = cross2(e, p - a) / std::max(e.norm(), 1e-300);
    if (c > eps) pos = true;
    if (c < -eps) neg = true;
    if (pos && neg) return false;
  }
  return true;
}

bool polygons_intersect(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double eps) {
  auto separated_along_edges_of = [&](const std::vector<Vec2>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2 e = p[(i + 1) % p.size()] - p[i];
      const Vec2 axis{-e.y(), e.x()};
      double amin = INFINITY, amax = -INFINITY, bmin = INFINITY, bmax = -INFINITY;
      for (const auto& v : a) amin = std::min(amin, axis.dot(v)), amax = std::max(amax, axis.dot(v));
      for (const auto& v : b) bmin = std::min(bmin, axis.dot(v)), bmax = std::max(bmax, axis.dot(v));
      const double tol = eps * axis.norm();
      if (amax < bmin - tol || bmax < amin - tol) return true;
    }
    return false;
  };
  return !separated_along_edges_of(a) && !separated_along_edges_of(b);
}

ValidationReport validate_scene(const MuseumScene& scene, const ValidationLimits& limits) {
  Collector out;
  check_rooms(scene, out);
  check_stands(scene, limits, out);
  check_lighting(scene, out);
  check_teleport(scene, out);
  return std::move(out.report);
}

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : report.findings)
    findings.push_back({{"code", f.code}, {"subject", f.subject}, {"message", f.message}});
  return {{"ok", report.ok()}, {"finding_count", report.findings.size()}, {"findings", findings}};
}

}  // namespace curate::scene
