#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"

#include "curate/scene/demo.hpp"
#include "curate/scene/layout.hpp"
#include "curate/scene/scene_io.hpp"
#include "curate/scene/validate.hpp"

using namespace curate::scene;
using nlohmann::json;

namespace {

const MuseumScene& demo() {
  static const MuseumScene s = demo_scene();
  return s;
}

double angle_of(const Vec3& p, const Rect& r) {
  const Vec2 l = r.to_local({p.x(), p.z()});
  return std::atan2(l.y(), l.x());
}

}  // namespace

TEST_CASE("demo scene loads with three roaming and three game rooms") {
  const MuseumScene s = load_scene(serialize(demo()));
  int roaming = 0, game = 0;
  for (const auto& r : s.rooms) (r.kind == RoomKind::Roaming ? roaming : game)++;
  CHECK(roaming == 3);
  CHECK(game == 3);
  CHECK(s.exhibits.size() == 66);
  CHECK(s.levels.size() == 3);
}

TEST_CASE("serialize then load is the identity") {
  const std::string once = serialize(demo());
  const MuseumScene back = load_scene(once);
  CHECK(serialize(back) == once);
  CHECK(back.stands[5].position == demo().stands[5].position);
  CHECK(back.levels[1].items[3].initial_pose == demo().levels[1].items[3].initial_pose);
}

TEST_CASE("committed demo document matches the generator") {
  const MuseumScene s = load_scene_file(std::string(CURATE_DATA_DIR) + "/demo/scene.json");
  CHECK(serialize(s) == serialize(demo()));
}

TEST_CASE("stand pointing at a missing exhibit is a link error naming it") {
  json j = to_json(demo());
  j["stands"][0]["exhibit"] = "ding_07";
  try {
    load_scene_json(j);
    FAIL("expected LinkError");
  } catch (const LinkError& e) {
    CHECK(e.id() == "ding_07");
    CHECK(std::string(e.what()).find("ding_07") != std::string::npos);
  }
}

TEST_CASE("other dangling references") {
  SUBCASE("asset") {
    json j = to_json(demo());
    j["exhibits"][3]["mesh_asset"] = "asset_missing";
    CHECK_THROWS_AS(load_scene_json(j), LinkError);
  }
  SUBCASE("teleport target room") {
    json j = to_json(demo());
    j["teleport"]["points"][2]["target_room"] = "nowhere";
    CHECK_THROWS_AS(load_scene_json(j), LinkError);
  }
  SUBCASE("game item") {
    json j = to_json(demo());
    j["levels"][0]["items"][0]["exhibit"] = "gone";
    CHECK_THROWS_AS(load_scene_json(j), LinkError);
  }
}

TEST_CASE("roaming room with 21 exhibits violates the room invariant") {
  json j = to_json(demo());
  j["rooms"][0]["exhibits"].erase(0);
  CHECK_THROWS_AS(load_scene_json(j), InvariantError);
}

TEST_CASE("schema errors carry a JSON path") {
  json j = to_json(demo());
  j["stands"][4]["height"] = "tall";
  try {
    load_scene_json(j);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.path() == "/stands/4/height");
  }
  json k = to_json(demo());
  k["exhibits"][2].erase("category");
  CHECK_THROWS_WITH_AS(load_scene_json(k), doctest::Contains("/exhibits/2/category"), SchemaError);
  CHECK_THROWS_AS(load_scene("{ not json"), SchemaError);
}

TEST_CASE("duplicate exhibit id is rejected") {
  json j = to_json(demo());
  j["exhibits"][1]["id"] = j["exhibits"][0]["id"];
  CHECK_THROWS_AS(load_scene_json(j), InvariantError);
}

TEST_CASE("demo scene validates clean") {
  const auto report = validate_scene(demo());
  for (const auto& f : report.findings) INFO(f.code << " " << f.subject << " " << f.message);
  CHECK(report.ok());
}

TEST_CASE("breaking exactly one rule reports exactly that rule") {
  struct Mutation {
    const char* expected;
    std::function<void(MuseumScene&)> apply;
  };
  const std::vector<Mutation> mutations{
      {rule::kMissingSpotlight, [](MuseumScene& s) { s.lighting.spotlights.erase(s.lighting.spotlights.begin() + 7); }},
      {rule::kDuplicateSpotlight, [](MuseumScene& s) { s.lighting.spotlights.push_back(s.lighting.spotlights[3]); }},
      {rule::kMissingLightProbe, [](MuseumScene& s) { s.lighting.light_probes.erase(s.lighting.light_probes.begin()); }},
      {rule::kExhibitStatic, [](MuseumScene& s) { s.lighting.static_ids.insert(s.exhibits[10].id); }},
      {rule::kStandHeight, [](MuseumScene& s) { s.stands[2].height = s.stands[2].panel.text_height = 1.45; }},
      {rule::kPanelHeight, [](MuseumScene& s) { s.stands[2].panel.text_height = 1.35; }},
      {rule::kPanelDistance, [](MuseumScene& s) { s.stands[2].panel.button_position += Vec3(0, 0, 0.1) + 2.5 * (s.stands[2].panel.button_position - s.stands[2].position - Vec3(0, 1.0, 0)).normalized(); }},
      {rule::kStandOutsideRoom, [](MuseumScene& s) { s.stands[0].position.x() += 25; s.stands[0].panel.button_position.x() += 25; }},
      {rule::kUnreachablePoint, [](MuseumScene& s) {
         for (auto& p : s.teleport.points)
           if (p.id == "roam_1_north") p.position.z() += 30;
       }},
      {rule::kSpawnOutsideArea, [](MuseumScene& s) { s.rooms[1].spawn.x() += 50; }},
      {rule::kTeleportDisconnected, [](MuseumScene& s) {
         std::erase_if(s.teleport.points, [](const TeleportPoint& p) { return p.id == "enter_game_3" || p.id == "return_3"; });
       }},
      {rule::kRoamingRoomSize, [](MuseumScene& s) { s.rooms[0].exhibit_ids.pop_back(); }},
      {rule::kExhibitLevel, [](MuseumScene& s) { s.exhibits[4].level = 2; }},
      {rule::kEmptyKnowledge, [](MuseumScene& s) { s.exhibits[4].knowledge_text.clear(); }},
      {rule::kMissingStand, [](MuseumScene& s) { s.stands.erase(s.stands.begin() + 9); }},
      {rule::kRoomCount, [](MuseumScene& s) { s.rooms.back().level = 2; }},
  };
  for (const auto& m : mutations) {
    MuseumScene s = demo();
    m.apply(s);
    const auto codes = validate_scene(s).codes();
    INFO("mutation " << m.expected);
    CHECK(codes == std::set<std::string>{m.expected});
  }
}

TEST_CASE("missing spotlight finding text") {
  MuseumScene s = demo();
  const std::string victim = s.lighting.spotlights[0].target_exhibit_id;
  s.lighting.spotlights.erase(s.lighting.spotlights.begin());
  const auto r = validate_scene(s);
  REQUIRE(r.findings.size() == 1);
  CHECK(r.findings[0].subject == victim);
  CHECK(r.findings[0].message == "missing spotlight");
}

TEST_CASE("polygon helpers") {
  const std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<Vec2> cw{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  CHECK(polygon_contains(sq, {0.5, 0.5}));
  CHECK(polygon_contains(cw, {0.5, 0.5}));
  CHECK(polygon_contains(sq, {1.0, 0.3}));  // on the boundary
  CHECK_FALSE(polygon_contains(sq, {1.01, 0.3}));
  const std::vector<Vec2> touching{{1, 0}, {2, 0}, {2, 1}, {1, 1}};
  const std::vector<Vec2> apart{{1.1, 0}, {2, 0}, {2, 1}, {1.1, 1}};
  CHECK(polygons_intersect(sq, touching));
  CHECK_FALSE(polygons_intersect(sq, apart));
}

TEST_CASE("layout: 4 stands in a 10 m room with 1 m margin") {
  const Rect room{{0, 0}, 10, 10, 0};
  const auto p = layout_circle(4, room, 1.0);
  REQUIRE(p.size() == 4);
  const Vec3 expected[] = {{4, 0, 0}, {0, 0, 4}, {-4, 0, 0}, {0, 0, -4}};
  for (int i = 0; i < 4; ++i) CHECK((p[i] - expected[i]).norm() < 1e-12);
}

TEST_CASE("layout: 22 stands are equally spaced") {
  const Rect room{{3, -2}, 20, 20, 0.3};
  const auto p = layout_circle(22, room, 1.5);
  REQUIRE(p.size() == 22);
  const double step = 2 * std::numbers::pi / 22;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec3& a = p[i];
    const Vec3& b = p[(i + 1) % p.size()];
    double d = angle_of(b, room) - angle_of(a, room);
    while (d < 0) d += 2 * std::numbers::pi;
    CHECK(std::abs(d - step) < 1e-6);
    CHECK(std::abs((Vec2(a.x(), a.z()) - room.center).norm() - 8.5) < 1e-9);
  }
}

TEST_CASE("layout: single stand and infeasible rooms") {
  const auto one = layout_circle(1, Rect{{0, 0}, 6, 8, 0}, 1.0);
  REQUIRE(one.size() == 1);
  CHECK((one[0] - Vec3(2, 0, 0)).norm() < 1e-12);
  CHECK_THROWS_AS(layout_circle(0, Rect{{0, 0}, 6, 6, 0}, 1.0), LayoutError);
  CHECK_THROWS_AS(layout_circle(3, Rect{{0, 0}, 2, 6, 0}, 1.0), LayoutError);
}

TEST_CASE("layout properties on random rooms") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Rect room{{u(rng) * 40 - 20, u(rng) * 40 - 20}, 4 + u(rng) * 20, 4 + u(rng) * 20, u(rng) * 6};
    const double margin = u(rng) * 1.5;
    const std::size_t n = 1 + static_cast<std::size_t>(u(rng) * 30);
    const auto p = layout_circle(n, room, margin);

    // Every stand keeps the margin from each wall.
    for (const auto& q : p) {
      const Vec2 l = room.to_local({q.x(), q.z()});
      CHECK(room.width / 2 - std::abs(l.x()) >= margin - 1e-9);
      CHECK(room.depth / 2 - std::abs(l.y()) >= margin - 1e-9);
    }

    // Rotating the room by 90 degrees about its center rotates the output.
    Rect turned = room;
    turned.yaw += std::numbers::pi / 2;
    const auto r = layout_circle(n, turned, margin);
    const Eigen::Rotation2Dd quarter(std::numbers::pi / 2);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 rel{p[i].x() - room.center.x(), p[i].z() - room.center.y()};
      const Vec2 expect = room.center + quarter * rel;
      CHECK((Vec2(r[i].x(), r[i].z()) - expect).norm() < 1e-9);
    }
  }
}
