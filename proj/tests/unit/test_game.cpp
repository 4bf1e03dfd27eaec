#include <random>

#include "doctest.h"
#include "play.hpp"

#include "curate/game/session_json.hpp"

using namespace curate;
using namespace curate::game;
using curate::testing::correct_container;
using curate::testing::pass_levels;
using curate::testing::place_all;
using curate::testing::placements_with_correct;
using curate::testing::shared_demo;
using scene::Pose;

namespace {

const GameEngine& engine() {
  static const GameEngine e(shared_demo());
  return e;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GameError& e) {
    return e.code();
  }
  FAIL("expected GameError");
  return ErrorCode::Config;
}

scene::MuseumScene demo_copy() { return *shared_demo(); }

ErrorCode config_error_for(scene::MuseumScene s) {
  return code_of([&] { GameEngine e(std::make_shared<const scene::MuseumScene>(std::move(s))); });
}

}  // namespace

TEST_CASE("new session starts in Roaming(1) with next-level gates closed") {
  const GameSession s = engine().new_session("s1");
  CHECK(s.phase == Phase::Roaming);
  CHECK(s.current_level == 1);
  CHECK(s.current_room == "roaming_1");
  CHECK(s.passed_levels.empty());
  CHECK(s.attempts.at(1) == 0);
  CHECK(s.gates_open.count("enter_game_1"));
  CHECK(s.gates_open.count("roam_1_center"));
  CHECK_FALSE(s.gates_open.count("next_level_1"));
  CHECK_FALSE(s.gates_open.count("next_level_2"));
}

TEST_CASE("config invariants") {
  SUBCASE("level 1 threshold 0.7") {
    auto s = demo_copy();
    s.levels[0].pass_threshold = 0.7;
    CHECK(config_error_for(s) == ErrorCode::Config);
  }
  SUBCASE("level 3 with 8 items") {
    auto s = demo_copy();
    s.levels[2].items.pop_back();
    CHECK(config_error_for(s) == ErrorCode::Config);
  }
  SUBCASE("level 2 non-strict") {
    auto s = demo_copy();
    s.levels[1].threshold_strict = false;
    CHECK(config_error_for(s) == ErrorCode::Config);
  }
  SUBCASE("item from another level's roaming room") {
    auto s = demo_copy();
    s.levels[0].items[0].exhibit_id = s.levels[1].items[0].exhibit_id;
    CHECK(config_error_for(s) == ErrorCode::Config);
  }
  SUBCASE("item starting inside a container") {
    auto s = demo_copy();
    s.levels[0].items[0].initial_pose.position = s.levels[0].containers[0].position;
    CHECK(config_error_for(s) == ErrorCode::Config);
  }
  SUBCASE("non-positive radius") {
    auto s = demo_copy();
    s.levels[1].containers[0].interaction_radius = 0;
    CHECK(config_error_for(s) == ErrorCode::Config);
  }
  SUBCASE("level 2 capacity changed") {
    auto s = demo_copy();
    s.levels[1].containers[0].capacity = 3;
    CHECK(config_error_for(s) == ErrorCode::Config);
  }
  SUBCASE("next-level gate open at start") {
    auto s = demo_copy();
    for (auto& p : s.teleport.points)
      if (p.id == "next_level_1") p.initially_open = true;
    CHECK(config_error_for(s) == ErrorCode::Config);
  }
}

TEST_CASE("enter_game loads initial poses and return clears placements") {
  const auto& e = engine();
  GameSession s = pass_levels(e, e.new_session("s"), 1);
  REQUIRE(s.phase == Phase::Roaming);
  REQUIRE(s.current_level == 2);
  s = e.enter_game(s);
  CHECK(s.phase == Phase::Game);
  CHECK(s.current_room == "game_2");
  CHECK(s.placements == e.initial_placements(2));
  CHECK(s.placements.size() == 12);
}

TEST_CASE("returning to roaming means starting all over again") {
  const auto& e = engine();
  GameSession s = e.enter_game(e.new_session("s"));
  const auto initial = s.placements;
  const auto& l = e.level(1);
  for (int i = 0; i < 5; ++i) {
    const auto& id = l.items[i].exhibit_id;
    s = e.release(e.grab(s, id), Pose{correct_container(e.scene(), l, id).position, scene::Quat::Identity()});
  }
  CHECK(s.placements != initial);
  s = e.return_to_roaming(s);
  CHECK(s.phase == Phase::Roaming);
  CHECK(s.placements.empty());
  s = e.enter_game(s);
  CHECK(s.placements == initial);
}

TEST_CASE("illegal transitions") {
  const auto& e = engine();
  const GameSession roam = e.new_session("s");
  const GameSession game = e.enter_game(roam);
  CHECK(code_of([&] { e.enter_game(game); }) == ErrorCode::IllegalTransition);
  CHECK(code_of([&] { e.return_to_roaming(roam); }) == ErrorCode::IllegalTransition);
  CHECK(code_of([&] { e.submit(roam); }) == ErrorCode::IllegalTransition);
  CHECK(code_of([&] { e.open_panel(game, "l1_hu_01"); }) == ErrorCode::IllegalTransition);
  const GameSession done = pass_levels(e, e.new_session("d"), 3);
  REQUIRE(done.phase == Phase::Finished);
  CHECK(code_of([&] { e.submit(done); }) == ErrorCode::IllegalTransition);
  CHECK(code_of([&] { e.grab(done, "l3_ding_01"); }) == ErrorCode::IllegalTransition);
  CHECK(code_of([&] { e.return_to_roaming(done); }) == ErrorCode::IllegalTransition);
}

TEST_CASE("grab and release") {
  const auto& e = engine();
  GameSession s = e.enter_game(e.new_session("s"));
  s = e.grab(s, "l1_gui_04");
  CHECK(s.grabbed == "l1_gui_04");
  CHECK(code_of([&] { e.grab(s, "l1_hu_01"); }) == ErrorCode::AlreadyGrabbed);
  s = e.rotate(s, "l1_gui_04", scene::Quat(Eigen::AngleAxisd(0.5, Vec3::UnitY())));
  CHECK(s.held_rotation.has_value());
  CHECK(code_of([&] { e.rotate(s, "l1_hu_01", scene::Quat::Identity()); }) == ErrorCode::NotGrabbed);
  s = e.release(s, Pose{Vec3(2, 1, 3), scene::Quat::Identity()});
  CHECK_FALSE(s.grabbed);
  CHECK(s.placements.at("l1_gui_04").position == Vec3(2, 1, 3));
  CHECK(code_of([&] { e.release(s, Pose{}); }) == ErrorCode::NotGrabbed);
  CHECK(code_of([&] { e.grab(s, "l2_gui_01"); }) == ErrorCode::WrongRoom);
  CHECK(code_of([&] { e.grab(s, "ding_07"); }) == ErrorCode::NotFound);
}

TEST_CASE("roaming grabs snap back") {
  const auto& e = engine();
  GameSession s = e.new_session("s");
  const GameSession before = s;
  s = e.release(e.grab(s, "l1_ding_02"), Pose{Vec3(5, 1, 5), scene::Quat::Identity()});
  CHECK(s.placements.empty());
  CHECK(to_json(s) == to_json(before));
}

TEST_CASE("the display bronze in game 2 cannot be grabbed") {
  const auto& e = engine();
  GameSession s = e.enter_game(pass_levels(e, e.new_session("s"), 1));
  const std::string display = e.level(2).display_items.at(0).exhibit_id;
  CHECK_NOTHROW(e.touch(s, display));
  CHECK(code_of([&] { e.grab(s, display); }) == ErrorCode::Immovable);
}

TEST_CASE("panels") {
  const auto& e = engine();
  GameSession s = e.open_panel(e.new_session("s"), "l1_zun_14");
  CHECK(s.panels_read.count("l1_zun_14"));
  CHECK(code_of([&] { e.open_panel(s, "l2_zun_07"); }) == ErrorCode::WrongRoom);
}

TEST_CASE("assign_container") {
  std::vector<scene::Container> cs(3);
  cs[0].id = "b";
  cs[0].position = Vec3(0, 0, 0);
  cs[1].id = "a";
  cs[1].position = Vec3(0.6, 0, 0);
  cs[2].id = "c";
  cs[2].position = Vec3(5, 0, 0);
  CHECK(assign_container(Vec3(5, 0, 0), cs) == "c");
  CHECK(assign_container(Vec3(0.2, 0, 0), cs) == "b");
  CHECK(assign_container(Vec3(0.4, 0, 0), cs) == "a");
  CHECK(assign_container(Vec3(0.3, 0, 0), cs) == "a");  // equidistant, smaller id
  CHECK_FALSE(assign_container(Vec3(2.5, 0, 0), cs));
  CHECK_FALSE(assign_container(Vec3(0.5, 0, 0) + Vec3(0, 0.5, 0), cs));
  CHECK_FALSE(assign_container(Vec3(5.5, 0, 0), cs));  // distance == A is not < A
  CHECK(assign_container(Vec3(3.0, 0, 0), cs, 3.0) == "c");  // b sits exactly at 3.0
}

TEST_CASE("submit outcomes per level") {
  const auto& e = engine();
  auto submit_k = [&](int level, int k) {
    GameSession s = e.enter_game(pass_levels(e, e.new_session("s"), level - 1));
    s = place_all(e, s, placements_with_correct(e.scene(), e.level(level), k));
    return e.submit(s);
  };
  SUBCASE("level 1") {
    auto all = submit_k(1, 12);
    CHECK(all.result.accuracy == 1.0);
    CHECK(all.result.passed);
    CHECK(all.gate_opened == "next_level_1");
    auto ten = submit_k(1, 10);
    CHECK(ten.result.accuracy == doctest::Approx(0.8333).epsilon(1e-4));
    CHECK(ten.result.passed);
    auto nine = submit_k(1, 9);
    CHECK(nine.result.accuracy == 0.75);
    CHECK_FALSE(nine.result.passed);
    CHECK_FALSE(nine.gate_opened);
    CHECK(nine.session.attempts.at(1) == 1);
    CHECK_FALSE(nine.session.gates_open.count("next_level_1"));
  }
  SUBCASE("level 2 needs all ten") {
    auto nine = submit_k(2, 9);
    CHECK(nine.result.accuracy == 0.9);
    CHECK_FALSE(nine.result.passed);
    auto ten = submit_k(2, 10);
    CHECK(ten.result.passed);
    CHECK(ten.gate_opened == "next_level_2");
  }
  SUBCASE("level 3 needs all nine") {
    auto eight = submit_k(3, 8);
    CHECK_FALSE(eight.result.passed);
    CHECK(eight.session.phase == Phase::Game);
    auto nine = submit_k(3, 9);
    CHECK(nine.result.passed);
    CHECK(nine.session.phase == Phase::Finished);
    CHECK_FALSE(nine.gate_opened);
  }
}

TEST_CASE("over capacity: only the nearest items count") {
  const auto& e = engine();
  const auto& l = e.level(1);
  const auto& shelf = e.level(1).containers[0];  // bottles, capacity 3
  auto placements = e.initial_placements(1);
  std::vector<std::string> bottles, others;
  for (const auto& it : l.items)
    (correct_container(e.scene(), l, it.exhibit_id).id == shelf.id ? bottles : others).push_back(it.exhibit_id);
  REQUIRE(bottles.size() == 3);
  // A wrong item sits closest, so one bottle drops out of the counted three.
  placements[others[0]].position = shelf.position + Vec3(0.01, 0, 0);
  for (int i = 0; i < 3; ++i) placements[bottles[i]].position = shelf.position + Vec3(0.1 * (i + 1), 0, 0);
  const AccuracyResult r = score(e.scene(), l, placements);
  CHECK(r.correct_count == 2);
  CHECK(r.per_item.at(bottles[2]).over_capacity);
  CHECK_FALSE(r.per_item.at(bottles[2]).correct);
  CHECK(r.per_item.at(bottles[2]).assigned_container == shelf.id);
  CHECK_FALSE(r.per_item.at(others[0]).correct);
}

TEST_CASE("unplaced items count against the required total") {
  const auto& e = engine();
  auto placements = placements_with_correct(e.scene(), e.level(1), 12);
  placements.erase(e.level(1).items[0].exhibit_id);
  const auto r = score(e.scene(), e.level(1), placements);
  CHECK(r.correct_count == 11);
  CHECK(r.accuracy == doctest::Approx(11.0 / 12));
  CHECK_FALSE(r.per_item.at(e.level(1).items[0].exhibit_id).assigned_container);
}

TEST_CASE("teleport") {
  const auto& e = engine();
  GameSession s = e.new_session("s");
  SUBCASE("plain point moves the player only") {
    GameSession t = e.teleport(s, "roam_1_north");
    CHECK(t.position == e.scene().find_point("roam_1_north")->position);
    CHECK(t.phase == Phase::Roaming);
  }
  SUBCASE("next-level gate before passing is closed") {
    GameSession g = e.enter_game(s);
    CHECK(code_of([&] { e.teleport(g, "next_level_1"); }) == ErrorCode::GateClosed);
  }
  SUBCASE("next-level after passing leads to Roaming(2)") {
    GameSession g = e.enter_game(s);
    g = place_all(e, g, placements_with_correct(e.scene(), e.level(1), 12));
    g = e.submit(g).session;
    g = e.teleport(g, "next_level_1");
    CHECK(g.phase == Phase::Roaming);
    CHECK(g.current_level == 2);
    CHECK(g.current_room == "roaming_2");
    CHECK(g.placements.empty());
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { e.teleport(s, "nowhere"); }) == ErrorCode::NotFound);
    CHECK(code_of([&] { e.teleport(s, "game_1_center"); }) == ErrorCode::WrongRoom);
  }
  SUBCASE("entry and return points") {
    GameSession g = e.teleport(s, "enter_game_1");
    CHECK(g.phase == Phase::Game);
    g = e.teleport(g, "return_1");
    CHECK(g.phase == Phase::Roaming);
    CHECK(g.current_room == "roaming_1");
  }
}

TEST_CASE("threshold table by enumeration") {
  const auto& e = engine();
  const int expected_min[] = {10, 10, 9};
  for (int level = 1; level <= 3; ++level) {
    const auto& l = e.level(level);
    CHECK(minimum_passing_count(l) == expected_min[level - 1]);
    for (int k = 0; k <= l.required_placements; ++k)
      CHECK(passes(k, l.required_placements, l.pass_threshold, l.threshold_strict) == (k >= expected_min[level - 1]));
  }
}

TEST_CASE("scoring is pure and bounded") {
  const auto& e = engine();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const int level = 1 + trial % 3;
    const auto& l = e.level(level);
    auto placements = e.initial_placements(level);
    for (auto& [id, pose] : placements) {
      if (rng() % 2) {
        const auto& c = l.containers[rng() % l.containers.size()];
        pose.position = c.position + Vec3(u(rng), u(rng), u(rng)) * 0.05;
      } else {
        pose.position = e.scene().find_room(l.room_id)->spawn + Vec3(u(rng), 1, u(rng));
      }
    }
    const auto a = score(e.scene(), l, placements);
    const auto b = score(e.scene(), l, placements);
    CHECK(a == b);
    CHECK(a.accuracy >= 0);
    CHECK(a.accuracy <= 1);
    const double scaled = a.accuracy * l.required_placements;
    CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-12));
  }
}

TEST_CASE("random walk keeps gates sound and reset complete") {
  const auto& e = engine();
  const auto& sc = e.scene();
  std::mt19937_64 rng(2024);
  std::vector<std::string> point_ids, exhibit_ids;
  for (const auto& p : sc.teleport.points) point_ids.push_back(p.id);
  for (const auto& x : sc.exhibits) exhibit_ids.push_back(x.id);

  int passes_seen = 0, finished = 0;
  for (int walk = 0; walk < 60; ++walk) {
    GameSession s = e.new_session("w" + std::to_string(walk));
    std::set<int> passed_by_submit;
    for (int step = 0; step < 400; ++step) {
      const int op = static_cast<int>(rng() % 100);
      try {
        if (op < 3 && s.phase == Phase::Game) {
          // Occasionally play the level out with a random number of right answers.
          const auto& l = e.level(s.current_level);
          const int k = l.required_placements - static_cast<int>(rng() % 3);
          s = place_all(e, s, placements_with_correct(sc, l, k));
        } else if (op < 8) {
          s = e.enter_game(s);
          CHECK(s.placements == e.initial_placements(s.current_level));
        } else if (op < 10) {
          s = e.return_to_roaming(s);
          CHECK(s.placements.empty());
        } else if (op < 30) {
          s = e.teleport(s, point_ids[rng() % point_ids.size()]);
        } else if (op < 60) {
          std::string id;
          if (s.phase == Phase::Game && rng() % 4) {
            auto it = s.placements.begin();
            std::advance(it, static_cast<long>(rng() % s.placements.size()));
            id = it->first;
          } else {
            id = exhibit_ids[rng() % exhibit_ids.size()];
          }
          s = e.grab(s, id);
        } else if (op < 85) {
          Vec3 where = s.position + Vec3(0, 1, 0);
          if (s.grabbed && s.phase == Phase::Game && rng() % 5) {
            const auto& l = e.level(s.current_level);
            where = correct_container(sc, l, *s.grabbed).position + Vec3(0.02 * (rng() % 10), 0, 0);
          }
          s = e.release(s, Pose{where, scene::Quat::Identity()});
        } else if (op < 88) {
          s = e.open_panel(s, exhibit_ids[rng() % exhibit_ids.size()]);
        } else {
          const int level = s.current_level;
          auto out = e.submit(s);
          if (out.result.passed) {
            passed_by_submit.insert(level);
            ++passes_seen;
          }
          s = out.session;
        }
      } catch (const GameError&) {
      }
      // Gate soundness.
      for (int level = 1; level <= 2; ++level)
        CHECK(s.gates_open.count("next_level_" + std::to_string(level)) == passed_by_submit.count(level));
      CHECK(s.passed_levels == passed_by_submit);
      CHECK((s.phase == Phase::Finished) == (passed_by_submit.count(3) == 1));
    }
    finished += s.phase == Phase::Finished;
  }
  CHECK(passes_seen > 0);
  MESSAGE("passing submits seen: " << passes_seen << ", finished walks: " << finished);
}

TEST_CASE("session JSON round-trips") {
  const auto& e = engine();
  GameSession s = e.enter_game(pass_levels(e, e.new_session("rt"), 1));
  const std::string held = e.level(2).items[3].exhibit_id;
  s = e.rotate(e.grab(s, held), held, scene::Quat(Eigen::AngleAxisd(1.1, Vec3::UnitX())));
  const auto j = to_json(s);
  CHECK(to_json(session_from_json(j)).dump() == j.dump());
  CHECK(j["phase"] == "Game");
  CHECK(j["level"] == 2);
}
