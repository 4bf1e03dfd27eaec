#include "curate/sessionlog/replay.hpp"

namespace curate::sessionlog {

using game::GameEngine;
using game::GameError;
using game::GameSession;

std::string ReplayFinding::text() const { return code + " at t=" + std::to_string(t); }

StepResult apply_event(const GameEngine& engine, GameSession s, const InteractionEvent& e) {
  StepResult out;
  switch (e.kind) {
    case EventKind::Teleport: out.session = engine.teleport(std::move(s), e.target); break;
    case EventKind::Touch: out.session = engine.touch(std::move(s), e.target); break;
    case EventKind::Grab: out.session = engine.grab(std::move(s), e.target); break;
    case EventKind::Rotate:
      out.session = engine.rotate(std::move(s), e.target, e.rotation.value_or(Quat::Identity()));
      break;
    case EventKind::Release:
      if (!s.grabbed || *s.grabbed != e.target)
        throw GameError(game::ErrorCode::NotGrabbed, "release of " + e.target + " which is not held");
      out.session = engine.release(std::move(s), e.pose.value_or(Pose{}));
      break;
    case EventKind::PanelOpen: out.session = engine.open_panel(std::move(s), e.target); break;
    case EventKind::SubmitClick: {
      auto r = engine.submit(std::move(s));
      out.session = r.session;
      out.submit = std::move(r);
      break;
    }
    case EventKind::EnterGame: out.session = engine.enter_game(std::move(s)); break;
    case EventKind::ReturnToRoaming: out.session = engine.return_to_roaming(std::move(s)); break;
  }
  return out;
}

ReplayResult replay_from(const GameEngine& engine, GameSession start, std::span<const InteractionEvent> events,
                         std::size_t first_index) {
  ReplayResult out;
  out.final_state = std::move(start);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const InteractionEvent& e = events[i];
    try {
      const int level = out.final_state.current_level;
      StepResult step = apply_event(engine, out.final_state, e);
      if (step.submit && step.submit->result.passed && level == scene::kLevelCount && !out.level3_pass_t)
        out.level3_pass_t = e.t;
      out.final_state = std::move(step.session);
    } catch (const GameError& err) {
      out.findings.push_back({first_index + i, e.t, std::string(game::to_string(err.code())), err.what()});
    }
  }
  return out;
}

ReplayResult replay(const SessionLog& log, const GameEngine& engine) {
  if (log.scene_version != engine.scene().scene_version)
    throw ReplayError("log was recorded against scene \"" + log.scene_version + "\", loaded scene is \"" +
                      engine.scene().scene_version + "\"");
  return replay_from(engine, engine.new_session(log.session_id), log.events);
}

std::int64_t clearance_time(const SessionLog& log, const GameEngine& engine) {
  const ReplayResult r = replay(log, engine);
  if (r.final_state.phase != game::Phase::Finished || !r.level3_pass_t)
    throw IncompleteSessionError("session " + log.session_id + " never passed level 3");
  return *r.level3_pass_t - log.events.front().t;
}

}  // namespace curate::sessionlog
