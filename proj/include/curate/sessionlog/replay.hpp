#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curate/game/engine.hpp"
#include "curate/sessionlog/log.hpp"

namespace curate::sessionlog {

struct ReplayFinding {
  std::size_t index = 0;  // position in the event list
  std::int64_t t = 0;
  std::string code;  // game::ErrorCode wire name
  std::string message;

  // "gate-closed at t=1200"
  std::string text() const;
};

struct StepResult {
  game::GameSession session;
  std::optional<game::SubmitOutcome> submit;  // SubmitClick only
};

// One event through the game engine. Throws game::GameError when illegal.
StepResult apply_event(const game::GameEngine& engine, game::GameSession session, const InteractionEvent& e);

struct ReplayResult {
  game::GameSession final_state;
  std::vector<ReplayFinding> findings;
  std::optional<std::int64_t> level3_pass_t;
};

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies events in order from a fresh session named after the log. Illegal
// events become findings and leave the state as it was. Throws ReplayError on
// scene version mismatch.
ReplayResult replay(const SessionLog& log, const game::GameEngine& engine);

// Continues from `start`; `first_index` numbers the findings.
ReplayResult replay_from(const game::GameEngine& engine, game::GameSession start,
                         std::span<const InteractionEvent> events, std::size_t first_index = 0);

class IncompleteSessionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// t of the SubmitClick that passed level 3 minus t of the first event.
std::int64_t clearance_time(const SessionLog& log, const game::GameEngine& engine);

}  // namespace curate::sessionlog
