#pragma once

#include "json.hpp"

#include "curate/game/engine.hpp"

namespace curate::game {

// Key order and container order are fixed, so dump() is byte-stable.
nlohmann::json to_json(const GameSession& s);
GameSession session_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AccuracyResult& r);

}  // namespace curate::game
