#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "curate/scene/model.hpp"

namespace curate::sessionlog {

using scene::Pose;
using scene::Quat;

enum class EventKind {
  Teleport,         // target = point id
  Touch,            // target = item id
  Grab,             // target = item id
  Rotate,           // target = item id, rotation
  Release,          // target = item id, pose
  PanelOpen,        // target = exhibit id
  SubmitClick,
  EnterGame,
  ReturnToRoaming,
};

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

struct InteractionEvent {
  std::int64_t t = 0;  // ms since session start
  EventKind kind = EventKind::Touch;
  std::string target;
  std::optional<Quat> rotation;
  std::optional<Pose> pose;
  // Client-supplied key; a repeated key is answered from cache, not re-applied.
  std::string idempotency_key;
};

class LogFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const InteractionEvent& e);
// Throws LogFormatError naming the offending field.
InteractionEvent event_from_json(const nlohmann::json& j);

}  // namespace curate::sessionlog
