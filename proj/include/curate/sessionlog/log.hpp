#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "curate/sessionlog/event.hpp"

namespace curate::sessionlog {

// JSONL: a header object, then one event object per line.
//   {"format":"curate-session/1","session_id":"...","scene_version":"...","created_at":"..."}
//   {"t":0,"kind":"Teleport","point_id":"roam_1_north"}
inline constexpr std::string_view kFormatTag = "curate-session/1";

struct SessionLog {
  std::string session_id;
  std::string scene_version;
  std::string created_at;  // ISO-8601, informational
  std::vector<InteractionEvent> events;
};

class OrderingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Appends `e`. Throws OrderingError when e.t < 0 or e.t is before the last
// event.
void record(SessionLog& log, InteractionEvent e);

std::string header_line(const SessionLog& log);
std::string event_line(const InteractionEvent& e);
std::string to_jsonl(const SessionLog& log);

struct ParseOptions {
  // Drop a final line with no trailing newline that fails to parse. That is
  // what a crash during an append leaves behind.
  bool tolerate_torn_tail = false;
};

// Throws LogFormatError ("line N: ...") or OrderingError.
SessionLog parse_jsonl(std::string_view text, ParseOptions options = {});
SessionLog read_log_file(const std::filesystem::path& path, ParseOptions options = {});

}  // namespace curate::sessionlog
