#include "curate/sessionlog/log.hpp"

#include <fstream>
#include <sstream>

namespace curate::sessionlog {

using nlohmann::json;

void record(SessionLog& log, InteractionEvent e) {
  if (e.t < 0) throw OrderingError("event time " + std::to_string(e.t) + " is negative");
  if (!log.events.empty() && e.t < log.events.back().t)
    throw OrderingError("event time " + std::to_string(e.t) + " is before " + std::to_string(log.events.back().t));
  log.events.push_back(std::move(e));
}

std::string header_line(const SessionLog& log) {
  json h = {{"format", kFormatTag}, {"session_id", log.session_id}, {"scene_version", log.scene_version}};
  if (!log.created_at.empty()) h["created_at"] = log.created_at;
  return h.dump() + "\n";
}

std::string event_line(const InteractionEvent& e) { return to_json(e).dump() + "\n"; }

std::string to_jsonl(const SessionLog& log) {
  std::string out = header_line(log);
  for (const auto& e : log.events) out += event_line(e);
  return out;
}

SessionLog parse_jsonl(std::string_view text, ParseOptions options) {
  SessionLog log;
  bool have_header = false;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const bool last_unterminated = nl == std::string_view::npos;
    const std::string_view line = text.substr(pos, last_unterminated ? std::string_view::npos : nl - pos);
    pos = last_unterminated ? text.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      if (last_unterminated && options.tolerate_torn_tail) break;
      throw LogFormatError("line " + std::to_string(line_no) + ": " + e.what());
    }

    try {
      if (!have_header) {
        if (!j.is_object() || j.value("format", "") != kFormatTag)
          throw LogFormatError("missing header with format " + std::string(kFormatTag));
        log.session_id = j.at("session_id").get<std::string>();
        log.scene_version = j.at("scene_version").get<std::string>();
        log.created_at = j.value("created_at", "");
        have_header = true;
        continue;
      }
      record(log, event_from_json(j));
    } catch (const LogFormatError& e) {
      throw LogFormatError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const OrderingError& e) {
      throw OrderingError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const json::exception& e) {
      throw LogFormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw LogFormatError("empty log: no header line");
  return log;
}

SessionLog read_log_file(const std::filesystem::path& path, ParseOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_jsonl(ss.str(), options);
}

}  // namespace curate::sessionlog
