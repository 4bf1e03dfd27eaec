#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "curate/game/engine.hpp"
#include "curate/scene/validate.hpp"
#include "curate/sessionlog/log.hpp"

namespace curate::gateway {

// Transport-neutral reply. The HTTP layer copies it verbatim.
struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::map<std::string, std::string> headers;

  nlohmann::json json() const { return nlohmann::json::parse(body); }
  bool operator==(const ApiResponse&) const = default;
};

struct ServiceOptions {
  // One <session_id>.session.jsonl per session.
  std::filesystem::path log_dir;
  // Scene asset paths are relative to this.
  std::filesystem::path asset_root;
  std::size_t glb_target_faces = 5000;
  // Wall clock in ms since the epoch; stamps created_at and events sent
  // without t.
  std::function<std::int64_t()> now_ms;
  // Opaque session ids; default is 128 random bits in hex.
  std::function<std::string()> new_session_id;
};

// The scene failed validation; carries the report.
class StartupError : public std::runtime_error {
 public:
  StartupError(const std::string& what, scene::ValidationReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const scene::ValidationReport& report() const { return report_; }

 private:
  scene::ValidationReport report_;
};

// Sessions live in memory and every well-formed action is appended to the
// session's log before it is applied (write-ahead), rejected ones included.
// Requests on one session are serialized; different sessions run in
// parallel.
//
// Status codes: 400 malformed body or time regression, 404 unknown session,
// exhibit or asset, 409 game rule violation with {"error": code}.
class SessionService {
 public:
  // Throws StartupError when the scene has validation findings. Replays any
  // logs already in options.log_dir.
  SessionService(std::shared_ptr<const scene::MuseumScene> scene, ServiceOptions options);

  // Loads and validates the scene file; assets resolve next to it unless
  // options.asset_root is set.
  static std::unique_ptr<SessionService> open(const std::filesystem::path& scene_path, ServiceOptions options);

  const game::GameEngine& engine() const { return engine_; }

  ApiResponse get_scene() const;
  ApiResponse get_asset_glb(const std::string& asset_id);
  ApiResponse get_knowledge(const std::string& exhibit_id) const;

  ApiResponse create_session();
  ApiResponse get_session(const std::string& id) const;
  // One event object, or {"events": [...]} applied in order (stops at the
  // first 400).
  ApiResponse post_action(const std::string& id, const std::string& body);
  // Body may be empty or {"t", "idempotency_key"}.
  ApiResponse post_submit(const std::string& id, const std::string& body);

  // Body: {"responses": [{"id", "items": [10]}]} or CSV text.
  ApiResponse analytics_sus(const std::string& body, const std::string& content_type) const;
  // Body: {"groups": [{"label", "scores"}, {...}], "exact": "auto", "seed", "draws"}
  // or CSV text.
  ApiResponse analytics_compare(const std::string& body, const std::string& content_type) const;

  std::vector<std::string> session_ids() const;
  std::filesystem::path log_path(const std::string& id) const;

 private:
  struct Entry {
    std::mutex mu;
    game::GameSession state;
    sessionlog::SessionLog log;
    std::int64_t created_ms = 0;
    std::map<std::string, ApiResponse> by_key;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  ApiResponse apply_locked(Entry& e, const nlohmann::json& event_json);
  ApiResponse step(Entry& e, const sessionlog::InteractionEvent& ev);
  nlohmann::json session_body(const Entry& e) const;
  void append(const Entry& e, const sessionlog::InteractionEvent& ev) const;
  void recover();

  std::shared_ptr<const scene::MuseumScene> scene_;
  game::GameEngine engine_;
  ServiceOptions opt_;
  std::string scene_json_;

  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;

  std::mutex glb_mu_;
  std::map<std::string, std::shared_ptr<const std::string>> glb_cache_;
};

ApiResponse json_response(int status, const nlohmann::json& body);
ApiResponse error_response(int status, const std::string& code, const std::string& message);

}  // namespace curate::gateway
