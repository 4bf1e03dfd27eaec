#include "curate/gateway/service.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>

#include "curate/analytics/csv.hpp"
#include "curate/analytics/report_json.hpp"
#include "curate/game/session_json.hpp"
#include "curate/geometry/gltf.hpp"
#include "curate/geometry/mesh_io.hpp"
#include "curate/geometry/orientation.hpp"
#include "curate/geometry/simplify.hpp"
#include "curate/scene/scene_io.hpp"
#include "curate/sessionlog/replay.hpp"

namespace curate::gateway {

using nlohmann::json;
using sessionlog::InteractionEvent;

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kLogSuffix = ".session.jsonl";

std::int64_t system_now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string random_id() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

std::string iso_utc(std::int64_t ms) {
  const std::time_t s = ms / 1000;
  std::tm tm{};
  gmtime_r(&s, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms % 1000));
  return out;
}

std::optional<std::int64_t> parse_iso_utc(const std::string& s) {
  std::tm tm{};
  int millis = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d.%dZ", &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour, &tm.tm_min,
                  &tm.tm_sec, &millis) < 6)
    return std::nullopt;
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  return static_cast<std::int64_t>(timegm(&tm)) * 1000 + millis;
}

bool is_csv(const std::string& content_type) { return content_type.find("csv") != std::string::npos; }

std::optional<json> parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

}  // namespace

ApiResponse json_response(int status, const json& body) { return {status, body.dump(), "application/json", {}}; }

ApiResponse error_response(int status, const std::string& code, const std::string& message) {
  return json_response(status, {{"error", code}, {"message", message}});
}

SessionService::SessionService(std::shared_ptr<const scene::MuseumScene> scene, ServiceOptions options)
    : scene_(std::move(scene)), engine_(scene_), opt_(std::move(options)) {
  auto report = scene::validate_scene(*scene_);
  if (!report.ok())
    throw StartupError("scene has " + std::to_string(report.findings.size()) + " validation findings",
                       std::move(report));
  if (!opt_.now_ms) opt_.now_ms = system_now_ms;
  if (!opt_.new_session_id) opt_.new_session_id = random_id;
  if (opt_.log_dir.empty()) throw std::invalid_argument("log_dir is required");
  fs::create_directories(opt_.log_dir);
  scene_json_ = scene::serialize(*scene_);
  recover();
}

std::unique_ptr<SessionService> SessionService::open(const fs::path& scene_path, ServiceOptions options) {
  auto scene = std::make_shared<const scene::MuseumScene>(scene::load_scene_file(scene_path));
  if (options.asset_root.empty()) options.asset_root = scene_path.parent_path();
  return std::make_unique<SessionService>(std::move(scene), std::move(options));
}

fs::path SessionService::log_path(const std::string& id) const {
  return opt_.log_dir / (id + std::string(kLogSuffix));
}

std::vector<std::string> SessionService::session_ids() const {
  std::shared_lock lock(sessions_mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

// ---- scene and assets

ApiResponse SessionService::get_scene() const {
  ApiResponse r{200, scene_json_, "application/json", {{"X-Scene-Version", scene_->scene_version}}};
  return r;
}

ApiResponse SessionService::get_knowledge(const std::string& exhibit_id) const {
  const scene::Exhibit* e = scene_->find_exhibit(exhibit_id);
  if (!e) return error_response(404, "not-found", "no exhibit " + exhibit_id);
  return json_response(200, {{"exhibit_id", e->id},
                             {"display_name", e->display_name},
                             {"knowledge_text", e->knowledge_text},
                             {"category", scene::to_string(e->category)},
                             {"purpose", scene::to_string(e->purpose)},
                             {"dynasty", scene::to_string(e->dynasty)},
                             {"level", e->level}});
}

ApiResponse SessionService::get_asset_glb(const std::string& asset_id) {
  const scene::Asset* a = scene_->find_asset(asset_id);
  if (!a) return error_response(404, "not-found", "no asset " + asset_id);
  std::shared_ptr<const std::string> glb;
  {
    std::lock_guard lock(glb_mu_);
    if (auto it = glb_cache_.find(asset_id); it != glb_cache_.end()) glb = it->second;
  }
  if (!glb) {
    // Built outside the lock; two racing builds produce the same bytes.
    try {
      geometry::Mesh mesh = geometry::load_mesh_file(opt_.asset_root / a->path);
      try {
        mesh = geometry::normalize_orientation(mesh).first;
      } catch (const geometry::OrientationError&) {
        // keep the authored frame
      }
      if (mesh.face_count() > opt_.glb_target_faces) {
        geometry::SimplifyOptions so;
        so.target_face_count = opt_.glb_target_faces;
        mesh = geometry::simplify(mesh, so).mesh;
      }
      glb = std::make_shared<const std::string>(geometry::write_glb(mesh));
    } catch (const std::exception& ex) {
      return error_response(500, "asset-error", ex.what());
    }
    std::lock_guard lock(glb_mu_);
    glb = glb_cache_.emplace(asset_id, glb).first->second;
  }
  return {200, *glb, "model/gltf-binary", {{"X-Scene-Version", scene_->scene_version}}};
}

// ---- sessions

json SessionService::session_body(const Entry& e) const {
  return {{"session_id", e.log.session_id},
          {"scene_version", e.log.scene_version},
          {"created_at", e.log.created_at},
          {"event_count", e.log.events.size()},
          {"state", game::to_json(e.state)}};
}

ApiResponse SessionService::create_session() {
  auto e = std::make_shared<Entry>();
  e->created_ms = opt_.now_ms();
  std::unique_lock lock(sessions_mu_);
  std::string id = opt_.new_session_id();
  for (int i = 0; sessions_.count(id) || fs::exists(log_path(id)); ++i) {
    if (i == 100) return error_response(500, "id-exhausted", "could not allocate a session id");
    id = opt_.new_session_id();
  }
  e->state = engine_.new_session(id);
  e->log.session_id = id;
  e->log.scene_version = scene_->scene_version;
  e->log.created_at = iso_utc(e->created_ms);
  {
    std::ofstream out(log_path(id), std::ios::binary | std::ios::trunc);
    out << sessionlog::header_line(e->log);
    out.flush();
    if (!out) return error_response(500, "log-error", "cannot write " + log_path(id).string());
  }
  sessions_.emplace(id, e);
  return json_response(201, session_body(*e));
}

ApiResponse SessionService::get_session(const std::string& id) const {
  auto e = find(id);
  if (!e) return error_response(404, "unknown-session", "no session " + id);
  std::lock_guard lock(e->mu);
  return json_response(200, session_body(*e));
}

void SessionService::append(const Entry& e, const InteractionEvent& ev) const {
  std::ofstream out(log_path(e.log.session_id), std::ios::binary | std::ios::app);
  out << sessionlog::event_line(ev);
  out.flush();
  if (!out) throw std::runtime_error("cannot append to " + log_path(e.log.session_id).string());
}

ApiResponse SessionService::step(Entry& e, const InteractionEvent& ev) {
  const std::size_t index = e.log.events.size() - 1;
  try {
    sessionlog::StepResult r = sessionlog::apply_event(engine_, e.state, ev);
    e.state = std::move(r.session);
    json body{{"ok", true},
              {"index", index},
              {"t", ev.t},
              {"kind", sessionlog::to_string(ev.kind)},
              {"phase", game::to_string(e.state.phase)},
              {"level", e.state.current_level},
              {"gates_open", e.state.gates_open},
              {"state", game::to_json(e.state)}};
    if (r.submit) {
      const game::AccuracyResult& a = r.submit->result;
      body["submit"] = {{"accuracy", a.accuracy},
                        {"correct_count", a.correct_count},
                        {"required_placements", a.required_placements},
                        {"passed", a.passed},
                        {"dialog", a.passed ? "pass" : "not-pass"},
                        {"gate_opened", r.submit->gate_opened ? json(*r.submit->gate_opened) : json(nullptr)},
                        {"result", game::to_json(a)}};
    }
    return json_response(200, body);
  } catch (const game::GameError& err) {
    sessionlog::ReplayFinding f{index, ev.t, std::string(game::to_string(err.code())), err.what()};
    return json_response(409, {{"error", f.code},
                               {"message", f.message},
                               {"finding", f.text()},
                               {"index", index},
                               {"phase", game::to_string(e.state.phase)},
                               {"level", e.state.current_level},
                               {"gates_open", e.state.gates_open},
                               {"state", game::to_json(e.state)}});
  }
}

ApiResponse SessionService::apply_locked(Entry& e, const json& in) {
  if (!in.is_object()) return error_response(400, "malformed", "action must be a JSON object");
  json j = in;
  const std::int64_t last = e.log.events.empty() ? 0 : e.log.events.back().t;
  if (!j.contains("t")) j["t"] = std::max(last, opt_.now_ms() - e.created_ms);

  std::string key;
  if (auto k = j.find("idempotency_key"); k != j.end() && k->is_string()) key = k->get<std::string>();
  if (!key.empty())
    if (auto hit = e.by_key.find(key); hit != e.by_key.end()) return hit->second;

  InteractionEvent ev;
  try {
    ev = sessionlog::event_from_json(j);
  } catch (const sessionlog::LogFormatError& err) {
    return error_response(400, "malformed", err.what());
  }
  if (ev.t < 0 || ev.t < last)
    return error_response(400, "time-regression",
                          "t=" + std::to_string(ev.t) + " is before the last event at t=" + std::to_string(last));

  try {
    append(e, ev);
  } catch (const std::exception& err) {
    return error_response(500, "log-error", err.what());
  }
  e.log.events.push_back(ev);
  ApiResponse r = step(e, ev);
  if (!key.empty()) e.by_key.emplace(key, r);
  return r;
}

ApiResponse SessionService::post_action(const std::string& id, const std::string& body) {
  auto e = find(id);
  if (!e) return error_response(404, "unknown-session", "no session " + id);
  auto j = parse_body(body);
  if (!j) return error_response(400, "malformed", "body is not JSON");
  std::lock_guard lock(e->mu);
  if (j->is_object() && j->contains("events")) {
    const json& events = (*j)["events"];
    if (!events.is_array()) return error_response(400, "malformed", "events must be an array");
    json results = json::array();
    int status = 200;
    for (const json& ev : events) {
      ApiResponse r = apply_locked(*e, ev);
      results.push_back({{"status", r.status}, {"body", r.json()}});
      if (r.status == 400 || r.status >= 500) {
        status = r.status;
        break;
      }
    }
    return json_response(status, {{"results", results}, {"session", session_body(*e)}});
  }
  return apply_locked(*e, *j);
}

ApiResponse SessionService::post_submit(const std::string& id, const std::string& body) {
  auto e = find(id);
  if (!e) return error_response(404, "unknown-session", "no session " + id);
  auto j = parse_body(body);
  if (!j || !j->is_object()) return error_response(400, "malformed", "body must be a JSON object");
  (*j)["kind"] = "SubmitClick";
  std::lock_guard lock(e->mu);
  return apply_locked(*e, *j);
}

void SessionService::recover() {
  for (const auto& f : fs::directory_iterator(opt_.log_dir)) {
    const std::string name = f.path().filename().string();
    if (!f.is_regular_file() || name.size() <= kLogSuffix.size() ||
        name.compare(name.size() - kLogSuffix.size(), kLogSuffix.size(), kLogSuffix) != 0)
      continue;
    const std::string text = geometry::read_file_bytes(f.path());
    sessionlog::SessionLog log;
    try {
      log = sessionlog::parse_jsonl(text, {.tolerate_torn_tail = true});
    } catch (const std::exception& ex) {
      std::cerr << "skipping " << f.path() << ": " << ex.what() << "\n";
      continue;
    }
    if (log.scene_version != scene_->scene_version) {
      std::cerr << "skipping " << f.path() << ": recorded against scene " << log.scene_version << "\n";
      continue;
    }
    auto e = std::make_shared<Entry>();
    e->state = engine_.new_session(log.session_id);
    e->log.session_id = log.session_id;
    e->log.scene_version = log.scene_version;
    e->log.created_at = log.created_at;
    e->created_ms = parse_iso_utc(log.created_at).value_or(opt_.now_ms());
    for (const InteractionEvent& ev : log.events) {
      e->log.events.push_back(ev);
      ApiResponse r = step(*e, ev);
      if (!ev.idempotency_key.empty()) e->by_key.emplace(ev.idempotency_key, std::move(r));
    }
    // A torn final line would corrupt the next append.
    const std::string clean = sessionlog::to_jsonl(e->log);
    if (clean != text) geometry::write_file_bytes(f.path(), clean);
    sessions_.emplace(log.session_id, std::move(e));
  }
}

// ---- analytics

ApiResponse SessionService::analytics_sus(const std::string& body, const std::string& content_type) const {
  try {
    std::vector<analytics::SusResponse> rs;
    if (is_csv(content_type)) {
      rs = analytics::parse_sus_csv(body);
    } else {
      auto j = parse_body(body);
      if (!j || !j->is_object() || !j->contains("responses") || !(*j)["responses"].is_array())
        return error_response(400, "malformed", "expected {\"responses\": [...]}");
      for (const json& r : (*j)["responses"]) rs.push_back(analytics::sus_response_from_json(r));
    }
    json scores = json::array();
    for (const auto& r : rs)
      scores.push_back({{"id", r.respondent_id},
                        {"sus", analytics::sus_score(r)},
                        {"learnability", analytics::learnability_score(r)},
                        {"usability", analytics::usability_score(r)}});
    return json_response(200, {{"summary", analytics::to_json(analytics::sus_summary(rs))}, {"scores", scores}});
  } catch (const analytics::AnalyticsError& err) {
    return error_response(400, "invalid", err.what());
  }
}

ApiResponse SessionService::analytics_compare(const std::string& body, const std::string& content_type) const {
  try {
    analytics::GroupComparison c;
    analytics::MwuOptions opt;
    if (is_csv(content_type)) {
      c = analytics::parse_comparison_csv(body);
    } else {
      auto j = parse_body(body);
      if (!j || !j->is_object() || !j->contains("groups") || !(*j)["groups"].is_array() || (*j)["groups"].size() != 2)
        return error_response(400, "malformed", "expected {\"groups\": [two groups]}");
      const json& g = (*j)["groups"];
      try {
        c.label1 = g[0].at("label").get<std::string>();
        c.label2 = g[1].at("label").get<std::string>();
        c.group1 = g[0].at("scores").get<std::vector<double>>();
        c.group2 = g[1].at("scores").get<std::vector<double>>();
        const std::string exact = j->value("exact", "auto");
        if (exact == "auto") opt.exact = analytics::ExactMode::Auto;
        else if (exact == "monte-carlo") opt.exact = analytics::ExactMode::MonteCarlo;
        else if (exact == "off") opt.exact = analytics::ExactMode::Off;
        else return error_response(400, "malformed", "exact must be auto, monte-carlo or off");
        opt.seed = j->value("seed", opt.seed);
        opt.draws = j->value("draws", opt.draws);
      } catch (const json::exception& err) {
        return error_response(400, "malformed", err.what());
      }
    }
    return json_response(200, analytics::compare_report(c, opt));
  } catch (const analytics::AnalyticsError& err) {
    return error_response(400, "invalid", err.what());
  }
}

}  // namespace curate::gateway
