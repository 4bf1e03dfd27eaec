#include <csignal>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "curate/analytics/csv.hpp"
#include "curate/analytics/report_json.hpp"
#include "curate/game/session_json.hpp"
#include "curate/gateway/http_server.hpp"
#include "curate/gateway/service.hpp"
#include "curate/geometry/mesh_io.hpp"
#include "curate/geometry/orientation.hpp"
#include "curate/geometry/simplify.hpp"
#include "curate/geometry/stats.hpp"
#include "curate/scene/demo.hpp"
#include "curate/scene/scene_io.hpp"
#include "curate/scene/validate.hpp"
#include "curate/sessionlog/replay.hpp"

using namespace curate;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// 0 ok, 1 the input was checked and found wanting, 2 could not run.
constexpr int kFindings = 1;
constexpr int kError = 2;

json vec_json(const geometry::Vec3& v) { return {v.x(), v.y(), v.z()}; }

json stats_json(const geometry::MeshStats& s) {
  return {{"faces", s.face_count},
          {"vertices", s.vertex_count},
          {"bbox_min", vec_json(s.bbox.min)},
          {"bbox_max", vec_json(s.bbox.max)},
          {"boundary_loops", s.boundary_loop_count},
          {"max_extent", s.max_extent}};
}

gateway::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

void print_sus(const analytics::SusSummary& s) {
  std::cout << "respondents   " << s.n << "\n"
            << "mean SUS      " << analytics::fixed(s.mean_sus, 1) << "\n"
            << "learnability  " << analytics::fixed(s.learnability, 1) << "\n"
            << "usability     " << analytics::fixed(s.usability, 1) << "\n"
            << "percentile    " << analytics::fixed(s.percentile, 0) << " (" << s.grade << ")\n"
            << "adjective     " << s.adjective << "\n";
}

void print_compare(const json& r) {
  for (const auto& g : r["groups"]) {
    std::cout << g["label"].get<std::string>() << " (n=" << g["n"] << ")  Shapiro-Wilk ";
    const json& sw = g["shapiro_wilk"];
    if (sw.contains("error"))
      std::cout << sw["error"].get<std::string>() << "\n";
    else
      std::cout << "W=" << sw["display"]["statistic"].get<std::string>() << " df=" << sw["df"]
                << " p=" << sw["display"]["p"].get<std::string>() << "\n";
  }
  const json& m = r["mann_whitney"];
  const json& d = m["display"];
  std::cout << "mean rank     " << d["mean_rank_1"].get<std::string>() << " / " << d["mean_rank_2"].get<std::string>()
            << "\nrank sum      " << d["rank_sum_1"].get<std::string>() << " / " << d["rank_sum_2"].get<std::string>()
            << "\nU             " << d["U"].get<std::string>() << "\nW             " << d["W"].get<std::string>()
            << "\nZ             " << d["Z"].get<std::string>() << "\np asymptotic  "
            << d["p_asymptotic"].get<std::string>() << "\np exact       ";
  if (m["p_exact"].is_null())
    std::cout << "-\n";
  else
    std::cout << analytics::fixed(m["p_exact"].get<double>(), 4) << " (" << m["exact_method"].get<std::string>()
              << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual bronze museum: asset pipeline, scene tools, game server, session replay, analytics"};
  app.require_subcommand(1);
  int status = 0;

  // ---- pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Mesh preparation");
  pipeline->require_subcommand(1);

  std::string in_path, out_path;
  std::size_t target = geometry::kDefaultTargetFaces;
  bool preserve_boundary = false;
  double max_error = -1;
  auto* simp = pipeline->add_subcommand("simplify", "Quadric edge-collapse decimation");
  simp->add_option("input", in_path, "PLY or OBJ")->required()->check(CLI::ExistingFile);
  simp->add_option("output", out_path, ".ply or .glb")->required();
  simp->add_option("--target", target, "Target face count")->check(CLI::Range(2, 100000000));
  simp->add_flag("--preserve-boundary", preserve_boundary, "Keep open borders in place");
  simp->add_option("--max-error", max_error, "Stop when a collapse would cost more than this (m^2)");
  simp->callback([&] {
    const geometry::Mesh mesh = geometry::load_mesh_file(in_path);
    geometry::SimplifyOptions opt;
    opt.target_face_count = target;
    opt.preserve_boundary = preserve_boundary;
    if (max_error >= 0) opt.max_error = max_error;
    const auto r = geometry::simplify(mesh, opt);
    geometry::save_mesh_file(r.mesh, out_path);
    std::cout << json{{"input_faces", r.report.input_faces},
                      {"output_faces", r.report.output_faces},
                      {"collapses", r.report.collapses},
                      {"skipped_edges", r.report.skipped_edges},
                      {"rejected_flips", r.report.rejected_flips},
                      {"rejected_max_error", r.report.rejected_max_error}}
                     .dump(2)
              << "\n";
  });

  auto* orient = pipeline->add_subcommand("orient", "Stand the mesh on its base at y = 0");
  orient->add_option("input", in_path)->required()->check(CLI::ExistingFile);
  orient->add_option("output", out_path)->required();
  orient->callback([&] {
    const auto [mesh, fix] = geometry::normalize_orientation(geometry::load_mesh_file(in_path));
    geometry::save_mesh_file(mesh, out_path);
    json rot = json::array();
    for (int i = 0; i < 3; ++i) rot.push_back({fix.rotation(i, 0), fix.rotation(i, 1), fix.rotation(i, 2)});
    std::cout << json{{"rotation", rot},
                      {"translation", vec_json(fix.translation)},
                      {"bottom_normal_before", vec_json(fix.bottom_normal_before)}}
                     .dump(2)
              << "\n";
  });

  auto* stats = pipeline->add_subcommand("stats", "Face/vertex counts, bounds, boundary loops");
  stats->add_option("input", in_path)->required()->check(CLI::ExistingFile);
  stats->callback([&] {
    std::cout << stats_json(geometry::mesh_stats(geometry::load_mesh_file(in_path))).dump(2) << "\n";
  });

  // ---- scene
  auto* scene_cmd = app.add_subcommand("scene", "Scene files");
  scene_cmd->require_subcommand(1);
  std::string scene_path;
  bool as_json = false;
  auto* validate = scene_cmd->add_subcommand("validate", "Check every scene rule");
  validate->add_option("scene", scene_path)->required()->check(CLI::ExistingFile);
  validate->add_flag("--json", as_json);
  validate->callback([&] {
    const auto report = scene::validate_scene(scene::load_scene_file(scene_path));
    if (as_json) {
      std::cout << scene::to_json(report).dump(2) << "\n";
    } else {
      for (const auto& f : report.findings) std::cout << f.code << "  " << f.subject << "  " << f.message << "\n";
      std::cout << (report.ok() ? "ok" : std::to_string(report.findings.size()) + " findings") << "\n";
    }
    if (!report.ok()) status = kFindings;
  });

  std::string out_dir;
  auto* demo = scene_cmd->add_subcommand("demo", "Write the demo scene and its assets");
  demo->add_option("dir", out_dir)->required();
  demo->callback([&] {
    scene::write_demo(out_dir);
    std::cout << "wrote " << (fs::path(out_dir) / "scene.json").string() << "\n";
  });

  // ---- serve
  std::string log_dir = "sessions", asset_dir, listen;
  std::size_t glb_faces = 5000;
  auto* serve = app.add_subcommand("serve", "HTTP API for the viewer");
  serve->add_option("--config", scene_path, "Scene JSON")->required()->check(CLI::ExistingFile);
  serve->add_option("--logs", log_dir, "Session log directory")->capture_default_str();
  serve->add_option("--assets", asset_dir, "Asset root (default: the scene's directory)");
  serve->add_option("--listen", listen, std::string("host:port (default: $") + gateway::kListenEnv + " or " +
                                            gateway::kDefaultListen + ")");
  serve->add_option("--glb-faces", glb_faces, "Face budget for served GLBs")->capture_default_str();
  serve->callback([&] {
    gateway::ServiceOptions opt;
    opt.log_dir = log_dir;
    opt.asset_root = asset_dir;
    opt.glb_target_faces = glb_faces;
    std::unique_ptr<gateway::SessionService> svc;
    try {
      svc = gateway::SessionService::open(scene_path, opt);
    } catch (const gateway::StartupError& e) {
      std::cerr << e.what() << "\n" << scene::to_json(e.report()).dump(2) << "\n";
      status = kError;
      return;
    }
    const auto addr = listen.empty() ? gateway::listen_address_from_env() : gateway::parse_listen_address(listen);
    gateway::HttpServer server(*svc);
    const int port = server.bind(addr);
    if (port < 0) {
      std::cerr << "cannot listen on " << addr.host << ":" << addr.port << "\n";
      status = kError;
      return;
    }
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "serving " << svc->engine().scene().scene_version << " on http://" << addr.host << ":" << port
              << " (" << svc->session_ids().size() << " sessions restored)" << std::endl;
    server.run();
    g_server = nullptr;
  });

  // ---- session
  auto* session = app.add_subcommand("session", "Session logs");
  session->require_subcommand(1);
  std::string log_path;
  bool torn = false;
  auto* replay = session->add_subcommand("replay", "Re-run a log through the game rules");
  replay->add_option("log", log_path)->required()->check(CLI::ExistingFile);
  replay->add_option("--config", scene_path, "Scene JSON")->required()->check(CLI::ExistingFile);
  replay->add_flag("--tolerate-torn-tail", torn, "Drop an unterminated last line");
  replay->add_flag("--json", as_json);
  replay->callback([&] {
    const game::GameEngine engine(std::make_shared<const scene::MuseumScene>(scene::load_scene_file(scene_path)));
    const auto log = sessionlog::read_log_file(log_path, {.tolerate_torn_tail = torn});
    const auto r = sessionlog::replay(log, engine);
    std::optional<std::int64_t> clearance;
    if (r.level3_pass_t && !log.events.empty()) clearance = *r.level3_pass_t - log.events.front().t;
    if (as_json) {
      json findings = json::array();
      for (const auto& f : r.findings)
        findings.push_back({{"index", f.index}, {"t", f.t}, {"code", f.code}, {"message", f.message}});
      std::cout << json{{"session_id", log.session_id},
                        {"events", log.events.size()},
                        {"final_state", game::to_json(r.final_state)},
                        {"findings", findings},
                        {"clearance_ms", clearance ? json(*clearance) : json(nullptr)}}
                       .dump(2)
                << "\n";
    } else {
      for (const auto& f : r.findings) std::cout << f.text() << "  " << f.message << "\n";
      std::cout << log.events.size() << " events, " << r.findings.size() << " findings, phase "
                << game::to_string(r.final_state.phase) << ", level " << r.final_state.current_level << "\n";
      if (clearance) std::cout << "clearance " << *clearance << " ms\n";
    }
  });

  // ---- analytics
  auto* an = app.add_subcommand("analytics", "Questionnaire and test-score statistics");
  an->require_subcommand(1);
  std::string csv_path;
  auto* sus = an->add_subcommand("sus", "SUS summary from id,q1..q10 rows");
  sus->add_option("file", csv_path)->required()->check(CLI::ExistingFile);
  sus->add_flag("--json", as_json);
  sus->callback([&] {
    const auto s = analytics::sus_summary(analytics::parse_sus_csv(analytics::read_text_file(csv_path)));
    if (as_json)
      std::cout << analytics::to_json(s).dump(2) << "\n";
    else
      print_sus(s);
  });

  std::string exact = "auto";
  analytics::MwuOptions mwu;
  auto* cmp = an->add_subcommand("compare", "Shapiro-Wilk per group and Mann-Whitney U from group,score rows");
  cmp->add_option("file", csv_path)->required()->check(CLI::ExistingFile);
  cmp->add_option("--exact", exact, "auto, monte-carlo or off")
      ->check(CLI::IsMember({"auto", "monte-carlo", "off"}))
      ->capture_default_str();
  cmp->add_option("--seed", mwu.seed, "Monte Carlo seed")->capture_default_str();
  cmp->add_option("--draws", mwu.draws, "Monte Carlo draws")->capture_default_str();
  cmp->add_flag("--json", as_json);
  cmp->callback([&] {
    mwu.exact = exact == "auto"          ? analytics::ExactMode::Auto
                : exact == "monte-carlo" ? analytics::ExactMode::MonteCarlo
                                         : analytics::ExactMode::Off;
    const auto r =
        analytics::compare_report(analytics::parse_comparison_csv(analytics::read_text_file(csv_path)), mwu);
    if (as_json)
      std::cout << r.dump(2) << "\n";
    else
      print_compare(r);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return status;
}
