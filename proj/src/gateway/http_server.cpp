#include "curate/gateway/http_server.hpp"

#include <cstdlib>
#include <stdexcept>

#include "httplib.h"

namespace curate::gateway {

ListenAddress parse_listen_address(const std::string& s) {
  const auto colon = s.rfind(':');
  if (colon == std::string::npos) throw std::invalid_argument("listen address needs host:port, got \"" + s + "\"");
  ListenAddress a;
  a.host = s.substr(0, colon);
  if (a.host.size() >= 2 && a.host.front() == '[' && a.host.back() == ']') a.host = a.host.substr(1, a.host.size() - 2);
  if (a.host.empty()) a.host = "0.0.0.0";
  const std::string port = s.substr(colon + 1);
  std::size_t used = 0;
  try {
    a.port = std::stoi(port, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (port.empty() || used != port.size() || a.port < 0 || a.port > 65535)
    throw std::invalid_argument("bad port in listen address \"" + s + "\"");
  return a;
}

ListenAddress listen_address_from_env() {
  const char* v = std::getenv(kListenEnv);
  return parse_listen_address(v && *v ? v : kDefaultListen);
}

namespace {

void send(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  for (const auto& [k, v] : r.headers) res.set_header(k, v);
  res.set_content(r.body, r.content_type);
}

}  // namespace

HttpServer::HttpServer(SessionService& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  // The viewer may be served from another origin.
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Headers", "Content-Type"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  s.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  s.Get("/api/scene", [this](const httplib::Request&, httplib::Response& res) { send(res, service_.get_scene()); });
  s.Get(R"(/api/assets/([^/]+)\.glb)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_asset_glb(req.matches[1]));
  });
  s.Get(R"(/api/exhibits/([^/]+)/knowledge)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_knowledge(req.matches[1]));
  });
  s.Post("/api/sessions", [this](const httplib::Request&, httplib::Response& res) {
    send(res, service_.create_session());
  });
  s.Get(R"(/api/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_session(req.matches[1]));
  });
  s.Post(R"(/api/sessions/([^/]+)/actions)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.post_action(req.matches[1], req.body));
  });
  s.Post(R"(/api/sessions/([^/]+)/submit)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.post_submit(req.matches[1], req.body));
  });
  s.Post("/api/analytics/sus", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.analytics_sus(req.body, req.get_header_value("Content-Type")));
  });
  s.Post("/api/analytics/compare", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.analytics_compare(req.body, req.get_header_value("Content-Type")));
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send(res, error_response(500, "internal", what));
  });
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, error_response(res.status, "not-found", "no such route"));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const ListenAddress& addr) {
  if (addr.port == 0) return server_->bind_to_any_port(addr.host);
  return server_->bind_to_port(addr.host, addr.port) ? addr.port : -1;
}

bool HttpServer::run() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

}  // namespace curate::gateway
