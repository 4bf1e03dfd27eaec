#pragma once

#include <memory>
#include <string>

#include "curate/gateway/service.hpp"

namespace httplib {
class Server;
}

namespace curate::gateway {

inline constexpr const char* kListenEnv = "CURATE_LISTEN";
inline constexpr const char* kDefaultListen = "127.0.0.1:8080";

struct ListenAddress {
  std::string host;
  int port = 0;
};

// "host:port", "[v6]:port" or ":port". Throws std::invalid_argument.
ListenAddress parse_listen_address(const std::string& s);

// $CURATE_LISTEN or the default.
ListenAddress listen_address_from_env();

//   GET  /api/scene
//   GET  /api/assets/{id}.glb
//   GET  /api/exhibits/{id}/knowledge
//   POST /api/sessions
//   GET  /api/sessions/{id}
//   POST /api/sessions/{id}/actions
//   POST /api/sessions/{id}/submit
//   POST /api/analytics/sus
//   POST /api/analytics/compare
class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();

  // Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const ListenAddress& addr);
  // Blocks until stop().
  bool run();
  void stop();

 private:
  SessionService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace curate::gateway
