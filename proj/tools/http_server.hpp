#pragma once

#include <functional>
#include <string>

#include "foresight/api.hpp"

namespace httplib {
class Server;
}

namespace foresight::http {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  bool dev_cors = false;      // Access-Control-Allow-Origin: *
  std::string static_dir;     // served at / when set
};

/// Registers the /api routes of `service` on `server`.
void mount(httplib::Server& server, const api::Service& service, const ServerConfig& cfg);

/// Blocks serving until the process is stopped. Returns false when the
/// address cannot be bound.
bool serve(const api::Service& service, const ServerConfig& cfg);

}  // namespace foresight::http
