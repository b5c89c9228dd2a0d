#include "http_server.hpp"

#include <httplib.h>

namespace foresight::http {

void mount(httplib::Server& server, const api::Service& service, const ServerConfig& cfg) {
  auto reply = [&service, cors = cfg.dev_cors](const httplib::Request& req, httplib::Response& res) {
    const auto r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json; charset=utf-8");
    if (cors) res.set_header("Access-Control-Allow-Origin", "*");
  };
  server.Get(R"(/api/.*)", reply);
  server.Post(R"(/api/.*)", reply);
  if (cfg.dev_cors) {
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
  }
  if (!cfg.static_dir.empty()) server.set_mount_point("/", cfg.static_dir);
}

bool serve(const api::Service& service, const ServerConfig& cfg) {
  httplib::Server server;
  mount(server, service, cfg);
  return server.listen(cfg.host, cfg.port);
}

}  // namespace foresight::http
