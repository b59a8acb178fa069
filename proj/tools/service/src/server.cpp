#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <thread>

#include "entwined/service.hpp"

// must follow Eigen: resolv.h defines _res
#include <httplib.h>

namespace entwined::service {

namespace {

std::atomic<bool> g_stop_requested{false};

extern "C" void on_signal(int) { g_stop_requested.store(true); }

} // namespace

int serve(Service& service, const ServerOptions& options) {
  if (options.snapshot_dir) {
    const auto n = service.store().load_all(*options.snapshot_dir);
    std::clog << "loaded " << n << " session snapshot(s) from " << options.snapshot_dir->string() << '\n';
  }

  httplib::Server server;
  if (!options.allow_origin.empty()) {
    server.set_default_headers({{"Access-Control-Allow-Origin", options.allow_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
  }
  server.set_pre_routing_handler([&](const httplib::Request& req, httplib::Response& res) {
    if (req.method == "OPTIONS") {
      res.status = 204;
      return httplib::Server::HandlerResponse::Handled;
    }
    const auto out = service.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
    return httplib::Server::HandlerResponse::Handled;
  });

  g_stop_requested.store(false);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::jthread watcher([&](std::stop_token token) {
    while (!token.stop_requested() && !g_stop_requested.load()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    server.stop();
  });

  std::clog << "listening on http://" << options.host << ':' << options.port << '\n';
  const bool ok = server.listen(options.host, options.port);
  watcher.request_stop();
  watcher.join();

  if (options.snapshot_dir) {
    service.store().save_all(*options.snapshot_dir);
    std::clog << "saved session snapshots to " << options.snapshot_dir->string() << '\n';
  }
  if (!ok && !g_stop_requested.load()) {
    std::cerr << ApiError{ApiCode::Internal, "could not listen on " + options.host + ":" + std::to_string(options.port), ""}
                     .to_json()
                     .dump()
              << '\n';
    return exit_code(ApiCode::Internal);
  }
  return 0;
}

} // namespace entwined::service
