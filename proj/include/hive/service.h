#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "hive/api.h"

namespace hive {

struct ServiceOptions {
  std::string host = "0.0.0.0";
  int port = 8080;                 // 0 picks a free port
  std::filesystem::path ui_dir;    // static assets served under /ui when set
};

// HTTP/JSON front end over an Api. Handlers run on the server's thread pool.
class Service {
 public:
  Service(Api& api, ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the socket and returns the port. A busy port throws kIo.
  int bind();
  /// Serves until stop(); bind() must have succeeded.
  void run();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binds, prints the listening address to stderr and serves until SIGINT or
/// SIGTERM. Returns once the server has shut down.
void serve_until_signal(Api& api, const ServiceOptions& options);

}  // namespace hive
