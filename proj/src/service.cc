#include "hive/service.h"

#include <csignal>
#include <ctime>
#include <iostream>
#include <thread>

#include "http.h"

namespace hive {

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, std::string_view message) {
  send_json(res, http_status(code), error_json(code, message));
}

template <typename F>
void guarded(httplib::Response& res, F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_error(res, e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    send_error(res, ErrorCode::kInvalidArgument, e.what());
  } catch (const std::exception& e) {
    send_error(res, ErrorCode::kInternal, e.what());
  }
}

std::string param(const httplib::Request& req, const char* name) {
  return req.has_param(name) ? req.get_param_value(name) : std::string();
}

Page page_of(const httplib::Request& req) { return Page::parse(param(req, "offset"), param(req, "limit")); }

}  // namespace

struct Service::Impl {
  Api& api;
  ServiceOptions options;
  httplib::Server server;
  int port = -1;

  Impl(Api& a, ServiceOptions o) : api(a), options(std::move(o)) {
    // Without SO_REUSEPORT a second server on a busy port fails instead of
    // silently sharing it.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    routes();
  }

  void routes() {
    server.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, api.healthz()); });
    });
    server.Get("/ontologies", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, api.list_ontologies()); });
    });
    server.Post("/ontologies", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        if (!req.is_multipart_form_data() || !req.has_file("file")) {
          throw Error(ErrorCode::kInvalidArgument, "multipart field 'file' is required");
        }
        const auto file = req.get_file_value("file");
        const auto field = [&](const char* name) {
          return req.has_file(name) ? req.get_file_value(name).content : std::string();
        };
        std::string id = field("id");
        std::string format = field("format");
        send_json(res, 201, api.ingest(file.content, file.filename, id, format.empty() ? "auto" : format,
                                       field("display_name")));
      });
    });
    server.Delete("/ontologies/:id", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, api.delete_ontology(req.path_params.at("id"))); });
    });
    server.Get("/ontologies/:id/roots", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, api.roots(req.path_params.at("id"), page_of(req))); });
    });
    server.Get("/ontologies/:id/concept", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, api.concept_detail(req.path_params.at("id"), param(req, "uri"))); });
    });
    server.Get("/ontologies/:id/children", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        send_json(res, 200, api.children(req.path_params.at("id"), param(req, "uri"), page_of(req)));
      });
    });
    server.Get("/search", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, api.search(param(req, "q"), split_ids(param(req, "onts")), page_of(req))); });
    });
    server.Post("/index", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        nlohmann::json body;
        try {
          body = nlohmann::json::parse(req.body);
        } catch (const nlohmann::json::parse_error& e) {
          throw Error(ErrorCode::kInvalidArgument, std::string("request body is not JSON: ") + e.what());
        }
        send_json(res, 200, api.index(IndexRequest::from_json(body)));
      });
    });
    server.Get("/concept/encoding", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto encoded = api.encoding(param(req, "ont"), param(req, "uri"), param(req, "format"));
        res.status = 200;
        res.set_content(encoded.body, encoded.content_type + "; charset=utf-8");
      });
    });
    if (!options.ui_dir.empty()) {
      if (!server.set_mount_point("/ui", options.ui_dir.string())) {
        throw Error(ErrorCode::kIo, "UI directory not found: " + options.ui_dir.string());
      }
    }
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      const ErrorCode code = res.status == 404 ? ErrorCode::kNotFound : ErrorCode::kInvalidArgument;
      const int status = res.status;
      send_error(res, code, "no route for " + req.method + " " + req.path);
      res.status = status;
    });
  }
};

Service::Service(Api& api, ServiceOptions options) : impl_(std::make_unique<Impl>(api, std::move(options))) {}

Service::~Service() { stop(); }

int Service::bind() {
  auto& s = impl_->server;
  const int requested = impl_->options.port;
  const int port = requested == 0 ? s.bind_to_any_port(impl_->options.host)
                                  : (s.bind_to_port(impl_->options.host, requested) ? requested : -1);
  if (port < 0) {
    throw Error(ErrorCode::kIo, "cannot listen on " + impl_->options.host + ":" + std::to_string(requested) +
                                    " (port busy or not permitted)");
  }
  impl_->port = port;
  return port;
}

void Service::run() {
  if (impl_->port < 0) bind();
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool Service::running() const { return impl_->server.is_running(); }

void serve_until_signal(Api& api, const ServiceOptions& options) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  // Block before any thread exists so only the waiter sees them.
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Service service(api, options);
  const int port = service.bind();
  std::cerr << "hive: listening on http://" << options.host << ":" << port << "\n";

  std::atomic<bool> done{false};
  std::thread waiter([&] {
    const timespec tick{0, 200'000'000};
    while (!done) {
      if (sigtimedwait(&signals, nullptr, &tick) > 0) {
        std::cerr << "hive: shutting down\n";
        service.stop();
        return;
      }
    }
  });
  service.run();
  done = true;
  waiter.join();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
}

}  // namespace hive
