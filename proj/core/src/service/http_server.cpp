#include "kgsim/service/http_server.hpp"

#include <thread>

#include <httplib.h>

#include "kgsim/error.hpp"

namespace kgsim::service {
namespace {

constexpr const char* kJson = "application/json";

QueryParams to_params(const httplib::Request& req) {
  // Repeated keys (q2=a&q2=b) are joined with commas.
  QueryParams params;
  for (const auto& [key, value] : req.params) {
    auto [it, inserted] = params.try_emplace(key, value);
    if (!inserted) it->second += "," + value;
  }
  return params;
}

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
  std::shared_ptr<const SimilarityApi> api;
  std::thread thread;
  bool bound = false;
};

HttpServer::HttpServer(std::shared_ptr<const SimilarityApi> api,
                       std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>()) {
  impl_->api = std::move(api);
  auto& server = impl_->server;
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  const auto route = [this](ApiResponse (SimilarityApi::*handler)(const QueryParams&) const) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      const auto response = ((*impl_->api).*handler)(to_params(req));
      res.status = response.status;
      res.set_content(response.body, kJson);
    };
  };
  server.Get("/similarity", route(&SimilarityApi::similarity));
  server.Get("/nearest-neighbors", route(&SimilarityApi::nearest_neighbors));
  server.Get("/search", route(&SimilarityApi::search));
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  if (static_dir && !server.set_mount_point("/", static_dir->string())) {
    throw ConfigError("static directory not found: " + static_dir->string());
  }

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(error_json(res.status == 404 ? "not found" : httplib::status_message(res.status)),
                      kJson);
    }
  });
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          message = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(error_json(message), kJson);
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& server = impl_->server;
  int bound_port = port;
  if (port == 0) {
    bound_port = server.bind_to_any_port(host);
    if (bound_port < 0) throw IoError("cannot bind " + host);
  } else if (!server.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return bound_port;
}

void HttpServer::listen() {
  if (!impl_->bound) throw Error("HttpServer::listen before bind");
  impl_->server.listen_after_bind();
}

void HttpServer::start_background() {
  if (!impl_->bound) throw Error("HttpServer::start_background before bind");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace kgsim::service
