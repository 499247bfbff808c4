#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "kgsim/service/api.hpp"

namespace kgsim::service {

/// HTTP/1.1 front end for SimilarityApi. Every response, including errors and
/// unknown routes, carries a JSON body and permissive CORS headers.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<const SimilarityApi> api,
                      std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port.
  /// Throws IoError if binding fails.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires bind().
  void listen();
  /// bind() has happened; runs listen() on a background thread.
  void start_background();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kgsim::service
