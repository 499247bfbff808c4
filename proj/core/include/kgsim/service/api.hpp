#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kgsim/engine.hpp"

namespace kgsim::service {

using QueryParams = std::map<std::string, std::string, std::less<>>;

struct ApiResponse {
  int status = 200;
  std::string body;  // always JSON

  friend bool operator==(const ApiResponse&, const ApiResponse&) = default;
};

struct ApiOptions {
  std::size_t default_k = 10;
  std::size_t default_search_limit = 10;
  EmbeddingKind neighbors_table = EmbeddingKind::complex;
  std::vector<Algorithm> algorithms = all_algorithms();
};

/// Request handlers behind the HTTP routes. Pure functions of the immutable
/// engine, so they are safe to call from any number of threads.
class SimilarityApi {
 public:
  SimilarityApi(std::shared_ptr<const Engine> engine, ApiOptions options);

  /// GET /similarity?q1=<id>&q2=<id>[,<id>...][&explain=1]
  ApiResponse similarity(const QueryParams& params) const;
  /// GET /nearest-neighbors?qnode=<id>[&k=<int>][&table=transe|complex|text]
  ApiResponse nearest_neighbors(const QueryParams& params) const;
  /// GET /search?q=<text>[&limit=<int>]
  ApiResponse search(const QueryParams& params) const;

  const Engine& engine() const noexcept { return *engine_; }
  const ApiOptions& options() const noexcept { return options_; }

 private:
  std::shared_ptr<const Engine> engine_;
  ApiOptions options_;
};

/// [{"qnode": ..., "score": ..., "label": ...}, ...] in that field order.
std::string neighbors_json(std::span<const NeighborHit> hits);
std::string reports_json(std::span<const SimilarityReport> reports);
std::string search_json(std::span<const SearchHit> hits);
std::string error_json(const std::string& message);

}  // namespace kgsim::service
