#include "kgsim/service/api.hpp"

#include <charconv>

#include <json.hpp>

#include "kgsim/error.hpp"

namespace kgsim::service {
namespace {

using ordered_json = nlohmann::ordered_json;

ApiResponse ok(std::string body) { return {200, std::move(body)}; }
ApiResponse fail(int status, const std::string& message) { return {status, error_json(message)}; }

const std::string* find_param(const QueryParams& params, std::string_view key) {
  const auto it = params.find(key);
  return it == params.end() ? nullptr : &it->second;
}

/// Strictly positive integer, or nullopt.
std::optional<std::size_t> parse_positive(const std::string& text) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || v <= 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> ids;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    auto id = text.substr(start, comma - start);
    const auto first = id.find_first_not_of(' ');
    const auto last = id.find_last_not_of(' ');
    if (first != std::string::npos) ids.push_back(id.substr(first, last - first + 1));
    start = comma + 1;
  }
  return ids;
}

ordered_json report_to_json(const SimilarityReport& report) {
  ordered_json j;
  j["qnode1"] = report.qnode1;
  j["qnode2"] = report.qnode2;
  ordered_json scores = ordered_json::object();
  for (const auto& [algorithm, score] : report.scores) {
    const std::string key(to_string(algorithm));
    if (score) {
      scores[key] = *score;
    } else {
      scores[key] = nullptr;
    }
  }
  j["scores"] = std::move(scores);
  ordered_json labels = ordered_json::object();
  for (const auto& [id, label] : report.labels) labels[id] = label;
  j["labels"] = std::move(labels);
  if (report.explained) {
    ordered_json parents = ordered_json::array();
    for (const auto& p : report.shared_parents) {
      ordered_json pj;
      pj["qnode"] = p.qnode;
      pj["idf"] = p.idf;
      pj["label"] = p.label;
      parents.push_back(std::move(pj));
    }
    j["shared_parents"] = std::move(parents);
  }
  return j;
}

}  // namespace

std::string error_json(const std::string& message) {
  ordered_json j;
  j["error"] = message;
  return j.dump();
}

std::string neighbors_json(std::span<const NeighborHit> hits) {
  ordered_json arr = ordered_json::array();
  for (const auto& hit : hits) {
    ordered_json j;
    j["qnode"] = hit.qnode;
    j["score"] = hit.score;
    j["label"] = hit.label;
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

std::string reports_json(std::span<const SimilarityReport> reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& report : reports) arr.push_back(report_to_json(report));
  return arr.dump();
}

std::string search_json(std::span<const SearchHit> hits) {
  ordered_json arr = ordered_json::array();
  for (const auto& hit : hits) {
    ordered_json j;
    j["qnode"] = hit.qnode;
    j["label"] = hit.label;
    j["description"] = hit.description;
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

SimilarityApi::SimilarityApi(std::shared_ptr<const Engine> engine, ApiOptions options)
    : engine_(std::move(engine)), options_(std::move(options)) {
  if (!engine_ || !engine_->store) throw ConfigError("service needs a loaded graph");
  if (options_.default_k == 0) throw ConfigError("default k must be positive");
}

ApiResponse SimilarityApi::similarity(const QueryParams& params) const {
  const auto* q1 = find_param(params, "q1");
  const auto* q2 = find_param(params, "q2");
  if (!q1 || q1->empty()) return fail(400, "missing parameter q1");
  if (!q2) return fail(400, "missing parameter q2");
  const auto secondaries = split_ids(*q2);
  if (secondaries.empty()) return fail(400, "missing parameter q2");
  if (!engine_->knows(*q1)) return fail(404, "unknown node: " + *q1);

  const auto* explain_param = find_param(params, "explain");
  const bool explain = explain_param && (*explain_param == "1" || *explain_param == "true");

  std::vector<SimilarityReport> reports;
  reports.reserve(secondaries.size());
  for (const auto& q : secondaries) {
    reports.push_back(compare(*engine_, *q1, q, options_.algorithms, explain));
  }
  return ok(reports_json(reports));
}

ApiResponse SimilarityApi::nearest_neighbors(const QueryParams& params) const {
  const auto* qnode = find_param(params, "qnode");
  if (!qnode || qnode->empty()) return fail(400, "missing parameter qnode");

  std::size_t k = options_.default_k;
  if (const auto* k_param = find_param(params, "k")) {
    const auto parsed = parse_positive(*k_param);
    if (!parsed) return fail(400, "k must be a positive integer");
    k = *parsed;
  }

  EmbeddingKind kind = options_.neighbors_table;
  if (const auto* table = find_param(params, "table")) {
    try {
      kind = parse_embedding_kind(*table);
    } catch (const ConfigError& e) {
      return fail(400, e.what());
    }
  }
  const auto* index = engine_->index_for(kind);
  if (!index) return fail(404, "no " + std::string(to_string(kind)) + " embeddings loaded");

  try {
    const auto hits = index->nearest_neighbors(*qnode, k, engine_->label_lookup());
    return ok(neighbors_json(hits));
  } catch (const NotFoundError&) {
    return fail(404, "unknown node: " + *qnode);
  }
}

ApiResponse SimilarityApi::search(const QueryParams& params) const {
  std::size_t limit = options_.default_search_limit;
  if (const auto* limit_param = find_param(params, "limit")) {
    const auto parsed = parse_positive(*limit_param);
    if (!parsed) return fail(400, "limit must be a positive integer");
    limit = *parsed;
  }
  const auto* q = find_param(params, "q");
  if (!q || q->empty()) return ok("[]");
  return ok(search_json(engine_->store->search_labels(*q, limit)));
}

}  // namespace kgsim::service
