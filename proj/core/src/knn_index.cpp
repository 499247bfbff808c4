#include "kgsim/knn_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "binary_io.hpp"
#include "kgsim/error.hpp"
#include "kgsim/random.hpp"

namespace kgsim {
namespace {

constexpr char kMagic[5] = "KGKN";
constexpr std::uint32_t kVersion = 1;

std::size_t nearest_centroid(Metric metric, std::span<const double> v,
                             const std::vector<double>& centroids, std::size_t width) {
  std::size_t best = 0;
  double best_d = 0.0;
  const auto count = centroids.size() / width;
  for (std::size_t c = 0; c < count; ++c) {
    const double d = distance(metric, v, {centroids.data() + c * width, width});
    if (c == 0 || d < best_d) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(Metric metric) {
  return metric == Metric::euclidean ? "euclidean" : "cosine";
}

std::string_view to_string(IndexMode mode) {
  return mode == IndexMode::exact ? "exact" : "partitioned";
}

Metric parse_metric(std::string_view name) {
  if (name == "euclidean" || name == "l2") return Metric::euclidean;
  if (name == "cosine") return Metric::cosine;
  throw ConfigError("unknown metric: " + std::string(name));
}

IndexMode parse_index_mode(std::string_view name) {
  if (name == "exact") return IndexMode::exact;
  if (name == "partitioned" || name == "ivf") return IndexMode::partitioned;
  throw ConfigError("unknown index mode: " + std::string(name));
}

double distance(Metric metric, std::span<const double> a, std::span<const double> b) {
  if (metric == Metric::euclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 1.0;
  return std::clamp(1.0 - dot / std::sqrt(aa * bb), 0.0, 2.0);
}

KnnIndex KnnIndex::build(const EmbeddingTable& table, const IndexConfig& config) {
  const auto& nodes = table.nodes();
  if (nodes.empty()) throw ConfigError("cannot index an empty table");
  KnnIndex index;
  index.config_ = config;
  index.width_ = nodes.width();
  index.ids_ = nodes.ids();
  index.vectors_.assign(nodes.data().begin(), nodes.data().end());
  const auto n = nodes.size();
  const auto w = index.width_;

  if (config.mode == IndexMode::exact) {
    index.config_.partitions = 1;
    index.config_.probes = 1;
    index.partitions_.assign(1, std::vector<std::uint32_t>(n));
    std::iota(index.partitions_[0].begin(), index.partitions_[0].end(), 0);
    index.rebuild_lookup();
    return index;
  }

  const auto p = config.partitions;
  if (p == 0 || p > n) throw ConfigError("partition count must be in [1, node count]");
  if (config.probes == 0 || config.probes > p) {
    throw ConfigError("probes must be in [1, partition count]");
  }

  // Seeded initial centroids, sampled without replacement.
  Rng rng(config.seed);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  index.centroids_.resize(p * w);
  for (std::size_t c = 0; c < p; ++c) {
    std::swap(pool[c], pool[c + rng.index(n - c)]);
    const auto src = index.row(pool[c]);
    std::copy(src.begin(), src.end(), index.centroids_.begin() + static_cast<std::ptrdiff_t>(c * w));
  }

  std::vector<std::size_t> assignment(n, 0);
  std::vector<double> sums(p * w);
  std::vector<std::size_t> counts(p);
  for (std::size_t iter = 0; iter < config.kmeans_iterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      assignment[i] = nearest_centroid(config.metric, index.row(i), index.centroids_, w);
    }
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = index.row(i);
      auto* dst = sums.data() + assignment[i] * w;
      for (std::size_t j = 0; j < w; ++j) dst[j] += v[j];
      ++counts[assignment[i]];
    }
    std::vector<bool> reseeded(n, false);
    for (std::size_t c = 0; c < p; ++c) {
      auto* centroid = index.centroids_.data() + c * w;
      if (counts[c] > 0) {
        for (std::size_t j = 0; j < w; ++j) centroid[j] = sums[c * w + j] / static_cast<double>(counts[c]);
        continue;
      }
      // Empty cluster: move it onto the point farthest from its own centroid.
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (reseeded[i]) continue;
        const double d = distance(config.metric, index.row(i), index.centroid(assignment[i]));
        if (d > far_d) {
          far = i;
          far_d = d;
        }
      }
      reseeded[far] = true;
      const auto src = index.row(far);
      std::copy(src.begin(), src.end(), centroid);
    }
  }

  index.partitions_.assign(p, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = nearest_centroid(config.metric, index.row(i), index.centroids_, w);
    index.partitions_[c].push_back(static_cast<std::uint32_t>(i));
  }
  index.rebuild_lookup();
  return index;
}

void KnnIndex::rebuild_lookup() {
  sorted_ids_.clear();
  sorted_ids_.reserve(ids_.size());
  for (std::uint32_t i = 0; i < ids_.size(); ++i) sorted_ids_.emplace_back(ids_[i], i);
  std::sort(sorted_ids_.begin(), sorted_ids_.end());
}

KnnIndex KnnIndex::with_probes(std::size_t probes) const {
  if (probes == 0 || probes > partitions_.size()) {
    throw ConfigError("probes must be in [1, partition count]");
  }
  KnnIndex copy = *this;
  copy.config_.probes = probes;
  return copy;
}

std::vector<NeighborHit> KnnIndex::nearest_neighbors(std::string_view qnode, std::size_t k,
                                                     const LabelLookup& labels) const {
  const auto it = std::lower_bound(
      sorted_ids_.begin(), sorted_ids_.end(), qnode,
      [](const std::pair<std::string, std::uint32_t>& e, std::string_view id) { return e.first < id; });
  if (it == sorted_ids_.end() || it->first != qnode) throw NotFoundError(std::string(qnode));
  return search(row(it->second), k, it->second, labels);
}

std::vector<NeighborHit> KnnIndex::search(std::span<const double> query, std::size_t k,
                                          std::optional<std::size_t> exclude,
                                          const LabelLookup& labels) const {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (query.size() != width_) throw Error("query vector has the wrong width");

  std::vector<std::size_t> probe_order(partitions_.size());
  std::iota(probe_order.begin(), probe_order.end(), 0);
  if (config_.mode == IndexMode::partitioned && config_.probes < partitions_.size()) {
    std::vector<double> cd(partitions_.size());
    for (std::size_t c = 0; c < cd.size(); ++c) cd[c] = distance(config_.metric, query, centroid(c));
    std::stable_sort(probe_order.begin(), probe_order.end(),
                     [&](std::size_t a, std::size_t b) { return cd[a] < cd[b]; });
    probe_order.resize(config_.probes);
  }

  struct Candidate {
    double score;
    std::uint32_t row;
  };
  std::vector<Candidate> candidates;
  for (auto c : probe_order) {
    for (auto i : partitions_[c]) {
      if (exclude && i == *exclude) continue;
      candidates.push_back({distance(config_.metric, query, row(i)), i});
    }
  }
  const auto by_score_then_id = [this](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score < b.score;
    return ids_[a.row] < ids_[b.row];
  };
  const auto take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), by_score_then_id);

  std::vector<NeighborHit> hits;
  hits.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const auto& id = ids_[candidates[i].row];
    hits.push_back({id, candidates[i].score, labels ? labels(id) : std::string()});
  }
  return hits;
}

void KnnIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write index: " + path.string());
  save(out);
  if (!out) throw IoError("write failure: " + path.string());
}

void KnnIndex::save(std::ostream& out) const {
  using namespace detail;
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(config_.metric));
  put_u32(out, static_cast<std::uint32_t>(config_.mode));
  put_u64(out, config_.partitions);
  put_u64(out, config_.probes);
  put_u64(out, config_.kmeans_iterations);
  put_u64(out, config_.seed);
  put_u64(out, width_);
  put_u64(out, ids_.size());
  for (const auto& id : ids_) put_string(out, id);
  for (double v : vectors_) put_f64(out, v);
  put_u64(out, centroids_.size());
  for (double v : centroids_) put_f64(out, v);
  put_u64(out, partitions_.size());
  for (const auto& part : partitions_) {
    put_u64(out, part.size());
    for (auto i : part) put_u32(out, i);
  }
}

KnnIndex KnnIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open index: " + path.string());
  return load(in);
}

KnnIndex KnnIndex::load(std::istream& in) {
  using namespace detail;
  expect_magic(in, kMagic);
  if (get_u32(in) != kVersion) throw IoError("unsupported index version");
  KnnIndex index;
  const auto metric = get_u32(in);
  const auto mode = get_u32(in);
  if (metric > 1 || mode > 1) throw IoError("corrupt index header");
  index.config_.metric = static_cast<Metric>(metric);
  index.config_.mode = static_cast<IndexMode>(mode);
  index.config_.partitions = get_u64(in);
  index.config_.probes = get_u64(in);
  index.config_.kmeans_iterations = get_u64(in);
  index.config_.seed = get_u64(in);
  index.width_ = get_u64(in);
  const auto n = get_u64(in);
  index.ids_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) index.ids_.push_back(get_string(in));
  index.vectors_.resize(n * index.width_);
  for (double& v : index.vectors_) v = get_f64(in);
  index.centroids_.resize(get_u64(in));
  for (double& v : index.centroids_) v = get_f64(in);
  index.partitions_.resize(get_u64(in));
  for (auto& part : index.partitions_) {
    part.resize(get_u64(in));
    for (auto& i : part) {
      i = get_u32(in);
      if (i >= n) throw IoError("corrupt index: row out of range");
    }
  }
  index.rebuild_lookup();
  return index;
}

}  // namespace kgsim
