#include "kgsim/trainers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "kgsim/error.hpp"
#include "kgsim/random.hpp"

namespace kgsim {
namespace {

constexpr int kMaxCorruptionAttempts = 16;

void normalize(std::span<double> v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (n > 0.0) {
    for (double& x : v) x /= n;
  }
}

/// Dense gradient buffer that remembers which rows it touched.
class GradientBuffer {
 public:
  GradientBuffer(std::size_t rows, std::size_t width)
      : width_(width), data_(rows * width, 0.0), touched_flag_(rows, false) {}

  void add(std::size_t row, const std::vector<double>& g) {
    if (!touched_flag_[row]) {
      touched_flag_[row] = true;
      touched_.push_back(row);
    }
    double* dst = data_.data() + row * width_;
    for (std::size_t i = 0; i < width_; ++i) dst[i] += g[i];
  }

  /// block.row(r) -= lr * grad(r) for every touched row, then clears.
  void apply(VectorBlock& block, double lr) {
    for (auto row : touched_) {
      auto dst = block.row(row);
      double* g = data_.data() + row * width_;
      for (std::size_t i = 0; i < width_; ++i) {
        dst[i] -= lr * g[i];
        g[i] = 0.0;
      }
      touched_flag_[row] = false;
    }
    touched_.clear();
  }

 private:
  std::size_t width_;
  std::vector<double> data_;
  std::vector<bool> touched_flag_;
  std::vector<std::size_t> touched_;
};

/// Corrupts head or tail with equal probability, rejecting known facts.
std::optional<Triple> corrupt(const Triple& t, const TrainingGraph& graph, Rng& rng) {
  const auto n = graph.entities().size();
  for (int attempt = 0; attempt < kMaxCorruptionAttempts; ++attempt) {
    Triple c = t;
    const auto e = static_cast<std::uint32_t>(rng.index(n));
    if (rng.coin()) {
      c.head = e;
    } else {
      c.tail = e;
    }
    if (c != t && !graph.contains(c)) return c;
  }
  return std::nullopt;
}

TrainingGraph checked_graph(const GraphStore& store, const TrainConfig& config) {
  config.validate();
  auto graph = TrainingGraph::from_store(store);
  if (graph.triples().empty()) {
    throw ConfigError("no trainable triples: the graph has no node-to-node edges");
  }
  return graph;
}

std::vector<std::size_t> shuffled_order(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  return order;
}

void check_nonzero(const EmbeddingTable& table) {
  for (std::size_t i = 0; i < table.nodes().size(); ++i) {
    const auto row = table.nodes().row(i);
    if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; })) {
      throw Error("training produced an all-zero vector for " + table.nodes().ids()[i]);
    }
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (dim == 0 || epochs == 0 || negatives == 0 || batch_size == 0) {
    throw ConfigError("dim, epochs, negatives and batch size must be positive");
  }
  if (!(learning_rate > 0.0) || !(margin > 0.0) || !(regularization >= 0.0)) {
    throw ConfigError("learning rate and margin must be positive");
  }
}

EmbeddingTable initial_table(EmbeddingKind kind, const TrainingGraph& graph,
                             const TrainConfig& config) {
  EmbeddingTable table(kind, config.dim);
  Rng rng(config.seed);
  const auto width = table.width();
  const double bound = kind == EmbeddingKind::transe
                           ? 6.0 / std::sqrt(static_cast<double>(config.dim))
                           : 1.0 / std::sqrt(static_cast<double>(config.dim));
  std::vector<double> v(width);
  for (const auto& id : graph.entities()) {
    for (auto& x : v) x = rng.uniform(-bound, bound);
    if (kind == EmbeddingKind::transe) normalize(v);
    table.nodes().add(id, v);
  }
  for (const auto& id : graph.relations()) {
    for (auto& x : v) x = rng.uniform(-bound, bound);
    if (kind == EmbeddingKind::transe) normalize(v);
    table.relations().add(id, v);
  }
  return table;
}

TrainResult train_transe(const GraphStore& store, const TrainConfig& config,
                         const EpochObserver& observer) {
  const auto graph = checked_graph(store, config);
  TrainResult result{initial_table(EmbeddingKind::transe, graph, config), {}};
  auto& table = result.table;
  auto& entities = table.nodes();
  auto& relations = table.relations();
  const auto width = table.width();

  // Separate stream from the one used for initialization.
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  GradientBuffer entity_grad(entities.size(), width);
  GradientBuffer relation_grad(relations.size(), width);
  TransEGradients g;
  const auto& triples = graph.triples();

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const auto order = shuffled_order(triples.size(), rng);
    double loss_sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const auto stop = std::min(order.size(), start + config.batch_size);
      for (std::size_t i = start; i < stop; ++i) {
        const auto& pos = triples[order[i]];
        for (std::size_t n = 0; n < config.negatives; ++n) {
          const auto neg = corrupt(pos, graph, rng);
          if (!neg) continue;
          const double loss = transe_margin_loss(
              entities.row(pos.head), relations.row(pos.relation), entities.row(pos.tail),
              entities.row(neg->head), entities.row(neg->tail), config.margin, config.norm, &g);
          loss_sum += loss;
          ++pairs;
          if (loss <= 0.0) continue;
          entity_grad.add(pos.head, g.head);
          entity_grad.add(pos.tail, g.tail);
          entity_grad.add(neg->head, g.neg_head);
          entity_grad.add(neg->tail, g.neg_tail);
          relation_grad.add(pos.relation, g.relation);
        }
      }
      entity_grad.apply(entities, config.learning_rate);
      relation_grad.apply(relations, config.learning_rate);
    }
    for (std::size_t e = 0; e < entities.size(); ++e) normalize(entities.row(e));
    result.epoch_loss.push_back(pairs ? loss_sum / static_cast<double>(pairs) : 0.0);
    if (observer) observer(epoch, table);
  }
  check_nonzero(table);
  return result;
}

TrainResult train_complex(const GraphStore& store, const TrainConfig& config,
                          const EpochObserver& observer) {
  const auto graph = checked_graph(store, config);
  TrainResult result{initial_table(EmbeddingKind::complex, graph, config), {}};
  auto& table = result.table;
  auto& entities = table.nodes();
  auto& relations = table.relations();
  const auto width = table.width();

  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  GradientBuffer entity_grad(entities.size(), width);
  GradientBuffer relation_grad(relations.size(), width);
  ComplExGradients g;
  const auto& triples = graph.triples();

  auto step = [&](const Triple& t, double label) {
    const double loss = complex_logistic_loss(entities.row(t.head), relations.row(t.relation),
                                              entities.row(t.tail), label,
                                              config.regularization, &g);
    entity_grad.add(t.head, g.head);
    entity_grad.add(t.tail, g.tail);
    relation_grad.add(t.relation, g.relation);
    return loss;
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const auto order = shuffled_order(triples.size(), rng);
    double loss_sum = 0.0;
    std::size_t samples = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const auto stop = std::min(order.size(), start + config.batch_size);
      for (std::size_t i = start; i < stop; ++i) {
        const auto& pos = triples[order[i]];
        loss_sum += step(pos, 1.0);
        ++samples;
        for (std::size_t n = 0; n < config.negatives; ++n) {
          const auto neg = corrupt(pos, graph, rng);
          if (!neg) continue;
          loss_sum += step(*neg, -1.0);
          ++samples;
        }
      }
      entity_grad.apply(entities, config.learning_rate);
      relation_grad.apply(relations, config.learning_rate);
    }
    result.epoch_loss.push_back(loss_sum / static_cast<double>(samples));
    if (observer) observer(epoch, table);
  }
  check_nonzero(table);
  return result;
}

}  // namespace kgsim
