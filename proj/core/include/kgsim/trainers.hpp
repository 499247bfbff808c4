#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "kgsim/embedding_table.hpp"
#include "kgsim/graph_store.hpp"
#include "kgsim/losses.hpp"
#include "kgsim/training_graph.hpp"

namespace kgsim {

struct TrainConfig {
  std::size_t dim = 32;
  std::size_t epochs = 200;
  double learning_rate = 0.05;
  double margin = 1.0;  // TransE only
  std::size_t negatives = 5;
  std::size_t batch_size = 64;
  std::uint64_t seed = 42;
  Norm norm = Norm::L2;  // TransE distance
  double regularization = 1e-3;  // ComplEx L2 weight

  /// Throws ConfigError unless every numeric field is positive.
  void validate() const;
};

struct TrainResult {
  EmbeddingTable table;
  /// Mean per-sample loss of each epoch.
  std::vector<double> epoch_loss;
};

/// Called after each epoch with the 0-based epoch number and current table.
using EpochObserver = std::function<void(std::size_t, const EmbeddingTable&)>;

/// Margin ranking loss with filtered head/tail corruption, mini-batch SGD,
/// entity vectors renormalized to unit L2 norm after every epoch.
/// Throws ConfigError when the store has no node-to-node edges.
TrainResult train_transe(const GraphStore& store, const TrainConfig& config,
                         const EpochObserver& observer = {});

/// Logistic loss over the ComplEx trilinear score with L2 regularization.
TrainResult train_complex(const GraphStore& store, const TrainConfig& config,
                          const EpochObserver& observer = {});

/// The untrained table a trainer starts from (same seed, same draws).
EmbeddingTable initial_table(EmbeddingKind kind, const TrainingGraph& graph,
                             const TrainConfig& config);

}  // namespace kgsim
