#pragma once

#include <cstddef>
#include <cstdint>

#include "kgsim/embedding_table.hpp"
#include "kgsim/losses.hpp"
#include "kgsim/training_graph.hpp"

namespace kgsim {

struct RankingReport {
  double mean_rank = 0.0;
  double hits_at_k = 0.0;  // fraction in [0, 1]
  std::size_t evaluated = 0;
};

/// Plausibility of (h, r, t) under the table's model: -distance for TransE,
/// the trilinear score for ComplEx. Higher is more plausible.
double triple_plausibility(const EmbeddingTable& table, std::span<const double> h,
                           std::span<const double> r, std::span<const double> t,
                           Norm norm = Norm::L2);

/// Tail prediction over every triple of `graph`: the true tail is ranked
/// against the other candidates (ties count against it). With
/// `candidates == 0` all entities compete; otherwise the true tail and
/// candidates-1 distinct random entities, drawn with `seed`.
RankingReport evaluate_tail_prediction(const EmbeddingTable& table, const TrainingGraph& graph,
                                       std::size_t hits_k, Norm norm = Norm::L2,
                                       std::size_t candidates = 0, std::uint64_t seed = 0);

}  // namespace kgsim
