#pragma once

// Per-sample losses and their analytic gradients for the two graph models.

#include <span>
#include <vector>

namespace kgsim {

enum class Norm { L1, L2 };

/// |h + r - t| under the chosen norm.
double transe_distance(std::span<const double> h, std::span<const double> r,
                       std::span<const double> t, Norm norm);

struct TransEGradients {
  std::vector<double> head, relation, tail, neg_head, neg_tail;
};

/// max(0, margin + d(h + r, t) - d(h' + r, t')). When `grads` is non-null its
/// five vectors are overwritten with the partial derivatives (zeros when the
/// hinge is inactive).
double transe_margin_loss(std::span<const double> h, std::span<const double> r,
                          std::span<const double> t, std::span<const double> neg_h,
                          std::span<const double> neg_t, double margin, Norm norm,
                          TransEGradients* grads);

/// Re(sum_k h_k r_k conj(t_k)) over the [re..., im...] storage layout.
double complex_score(std::span<const double> h, std::span<const double> r,
                     std::span<const double> t);

struct ComplExGradients {
  std::vector<double> head, relation, tail;
};

/// log(1 + exp(-label * score)) + lambda (|h|^2 + |r|^2 + |t|^2), label = +1 or -1.
double complex_logistic_loss(std::span<const double> h, std::span<const double> r,
                             std::span<const double> t, double label, double lambda,
                             ComplExGradients* grads);

}  // namespace kgsim
