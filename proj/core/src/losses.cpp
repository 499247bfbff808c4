#include "kgsim/losses.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace kgsim {
namespace {

// d(|x|)/dx for x = h + r - t, written into `out`.
double distance_and_direction(std::span<const double> h, std::span<const double> r,
                              std::span<const double> t, Norm norm, std::vector<double>& out) {
  const auto n = h.size();
  out.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = h[i] + r[i] - t[i];
    out[i] = x;
    acc += norm == Norm::L1 ? std::abs(x) : x * x;
  }
  if (norm == Norm::L1) {
    for (auto& x : out) x = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    return acc;
  }
  const double d = std::sqrt(acc);
  for (auto& x : out) x = d > 0.0 ? x / d : 0.0;
  return d;
}

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double transe_distance(std::span<const double> h, std::span<const double> r,
                       std::span<const double> t, Norm norm) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = h[i] + r[i] - t[i];
    acc += norm == Norm::L1 ? std::abs(x) : x * x;
  }
  return norm == Norm::L1 ? acc : std::sqrt(acc);
}

double transe_margin_loss(std::span<const double> h, std::span<const double> r,
                          std::span<const double> t, std::span<const double> neg_h,
                          std::span<const double> neg_t, double margin, Norm norm,
                          TransEGradients* grads) {
  const auto n = h.size();
  if (!grads) {
    const double v = margin + transe_distance(h, r, t, norm) - transe_distance(neg_h, r, neg_t, norm);
    return std::max(0.0, v);
  }
  std::vector<double> pos_dir, neg_dir;
  const double d_pos = distance_and_direction(h, r, t, norm, pos_dir);
  const double d_neg = distance_and_direction(neg_h, r, neg_t, norm, neg_dir);
  const double loss = margin + d_pos - d_neg;
  for (auto* g : {&grads->head, &grads->relation, &grads->tail, &grads->neg_head, &grads->neg_tail}) {
    g->assign(n, 0.0);
  }
  if (loss <= 0.0) return 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    grads->head[i] = pos_dir[i];
    grads->tail[i] = -pos_dir[i];
    grads->relation[i] = pos_dir[i] - neg_dir[i];
    grads->neg_head[i] = -neg_dir[i];
    grads->neg_tail[i] = neg_dir[i];
  }
  return loss;
}

double complex_score(std::span<const double> h, std::span<const double> r,
                     std::span<const double> t) {
  const auto d = h.size() / 2;
  const double* hr = h.data();
  const double* hi = h.data() + d;
  const double* rr = r.data();
  const double* ri = r.data() + d;
  const double* tr = t.data();
  const double* ti = t.data() + d;
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    s += hr[k] * rr[k] * tr[k] + hi[k] * rr[k] * ti[k] + hr[k] * ri[k] * ti[k] -
         hi[k] * ri[k] * tr[k];
  }
  return s;
}

double complex_logistic_loss(std::span<const double> h, std::span<const double> r,
                             std::span<const double> t, double label, double lambda,
                             ComplExGradients* grads) {
  const double score = complex_score(h, r, t);
  double reg = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) reg += h[i] * h[i] + r[i] * r[i] + t[i] * t[i];
  const double loss = softplus(-label * score) + lambda * reg;
  if (!grads) return loss;

  const auto w = h.size();
  const auto d = w / 2;
  grads->head.assign(w, 0.0);
  grads->relation.assign(w, 0.0);
  grads->tail.assign(w, 0.0);
  // dL/dscore
  const double g = -label * sigmoid(-label * score);
  for (std::size_t k = 0; k < d; ++k) {
    const double hr = h[k], hi = h[k + d], rr = r[k], ri = r[k + d], tr = t[k], ti = t[k + d];
    grads->head[k] = g * (rr * tr + ri * ti);
    grads->head[k + d] = g * (rr * ti - ri * tr);
    grads->relation[k] = g * (hr * tr + hi * ti);
    grads->relation[k + d] = g * (hr * ti - hi * tr);
    grads->tail[k] = g * (hr * rr - hi * ri);
    grads->tail[k + d] = g * (hi * rr + hr * ri);
  }
  for (std::size_t i = 0; i < w; ++i) {
    grads->head[i] += 2.0 * lambda * h[i];
    grads->relation[i] += 2.0 * lambda * r[i];
    grads->tail[i] += 2.0 * lambda * t[i];
  }
  return loss;
}

}  // namespace kgsim
