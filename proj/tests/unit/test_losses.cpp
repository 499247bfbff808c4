#include <gtest/gtest.h>

#include <cmath>

#include "kgsim/losses.hpp"
#include "kgsim/random.hpp"
#include "oracles.hpp"

namespace kgsim {
namespace {

using testing::naive_complex_score;
using testing::numeric_gradient;
using testing::gradient_error;

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-scale, scale);
  return v;
}

TEST(ComplexScore, HandValue) {
  // h = 1 + 0i, r = 0 + 1i, t = 0 + 1i: Re(1 * i * -i) = 1.
  const std::vector<double> h{1, 0}, r{0, 1}, t{0, 1};
  EXPECT_EQ(complex_score(h, r, t), 1.0);
}

TEST(ComplexScore, RealIdentityRelationGivesSquaredNorm) {
  Rng rng(5);
  const auto h = random_vector(rng, 8);
  std::vector<double> r(8, 0.0);
  for (std::size_t k = 0; k < 4; ++k) r[k] = 1.0;
  double norm2 = 0.0;
  for (double x : h) norm2 += x * x;
  EXPECT_NEAR(complex_score(h, r, h), norm2, 1e-12);
  EXPECT_GE(complex_score(h, r, h), 0.0);
}

TEST(ComplexScore, MatchesNaiveComplexLoop) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto w = 2 * (1 + rng.index(16));
    const auto h = random_vector(rng, w, 2), r = random_vector(rng, w, 2), t = random_vector(rng, w, 2);
    EXPECT_NEAR(complex_score(h, r, t), naive_complex_score(h, r, t), 1e-9);
  }
}

TEST(TransEDistance, Norms) {
  const std::vector<double> h{1, 2}, r{0, 1}, t{4, -1};
  // h + r - t = (-3, 4)
  EXPECT_EQ(transe_distance(h, r, t, Norm::L2), 5.0);
  EXPECT_EQ(transe_distance(h, r, t, Norm::L1), 7.0);
}

TEST(TransEMarginLoss, InactiveHingeHasZeroGradient) {
  const std::vector<double> h{0, 0}, r{1, 0}, t{1, 0}, nh{5, 5}, nt{0, 0};
  TransEGradients g;
  EXPECT_EQ(transe_margin_loss(h, r, t, nh, nt, 1.0, Norm::L2, &g), 0.0);
  for (double x : g.head) EXPECT_EQ(x, 0.0);
}

void check_transe_gradients(Norm norm, std::uint64_t seed) {
  Rng rng(seed);
  int checked = 0;
  while (checked < 100) {
    const auto dim = 1 + rng.index(8);
    auto h = random_vector(rng, dim), r = random_vector(rng, dim), t = random_vector(rng, dim);
    auto nh = random_vector(rng, dim), nt = random_vector(rng, dim);
    const double margin = rng.uniform(0.5, 3.0);
    // Skip draws near a kink, where no derivative exists.
    const double hinge = margin + transe_distance(h, r, t, norm) - transe_distance(nh, r, nt, norm);
    bool near_kink = std::abs(hinge) < 1e-3 || transe_distance(h, r, t, norm) < 1e-3 ||
                     transe_distance(nh, r, nt, norm) < 1e-3;
    if (norm == Norm::L1) {
      for (std::size_t i = 0; i < dim; ++i) {
        near_kink |= std::abs(h[i] + r[i] - t[i]) < 1e-3 || std::abs(nh[i] + r[i] - nt[i]) < 1e-3;
      }
    }
    if (near_kink) continue;

    TransEGradients g;
    transe_margin_loss(h, r, t, nh, nt, margin, norm, &g);
    const auto f = [&] { return transe_margin_loss(h, r, t, nh, nt, margin, norm, nullptr); };
    EXPECT_LE(gradient_error(g.head, numeric_gradient(f, h)), 1e-3);
    EXPECT_LE(gradient_error(g.relation, numeric_gradient(f, r)), 1e-3);
    EXPECT_LE(gradient_error(g.tail, numeric_gradient(f, t)), 1e-3);
    EXPECT_LE(gradient_error(g.neg_head, numeric_gradient(f, nh)), 1e-3);
    EXPECT_LE(gradient_error(g.neg_tail, numeric_gradient(f, nt)), 1e-3);
    ++checked;
  }
}

TEST(TransEMarginLoss, GradientMatchesFiniteDifferencesL2) { check_transe_gradients(Norm::L2, 21); }
TEST(TransEMarginLoss, GradientMatchesFiniteDifferencesL1) { check_transe_gradients(Norm::L1, 22); }

TEST(ComplexLogisticLoss, GradientMatchesFiniteDifferences) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto w = 2 * (1 + rng.index(8));
    auto h = random_vector(rng, w), r = random_vector(rng, w), t = random_vector(rng, w);
    const double label = rng.coin() ? 1.0 : -1.0;
    const double lambda = rng.uniform(0.0, 0.1);
    ComplExGradients g;
    complex_logistic_loss(h, r, t, label, lambda, &g);
    const auto f = [&] { return complex_logistic_loss(h, r, t, label, lambda, nullptr); };
    EXPECT_LE(gradient_error(g.head, numeric_gradient(f, h)), 1e-3);
    EXPECT_LE(gradient_error(g.relation, numeric_gradient(f, r)), 1e-3);
    EXPECT_LE(gradient_error(g.tail, numeric_gradient(f, t)), 1e-3);
  }
}

TEST(ComplexLogisticLoss, StableForLargeScores) {
  const std::vector<double> h{30, 0}, r{30, 0}, t{30, 0};
  EXPECT_TRUE(std::isfinite(complex_logistic_loss(h, r, t, -1.0, 0.0, nullptr)));
  EXPECT_NEAR(complex_logistic_loss(h, r, t, 1.0, 0.0, nullptr), 0.0, 1e-12);
}

}  // namespace
}  // namespace kgsim
