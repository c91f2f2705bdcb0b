#include <gtest/gtest.h>

#include "nar/optim/scaled_conjugate_gradient.hpp"
#include "nar/random.hpp"

namespace nar::optim {
namespace {

struct Quadratic {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

Quadratic random_spd(std::uint64_t seed, Eigen::Index p) {
  Rng rng(seed);
  Eigen::MatrixXd m(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) m(i, j) = rng.normal();
  }
  Quadratic q{m.transpose() * m + Eigen::MatrixXd::Identity(p, p), Eigen::VectorXd(p)};
  for (Eigen::Index i = 0; i < p; ++i) q.b[i] = rng.normal();
  return q;
}

Objective as_objective(const Quadratic& q) {
  return {[q](const Eigen::VectorXd& w) { return 0.5 * w.dot(q.a * w) - q.b.dot(w); },
          [q](const Eigen::VectorXd& w) -> Eigen::VectorXd { return q.a * w - q.b; }};
}

TEST(Scg, ConvexQuadraticConvergesWithinPPlusFive) {
  const Eigen::Index p = 8;
  const auto q = random_spd(5, p);
  ScaledConjugateGradient scg(as_objective(q), Eigen::VectorXd::Zero(p));
  int iterations = 0;
  while (scg.gradient().norm() >= 1e-6 && iterations < p + 5) {
    (void)scg.iterate();
    ++iterations;
  }
  EXPECT_LT(scg.gradient().norm(), 1e-6);
  EXPECT_LE(iterations, p + 5);
  const Eigen::VectorXd solution = q.a.ldlt().solve(q.b);
  EXPECT_LT((scg.weights() - solution).norm(), 1e-6);
}

TEST(Scg, AcceptedStepsNeverIncreaseTheObjective) {
  // Rosenbrock-like valley in 4 dimensions.
  Objective f{[](const Eigen::VectorXd& w) {
                double v = 0.0;
                for (Eigen::Index i = 0; i + 1 < w.size(); ++i) {
                  v += 100.0 * std::pow(w[i + 1] - w[i] * w[i], 2) + std::pow(1.0 - w[i], 2);
                }
                return v;
              },
              [](const Eigen::VectorXd& w) -> Eigen::VectorXd {
                Eigen::VectorXd g = Eigen::VectorXd::Zero(w.size());
                for (Eigen::Index i = 0; i + 1 < w.size(); ++i) {
                  const double t = w[i + 1] - w[i] * w[i];
                  g[i] += -400.0 * w[i] * t - 2.0 * (1.0 - w[i]);
                  g[i + 1] += 200.0 * t;
                }
                return g;
              }};
  Eigen::VectorXd w0(4);
  w0 << -1.2, 1.0, -0.5, 0.8;
  ScaledConjugateGradient scg(f, w0);
  double previous = scg.value();
  for (int i = 0; i < 300; ++i) {
    const auto it = scg.iterate();
    ASSERT_LE(it.value, previous);
    ASSERT_GT(it.lambda, 0.0);
    if (!it.accepted) ASSERT_EQ(it.value, previous);
    previous = it.value;
  }
  EXPECT_LT(scg.value(), f.value(w0));
}

TEST(Scg, RejectedStepLeavesWeightsAndRaisesLambda) {
  const auto q = random_spd(6, 5);
  const auto base = as_objective(q);
  const Eigen::VectorXd w0 = Eigen::VectorXd::Constant(5, 0.3);
  // Any move away from w0 looks catastrophically worse.
  Objective hostile{[&](const Eigen::VectorXd& w) { return w == w0 ? base.value(w) : 1e30; }, base.gradient};
  ScaledConjugateGradient scg(hostile, w0);
  const double lambda_before = scg.lambda();
  const auto it = scg.iterate();
  EXPECT_FALSE(it.accepted);
  EXPECT_LT(it.comparison, 0.0);
  EXPECT_EQ(scg.weights(), w0);
  EXPECT_GT(scg.lambda(), lambda_before);
  EXPECT_EQ(scg.accepted_steps(), 0u);
}

}  // namespace
}  // namespace nar::optim
