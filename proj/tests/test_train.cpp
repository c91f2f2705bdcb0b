#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "nar/error.hpp"
#include "nar/metrics.hpp"
#include "nar/series.hpp"
#include "nar/train.hpp"
#include "test_support.hpp"

namespace nar {
namespace {

struct Problem {
  SeriesDataset series;
  RegressionSet reg;
  DivisionPlan plan;
};

Problem synthetic_problem(std::size_t n = 600, int scenario = 5, std::uint64_t seed = 1) {
  Problem p;
  p.series = generate_synthetic(n, seed);
  p.reg = embed_lags(p.series, 2, fit_normalizer(p.series.values));
  p.plan = plan_division(p.reg.size(), standard_scenario(scenario), DivisionMethod::RandomInterleaved, seed);
  return p;
}

Problem ar1_problem() {
  Problem p;
  p.series = make_ar1_series(2000, 0.9, 5.0, 100.0);
  p.reg = embed_lags(p.series, 2, fit_normalizer(p.series.values));
  p.plan = plan_division(p.reg.size(), standard_scenario(7), DivisionMethod::RandomInterleaved, 25);
  return p;
}

TrainConfig config_for(Algorithm algorithm, std::size_t max_epochs = 1000) {
  TrainConfig c;
  c.algorithm = algorithm;
  c.max_epochs = max_epochs;
  return c;
}

TEST(Train, ZeroEpochsReturnsInitialNetwork) {
  const auto p = synthetic_problem();
  const auto net = init_network(2, 10, 3, InitScheme::NguyenWidrow, p.reg.normalizer);
  for (const auto algo : {Algorithm::LM, Algorithm::BR, Algorithm::SCG}) {
    const auto report = train(net, p.reg, p.plan, config_for(algo, 0));
    EXPECT_EQ(flatten(report.final_network), flatten(net));
    EXPECT_EQ(report.epochs_run, 0u);
    EXPECT_EQ(report.best_epoch, 0u);
    EXPECT_TRUE(report.history.empty());
    EXPECT_EQ(report.stop_reason, StopReason::MaxEpochs);
  }
}

TEST(Train, LearnsNoiselessAutoregressionToOlsAccuracy) {
  const auto p = ar1_problem();
  // Linear least-squares oracle on the same training rows.
  const auto& train_idx = p.plan.train_idx;
  Eigen::MatrixXd x(static_cast<Eigen::Index>(train_idx.size()), 3);
  Eigen::VectorXd y(x.rows());
  for (std::size_t r = 0; r < train_idx.size(); ++r) {
    const auto i = static_cast<Eigen::Index>(train_idx[r]);
    x.row(static_cast<Eigen::Index>(r)) << p.reg.inputs(i, 0), p.reg.inputs(i, 1), 1.0;
    y[static_cast<Eigen::Index>(r)] = p.reg.targets[i];
  }
  const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  std::vector<double> ols_pred;
  for (const std::size_t i : p.plan.test_idx) {
    const auto row = static_cast<Eigen::Index>(i);
    ols_pred.push_back(p.reg.normalizer.invert(beta[0] * p.reg.inputs(row, 0) + beta[1] * p.reg.inputs(row, 1) + beta[2]));
  }
  std::vector<double> test_targets;
  for (const std::size_t i : p.plan.test_idx) test_targets.push_back(p.reg.raw_targets[i]);
  ASSERT_LT(mse(test_targets, ols_pred), 1e-12);
  // The informative transient must be inside the training range.
  ASSERT_EQ(p.plan.train_idx.front(), 0u);

  const auto net = init_network(2, 10, 3, InitScheme::UniformSmall, p.reg.normalizer);
  const auto report = train(net, p.reg, p.plan, config_for(Algorithm::LM, 200));
  const auto pred = predict_targets(report.final_network, p.reg, p.plan.test_idx);
  EXPECT_LT(mse(test_targets, pred), 1e-6);
  EXPECT_GT(r_value(test_targets, pred).r, 0.9999);
  EXPECT_LE(report.epochs_run, 200u);
}

TEST(Train, DeterministicForEveryAlgorithm) {
  const auto p = synthetic_problem(400);
  const auto net = init_network(2, 6, 5, InitScheme::NguyenWidrow, p.reg.normalizer);
  for (const auto algo : {Algorithm::LM, Algorithm::BR, Algorithm::SCG}) {
    const auto a = train(net, p.reg, p.plan, config_for(algo, 60));
    const auto b = train(net, p.reg, p.plan, config_for(algo, 60));
    EXPECT_EQ(flatten(a.final_network), flatten(b.final_network)) << to_string(algo);
    EXPECT_EQ(a.epochs_run, b.epochs_run);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  }
}

TEST(Train, FinalNetworkIsTheBestValidationEpoch) {
  const auto p = synthetic_problem(800, 6);
  const auto net = init_network(2, 10, 9, InitScheme::NguyenWidrow, p.reg.normalizer);
  for (const auto algo : {Algorithm::LM, Algorithm::BR, Algorithm::SCG}) {
    const auto full = train(net, p.reg, p.plan, config_for(algo, 300));
    ASSERT_GE(full.best_epoch, 1u);
    ASSERT_LE(full.best_epoch, full.epochs_run);
    const auto truncated = train(net, p.reg, p.plan, config_for(algo, full.best_epoch));
    EXPECT_EQ(flatten(truncated.final_network), flatten(full.final_network)) << to_string(algo);
    double best_val = std::numeric_limits<double>::infinity();
    for (const auto& rec : full.history) best_val = std::min(best_val, *rec.val_mse);
    EXPECT_EQ(*full.history[full.best_epoch - 1].val_mse, best_val);
    if (full.stop_reason == StopReason::MaxValFail) {
      EXPECT_EQ(full.epochs_run, full.best_epoch + 6);
    }
  }
}

TEST(Train, HistoryIsConsistent) {
  const auto p = synthetic_problem(500);
  const auto net = init_network(2, 10, 2, InitScheme::NguyenWidrow, p.reg.normalizer);
  const auto report = train(net, p.reg, p.plan, config_for(Algorithm::LM, 100));
  ASSERT_EQ(report.history.size(), report.epochs_run);
  EXPECT_EQ(report.initial.epoch, 0u);
  double previous = report.initial.train_mse;
  for (std::size_t e = 0; e < report.history.size(); ++e) {
    EXPECT_EQ(report.history[e].epoch, e + 1);
    EXPECT_LT(report.history[e].train_mse, previous);  // LM accepts only strict decreases
    previous = report.history[e].train_mse;
    EXPECT_TRUE(report.history[e].val_mse.has_value());
    EXPECT_TRUE(report.history[e].test_mse.has_value());
  }
}

TEST(Train, MinGradientStop) {
  const auto p = synthetic_problem();
  const auto net = init_network(2, 10, 3, InitScheme::NguyenWidrow, p.reg.normalizer);
  for (const auto algo : {Algorithm::LM, Algorithm::BR, Algorithm::SCG}) {
    auto config = config_for(algo, 50);
    config.min_gradient = 1e12;
    const auto report = train(net, p.reg, p.plan, config);
    EXPECT_EQ(report.stop_reason, StopReason::MinGradient);
    EXPECT_EQ(report.epochs_run, 0u);
  }
}

TEST(Train, NonFiniteNetworkDiverges) {
  const auto p = synthetic_problem();
  auto net = init_network(2, 10, 3, InitScheme::NguyenWidrow, p.reg.normalizer);
  net.output_weights[0] = std::numeric_limits<double>::quiet_NaN();
  for (const auto algo : {Algorithm::LM, Algorithm::BR, Algorithm::SCG}) {
    EXPECT_THROW((void)train(net, p.reg, p.plan, config_for(algo, 10)), TrainingDivergence) << to_string(algo);
  }
}

TEST(Train, ConfigValidation) {
  const auto p = synthetic_problem();
  const auto net = init_network(2, 10, 3, InitScheme::NguyenWidrow, p.reg.normalizer);
  auto bad = config_for(Algorithm::LM);
  bad.mu_inc = 0.5;
  EXPECT_THROW((void)train(net, p.reg, p.plan, bad), std::invalid_argument);
  EXPECT_THROW((void)train(init_network(3, 10, 3, InitScheme::NguyenWidrow), p.reg, p.plan, config_for(Algorithm::LM)),
               std::invalid_argument);
  EXPECT_EQ(algorithm_from_string("scg"), Algorithm::SCG);
  EXPECT_EQ(algorithm_from_string("Br"), Algorithm::BR);
  EXPECT_THROW((void)algorithm_from_string("adam"), std::invalid_argument);
}

TEST(Train, ConfigJsonRoundTrip) {
  auto config = config_for(Algorithm::SCG, 321);
  config.sigma0 = 1e-4;
  config.seed = 99;
  config.validation_stopping = false;
  const auto back = train_config_from_json(to_json(config));
  EXPECT_EQ(to_json(back), to_json(config));
}

TEST(BayesianRegularization, FirstEpochMatchesLevenbergMarquardt) {
  const auto p = synthetic_problem(500);
  const auto net = init_network(2, 10, 4, InitScheme::NguyenWidrow, p.reg.normalizer);
  const auto lm = train(net, p.reg, p.plan, config_for(Algorithm::LM, 1));
  const auto br = train(net, p.reg, p.plan, config_for(Algorithm::BR, 1));
  EXPECT_EQ(flatten(lm.final_network), flatten(br.final_network));
  EXPECT_EQ(lm.history[0].train_mse, br.history[0].train_mse);
  const auto epoch = lm_epoch(net, p.reg, p.plan.train_idx, 1e-3, config_for(Algorithm::LM));
  EXPECT_EQ(flatten(epoch.network), flatten(lm.final_network));
}

TEST(BayesianRegularization, HyperparametersStayInRange) {
  const auto p = synthetic_problem(800, 4);
  const auto net = init_network(2, 10, 6, InitScheme::NguyenWidrow, p.reg.normalizer);
  const auto report = train(net, p.reg, p.plan, config_for(Algorithm::BR, 150));
  const double params = static_cast<double>(net.parameter_count());
  ASSERT_FALSE(report.history.empty());
  for (const auto& rec : report.history) {
    ASSERT_TRUE(rec.br.has_value());
    EXPECT_GT(rec.br->alpha, 0.0);
    EXPECT_GT(rec.br->beta, 0.0);
    EXPECT_GE(rec.br->gamma, 0.0);
    EXPECT_LE(rec.br->gamma, params);
    EXPECT_LT(rec.br->objective_after, rec.br->objective_before);
  }
}

TEST(BayesianRegularization, EffectiveParametersMatchEigenOracle) {
  Rng rng(31);
  Eigen::MatrixXd jac(80, 12);
  for (Eigen::Index i = 0; i < jac.rows(); ++i) {
    for (Eigen::Index j = 0; j < jac.cols(); ++j) jac(i, j) = rng.normal() * (j < 4 ? 10.0 : 0.01);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac.transpose() * jac);
  for (const double alpha : {1e-3, 0.5, 7.0}) {
    for (const double beta : {0.1, 1.0, 30.0}) {
      double oracle = 0.0;
      for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double l = beta * eig.eigenvalues()[i];
        oracle += l / (l + alpha);
      }
      EXPECT_NEAR(effective_parameters(jac, alpha, beta), oracle, 1e-9);
    }
  }
  EXPECT_EQ(effective_parameters(jac, 0.0, 1.0), 12.0);
}

TEST(BayesianRegularization, FewerEffectiveParametersOnNoise) {
  auto structured = synthetic_problem(1000, 4, 12);
  auto noise = structured;
  Rng rng(12);
  for (std::size_t i = noise.series.size() - 1; i > 0; --i) std::swap(noise.series.values[i], noise.series.values[rng.below(i + 1)]);
  noise.reg = embed_lags(noise.series, 2, fit_normalizer(noise.series.values));

  const auto gamma_of = [](const Problem& p) {
    const auto net = init_network(2, 10, 8, InitScheme::NguyenWidrow, p.reg.normalizer);
    const auto report = train(net, p.reg, p.plan, config_for(Algorithm::BR, 200));
    return report.history.back().br->gamma;
  };
  const double g_structured = gamma_of(structured);
  const double g_noise = gamma_of(noise);
  EXPECT_LE(g_noise, g_structured);
}

}  // namespace
}  // namespace nar
