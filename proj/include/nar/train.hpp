#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nar/division.hpp"
#include "nar/embedding.hpp"
#include "nar/network.hpp"

namespace nar {

enum class Algorithm { LM, BR, SCG };

[[nodiscard]] std::string_view to_string(Algorithm algorithm);
/// Accepts "lm", "br", "scg" in any case.
[[nodiscard]] Algorithm algorithm_from_string(std::string_view text);

struct TrainConfig {
  Algorithm algorithm = Algorithm::LM;
  std::size_t max_epochs = 1000;
  std::size_t max_val_fail = 6;
  double min_gradient = 1e-7;
  // Levenberg-Marquardt damping schedule (also drives BR).
  double mu0 = 1e-3;
  double mu_inc = 10.0;
  double mu_dec = 0.1;
  double mu_max = 1e10;
  // Scaled conjugate gradient.
  double sigma0 = 5e-5;
  double lambda0 = 5e-7;
  /// Validation early stopping; on by default for every algorithm.
  bool validation_stopping = true;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

enum class StopReason { MaxEpochs, MinGradient, MaxValFail, MuMax, Converged };

[[nodiscard]] std::string_view to_string(StopReason reason);
[[nodiscard]] StopReason stop_reason_from_string(std::string_view text);

/// Bayesian-regularization hyperparameters after an epoch's update.
struct BrState {
  double alpha = 0.0;  ///< weight-decay strength
  double beta = 1.0;   ///< noise precision
  double gamma = 0.0;  ///< effective number of parameters
  double e_w = 0.0;    ///< |w|^2 / 2
  double e_d = 0.0;    ///< SSE / 2 (normalized domain)
  /// Regularized objective beta*E_D + alpha*E_W before and after the step,
  /// both under the hyperparameters in force during the step.
  double objective_before = 0.0;
  double objective_after = 0.0;
};

/// One row of the training record. MSE values are in original units.
struct EpochRecord {
  std::size_t epoch = 0;
  double train_mse = 0.0;
  std::optional<double> val_mse;
  std::optional<double> test_mse;
  /// Infinity norm of the SSE gradient (normalized domain) at the start of the epoch.
  double gradient_norm = 0.0;
  /// mu (LM, BR) or lambda (SCG) after the epoch.
  double damping = 0.0;
  bool accepted = true;
  std::optional<BrState> br;
};

struct TrainReport {
  Algorithm algorithm = Algorithm::LM;
  TrainConfig config;
  std::size_t epochs_run = 0;
  StopReason stop_reason = StopReason::MaxEpochs;
  /// Epoch whose weights are returned; 0 means the initial network.
  std::size_t best_epoch = 0;
  EpochRecord initial;
  std::vector<EpochRecord> history;
  NarNetwork final_network;
};

/// Runs the configured algorithm on plan.train_idx with validation early
/// stopping on plan.val_idx, returning the best-validation network.
/// Deterministic in all inputs. Throws TrainingDivergence on a non-finite loss.
[[nodiscard]] TrainReport train(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan,
                                const TrainConfig& config);

[[nodiscard]] TrainReport train_lm(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan,
                                   const TrainConfig& config);
[[nodiscard]] TrainReport train_br(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan,
                                   const TrainConfig& config);
[[nodiscard]] TrainReport train_scg(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan,
                                    const TrainConfig& config);

struct LmEpochResult {
  NarNetwork network;     ///< updated when accepted, else unchanged
  double sse = 0.0;       ///< training SSE at `network` (normalized domain)
  double mu = 0.0;
  double gradient_norm = 0.0;  ///< |2 J^T e|_inf at the input weights
  bool accepted = false;       ///< false means mu exceeded mu_max
};

/// A single Levenberg-Marquardt epoch on the training targets `idx`.
[[nodiscard]] LmEpochResult lm_epoch(const NarNetwork& net, const RegressionSet& reg,
                                     std::span<const std::size_t> idx, double mu, const TrainConfig& config);

/// Effective parameter count P - alpha*trace((beta*J^T J + alpha*I)^-1), clamped to [0, P].
[[nodiscard]] double effective_parameters(const Eigen::MatrixXd& jacobian, double alpha, double beta);

// JSON (train_io.cpp)
[[nodiscard]] nlohmann::json to_json(const TrainConfig& config);
[[nodiscard]] TrainConfig train_config_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json to_json(const TrainReport& report);

}  // namespace nar
