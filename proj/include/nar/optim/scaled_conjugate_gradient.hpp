#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>

namespace nar::optim {

/// Smooth objective with an analytic gradient.
struct Objective {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

struct ScgSettings {
  double sigma0 = 5e-5;
  double lambda0 = 5e-7;
  /// Steepest-descent restart period in accepted steps; 0 means the parameter count.
  std::size_t restart_period = 0;
  double lambda_min = 1e-20;
};

struct ScgIteration {
  bool accepted = false;
  double comparison = 0.0;  ///< step-quality ratio (Delta)
  double lambda = 0.0;      ///< scale parameter after the update
  double value = 0.0;       ///< objective at the current weights
  double step_size = 0.0;   ///< alpha along the search direction
};

/// Scaled conjugate gradient without line search.
///
/// Curvature along the search direction p comes from a finite-difference
/// Hessian-vector product with step sigma0/|p|. The scale lambda is halved
/// when Delta > 0.75 and quadrupled when Delta < 0.25; a step is taken only
/// when Delta > 0.
class ScaledConjugateGradient {
 public:
  ScaledConjugateGradient(Objective objective, Eigen::VectorXd w0, ScgSettings settings = {});

  ScgIteration iterate();

  [[nodiscard]] const Eigen::VectorXd& weights() const noexcept { return w_; }
  [[nodiscard]] const Eigen::VectorXd& gradient() const noexcept { return g_; }
  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] std::size_t accepted_steps() const noexcept { return accepted_; }

 private:
  Objective objective_;
  ScgSettings settings_;
  Eigen::VectorXd w_;
  Eigen::VectorXd g_;
  Eigen::VectorXd r_;  // -g
  Eigen::VectorXd p_;
  double value_ = 0.0;
  double lambda_ = 0.0;
  double lambda_bar_ = 0.0;
  double delta_ = 0.0;
  bool success_ = true;
  std::size_t accepted_ = 0;
  std::size_t restart_ = 0;
};

}  // namespace nar::optim
