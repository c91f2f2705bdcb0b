#pragma once

#include <Eigen/Dense>
#include <functional>

namespace nar::optim {

/// Residuals e(w) and their Jacobian J = de/dw at one point.
struct Linearization {
  Eigen::VectorXd errors;
  Eigen::MatrixXd jacobian;
};

struct LmSettings {
  double mu_inc = 10.0;
  double mu_dec = 0.1;
  double mu_max = 1e10;
  /// Floor applied after a decrease so mu stays strictly positive.
  double mu_min = 1e-20;
};

/// Objective weights: F(w) = beta * SSE/2 + alpha * |w|^2/2.
/// The default (alpha 0, beta 1) is plain least squares.
struct Regularization {
  double alpha = 0.0;
  double beta = 1.0;
};

[[nodiscard]] double regularized_objective(double sse, const Eigen::VectorXd& w, const Regularization& reg);

/// Gradient of F at the linearization point: beta*J^T e + alpha*w.
[[nodiscard]] Eigen::VectorXd objective_gradient(const Linearization& lin, const Eigen::VectorXd& w,
                                                 const Regularization& reg);

/// Solves (beta*J^T J + (alpha + mu) I) step = -(beta*J^T e + alpha*w).
/// With alpha = 0 this is the damped Gauss-Newton step; mu -> 0 gives the
/// Gauss-Newton step and mu -> inf gives -(1/mu) times the gradient.
[[nodiscard]] Eigen::VectorXd damped_step(const Linearization& lin, const Eigen::VectorXd& w, double mu,
                                          const Regularization& reg = {});

struct LmIteration {
  bool accepted = false;
  Eigen::VectorXd weights;  ///< new weights when accepted, else the input weights
  double sse = 0.0;         ///< SSE at `weights`
  double objective = 0.0;   ///< F at `weights` (same regularization)
  double mu = 0.0;          ///< damping to use next
  int trials = 0;           ///< linear solves performed
};

/// One LM iteration: try the damped step, accept when F strictly decreases
/// (then mu *= mu_dec), otherwise mu *= mu_inc and re-solve. Gives up once mu
/// exceeds mu_max, returning accepted = false.
[[nodiscard]] LmIteration lm_iterate(const Linearization& lin, const Eigen::VectorXd& w, double sse, double mu,
                                     const LmSettings& settings, const Regularization& reg,
                                     const std::function<double(const Eigen::VectorXd&)>& sse_at);

}  // namespace nar::optim
