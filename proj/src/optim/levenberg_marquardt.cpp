#include "nar/optim/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>

namespace nar::optim {

namespace {

Eigen::VectorXd solve_system(const Eigen::MatrixXd& normal, const Eigen::VectorXd& rhs, double diagonal,
                             bool* ok) {
  Eigen::MatrixXd system = normal;
  system.diagonal().array() += diagonal;
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    *ok = false;
    return Eigen::VectorXd::Zero(rhs.size());
  }
  *ok = true;
  return llt.solve(rhs);
}

}  // namespace

double regularized_objective(double sse, const Eigen::VectorXd& w, const Regularization& reg) {
  return 0.5 * reg.beta * sse + 0.5 * reg.alpha * w.squaredNorm();
}

Eigen::VectorXd objective_gradient(const Linearization& lin, const Eigen::VectorXd& w, const Regularization& reg) {
  return reg.beta * (lin.jacobian.transpose() * lin.errors) + reg.alpha * w;
}

Eigen::VectorXd damped_step(const Linearization& lin, const Eigen::VectorXd& w, double mu,
                            const Regularization& reg) {
  const Eigen::Index p = lin.jacobian.cols();
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(p, p);
  normal.selfadjointView<Eigen::Lower>().rankUpdate(lin.jacobian.transpose(), reg.beta);
  normal.triangularView<Eigen::StrictlyUpper>() = normal.transpose();
  bool ok = false;
  Eigen::VectorXd step = solve_system(normal, -objective_gradient(lin, w, reg), reg.alpha + mu, &ok);
  if (!ok) {
    step = normal.ldlt().solve(-objective_gradient(lin, w, reg));
  }
  return step;
}

LmIteration lm_iterate(const Linearization& lin, const Eigen::VectorXd& w, double sse, double mu,
                       const LmSettings& settings, const Regularization& reg,
                       const std::function<double(const Eigen::VectorXd&)>& sse_at) {
  const Eigen::Index p = lin.jacobian.cols();
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(p, p);
  normal.selfadjointView<Eigen::Lower>().rankUpdate(lin.jacobian.transpose(), reg.beta);
  normal.triangularView<Eigen::StrictlyUpper>() = normal.transpose();
  const Eigen::VectorXd rhs = -objective_gradient(lin, w, reg);
  const double current = regularized_objective(sse, w, reg);

  LmIteration result;
  result.weights = w;
  result.sse = sse;
  result.objective = current;

  while (mu <= settings.mu_max) {
    bool ok = false;
    const Eigen::VectorXd step = solve_system(normal, rhs, reg.alpha + mu, &ok);
    ++result.trials;
    if (ok) {
      Eigen::VectorXd trial = w + step;
      const double trial_sse = sse_at(trial);
      const double trial_objective = regularized_objective(trial_sse, trial, reg);
      if (std::isfinite(trial_objective) && trial_objective < current) {
        result.accepted = true;
        result.weights = std::move(trial);
        result.sse = trial_sse;
        result.objective = trial_objective;
        result.mu = std::max(mu * settings.mu_dec, settings.mu_min);
        return result;
      }
    }
    mu *= settings.mu_inc;
  }
  result.mu = mu;
  return result;
}

}  // namespace nar::optim
