#include "nar/optim/scaled_conjugate_gradient.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace nar::optim {

ScaledConjugateGradient::ScaledConjugateGradient(Objective objective, Eigen::VectorXd w0, ScgSettings settings)
    : objective_(std::move(objective)), settings_(settings), w_(std::move(w0)) {
  value_ = objective_.value(w_);
  g_ = objective_.gradient(w_);
  r_ = -g_;
  p_ = r_;
  lambda_ = settings_.lambda0;
  restart_ = settings_.restart_period == 0 ? static_cast<std::size_t>(w_.size()) : settings_.restart_period;
}

ScgIteration ScaledConjugateGradient::iterate() {
  ScgIteration out;
  double p2 = p_.squaredNorm();
  if (p2 == 0.0) {
    // Zero direction: fall back to steepest descent, or nothing to do.
    p_ = r_;
    p2 = p_.squaredNorm();
    success_ = true;
    if (p2 == 0.0) {
      out.lambda = lambda_;
      out.value = value_;
      return out;
    }
  }

  if (success_) {
    const double sigma = settings_.sigma0 / std::sqrt(p2);
    const Eigen::VectorXd s = (objective_.gradient(w_ + sigma * p_) - g_) / sigma;
    delta_ = p_.dot(s);
  }
  delta_ += (lambda_ - lambda_bar_) * p2;
  if (delta_ <= 0.0) {
    // Make the scaled curvature positive.
    lambda_bar_ = 2.0 * (lambda_ - delta_ / p2);
    delta_ = -delta_ + lambda_ * p2;
    lambda_ = lambda_bar_;
  }

  const double mu = p_.dot(r_);
  const double alpha = mu / delta_;
  const Eigen::VectorXd trial = w_ + alpha * p_;
  const double trial_value = objective_.value(trial);
  const double comparison = 2.0 * delta_ * (value_ - trial_value) / (mu * mu);
  out.comparison = comparison;
  out.step_size = alpha;

  if (std::isfinite(comparison) && comparison > 0.0) {
    w_ = trial;
    value_ = trial_value;
    const Eigen::VectorXd g_new = objective_.gradient(w_);
    const Eigen::VectorXd r_new = -g_new;
    lambda_bar_ = 0.0;
    success_ = true;
    ++accepted_;
    if (accepted_ % restart_ == 0) {
      p_ = r_new;
    } else {
      const double beta = (r_new.squaredNorm() - r_new.dot(r_)) / mu;
      p_ = r_new + beta * p_;
    }
    g_ = g_new;
    r_ = r_new;
    out.accepted = true;
  } else {
    lambda_bar_ = lambda_;
    success_ = false;
  }

  if (comparison > 0.75) lambda_ = std::max(0.5 * lambda_, settings_.lambda_min);
  if (!(comparison >= 0.25)) lambda_ *= 4.0;

  out.lambda = lambda_;
  out.value = value_;
  return out;
}

}  // namespace nar::optim
