#include "nar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nar {

namespace {

void check_pair(std::span<const double> targets, std::span<const double> predictions) {
  if (targets.size() != predictions.size()) {
    throw std::invalid_argument("targets and predictions differ in length (" + std::to_string(targets.size()) +
                                " vs " + std::to_string(predictions.size()) + ")");
  }
  if (targets.empty()) throw std::invalid_argument("metrics need at least one sample");
}

double residual_sum_of_squares(std::span<const double> targets, std::span<const double> predictions) {
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double e = targets[i] - predictions[i];
    sum += e * e;
  }
  return sum;
}

}  // namespace

double mse(std::span<const double> targets, std::span<const double> predictions) {
  check_pair(targets, predictions);
  return residual_sum_of_squares(targets, predictions) / static_cast<double>(targets.size());
}

double mae(std::span<const double> targets, std::span<const double> predictions) {
  check_pair(targets, predictions);
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) sum += std::abs(targets[i] - predictions[i]);
  return sum / static_cast<double>(targets.size());
}

double mape(std::span<const double> targets, std::span<const double> predictions) {
  check_pair(targets, predictions);
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] == 0.0) throw std::domain_error("MAPE undefined: target " + std::to_string(i) + " is zero");
    sum += std::abs((targets[i] - predictions[i]) / targets[i]);
  }
  return sum / static_cast<double>(targets.size()) * 100.0;
}

Correlation r_value(std::span<const double> targets, std::span<const double> predictions) {
  check_pair(targets, predictions);
  if (targets.size() < 2) throw std::domain_error("correlation needs at least two samples");
  const auto n = static_cast<double>(targets.size());
  double mean_t = 0.0;
  double mean_p = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    mean_t += targets[i];
    mean_p += predictions[i];
  }
  mean_t /= n;
  mean_p /= n;
  double stt = 0.0;
  double spp = 0.0;
  double stp = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double dt = targets[i] - mean_t;
    const double dp = predictions[i] - mean_p;
    stt += dt * dt;
    spp += dp * dp;
    stp += dt * dp;
  }
  if (stt == 0.0) throw std::domain_error("correlation undefined: targets are constant");

  Correlation c;
  c.rss = residual_sum_of_squares(targets, predictions);
  c.tss = stt;
  c.r_squared = 1.0 - c.rss / c.tss;
  c.r = spp == 0.0 ? 0.0 : std::clamp(stp / std::sqrt(stt * spp), -1.0, 1.0);
  return c;
}

double accuracy(double mape_percent) {
  if (!(mape_percent >= 0.0)) throw std::invalid_argument("MAPE must be non-negative");
  return 100.0 - mape_percent;
}

double efficiency(std::size_t n_total, std::size_t n_train) {
  if (n_train == 0) throw std::invalid_argument("efficiency undefined for zero training points");
  if (n_train > n_total) throw std::invalid_argument("training count exceeds total count");
  return static_cast<double>(n_total) / static_cast<double>(n_train);
}

MetricsBundle compute_metrics(std::span<const double> targets, std::span<const double> predictions) {
  MetricsBundle m;
  m.sample_count = targets.size();
  m.mae = mae(targets, predictions);
  m.mape_percent = mape(targets, predictions);
  m.accuracy_percent = accuracy(m.mape_percent);
  const Correlation c = r_value(targets, predictions);
  m.r = c.r;
  m.r_squared = c.r_squared;
  m.rss = c.rss;
  m.tss = c.tss;
  m.mse = c.rss / static_cast<double>(targets.size());
  return m;
}

}  // namespace nar
