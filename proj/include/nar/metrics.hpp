#pragma once

#include <cstddef>
#include <span>

namespace nar {

/// Every accuracy metric for one (targets, predictions) pair, in original units.
struct MetricsBundle {
  double mse = 0.0;
  double mae = 0.0;
  double mape_percent = 0.0;
  double r = 0.0;  ///< Pearson correlation of targets and predictions
  double r_squared = 0.0;
  double rss = 0.0;
  double tss = 0.0;
  double accuracy_percent = 0.0;  ///< exactly 100 - mape_percent
  std::size_t sample_count = 0;
};

struct Correlation {
  double r = 0.0;
  double r_squared = 0.0;
  double rss = 0.0;
  double tss = 0.0;
};

// All metric functions require equal, nonzero lengths (std::invalid_argument).

[[nodiscard]] double mse(std::span<const double> targets, std::span<const double> predictions);
[[nodiscard]] double mae(std::span<const double> targets, std::span<const double> predictions);
/// Mean absolute percentage error in percent. A zero target throws
/// std::domain_error naming its index.
[[nodiscard]] double mape(std::span<const double> targets, std::span<const double> predictions);
/// Needs at least two samples and non-constant targets (std::domain_error).
/// r is reported as 0 when the predictions are constant.
[[nodiscard]] Correlation r_value(std::span<const double> targets, std::span<const double> predictions);
/// 100 - mape_percent; mape_percent must be >= 0.
[[nodiscard]] double accuracy(double mape_percent);
/// n_total / n_train; requires 1 <= n_train <= n_total.
[[nodiscard]] double efficiency(std::size_t n_total, std::size_t n_train);

[[nodiscard]] MetricsBundle compute_metrics(std::span<const double> targets, std::span<const double> predictions);

}  // namespace nar
