#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "nar/normalizer.hpp"
#include "nar/series.hpp"

namespace nar {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Lag-embedded regression problem. Target i is series sample i + lags;
/// column k of its input row holds the normalized sample at lag k + 1.
struct RegressionSet {
  RowMatrix inputs;
  Eigen::VectorXd targets;          ///< normalized
  std::vector<double> raw_targets;  ///< original units
  std::vector<double> target_times;
  std::size_t lags = 0;
  Normalizer normalizer;

  [[nodiscard]] std::size_t size() const noexcept { return raw_targets.size(); }
  [[nodiscard]] std::size_t series_position(std::size_t target) const noexcept { return target + lags; }
};

/// Requires 1 <= d <= n - 30 (std::invalid_argument otherwise).
[[nodiscard]] RegressionSet embed_lags(const SeriesDataset& series, std::size_t d, const Normalizer& normalizer);

}  // namespace nar
