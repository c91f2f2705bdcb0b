#include "nar/embedding.hpp"

#include <stdexcept>
#include <string>

namespace nar {

RegressionSet embed_lags(const SeriesDataset& series, std::size_t d, const Normalizer& normalizer) {
  const std::size_t n = series.size();
  if (d < 1 || n < 30 || d > n - 30) {
    throw std::invalid_argument("lag count " + std::to_string(d) + " out of range for a series of " +
                                std::to_string(n) + " points");
  }
  const std::size_t rows = n - d;

  RegressionSet reg;
  reg.lags = d;
  reg.normalizer = normalizer;
  reg.inputs.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d));
  reg.targets.resize(static_cast<Eigen::Index>(rows));
  reg.raw_targets.resize(rows);
  reg.target_times.resize(rows);

  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t t = i + d;
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t k = 0; k < d; ++k) {
      reg.inputs(row, static_cast<Eigen::Index>(k)) = normalizer.apply(series.values[t - 1 - k]);
    }
    reg.targets(row) = normalizer.apply(series.values[t]);
    reg.raw_targets[i] = series.values[t];
    reg.target_times[i] = series.time_at(t);
  }
  return reg;
}

}  // namespace nar
