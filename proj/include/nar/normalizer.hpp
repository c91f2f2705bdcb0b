#pragma once

#include <span>

namespace nar {

/// Linear min-max map of [x_min, x_max] onto [-1, +1].
///
/// Default-constructed normalizers cover [-1, 1] and are therefore the identity.
class Normalizer {
 public:
  Normalizer() = default;
  /// Requires finite x_min < x_max (std::invalid_argument otherwise).
  Normalizer(double x_min, double x_max);

  [[nodiscard]] double apply(double x) const noexcept { return 2.0 * (x - x_min_) / (x_max_ - x_min_) - 1.0; }
  [[nodiscard]] double invert(double y) const noexcept { return (y + 1.0) * (x_max_ - x_min_) / 2.0 + x_min_; }

  [[nodiscard]] double x_min() const noexcept { return x_min_; }
  [[nodiscard]] double x_max() const noexcept { return x_max_; }
  /// Original units per normalized unit.
  [[nodiscard]] double scale() const noexcept { return (x_max_ - x_min_) / 2.0; }

  friend bool operator==(const Normalizer&, const Normalizer&) = default;

 private:
  double x_min_ = -1.0;
  double x_max_ = 1.0;
};

enum class NormalizationPolicy { FullSeries, TrainOnly };

/// Fits the range of `values`. Throws DataError when fewer than two distinct
/// values are present.
[[nodiscard]] Normalizer fit_normalizer(std::span<const double> values);

}  // namespace nar
