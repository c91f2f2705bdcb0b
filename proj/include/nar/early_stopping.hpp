#pragma once

#include <cstddef>
#include <limits>

#include "nar/network.hpp"

namespace nar {

/// Validation-based early stopping with a best-weights snapshot.
///
/// Each update is one validation check. An update that does not strictly
/// improve on the best validation MSE increments the fail counter; training
/// should stop when the counter reaches max_fail.
class EarlyStopping {
 public:
  enum class Decision { Continue, Stop };

  explicit EarlyStopping(std::size_t max_fail);

  /// val_mse must be finite (std::invalid_argument otherwise).
  Decision update(std::size_t epoch, double val_mse, const WeightVector& weights);

  [[nodiscard]] std::size_t fail_count() const noexcept { return fails_; }
  [[nodiscard]] std::size_t best_epoch() const noexcept { return best_epoch_; }
  [[nodiscard]] double best_value() const noexcept { return best_; }
  [[nodiscard]] bool has_snapshot() const noexcept { return best_weights_.size() > 0; }
  [[nodiscard]] const WeightVector& best_weights() const noexcept { return best_weights_; }

 private:
  std::size_t max_fail_;
  std::size_t fails_ = 0;
  std::size_t best_epoch_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
  WeightVector best_weights_;
};

}  // namespace nar
