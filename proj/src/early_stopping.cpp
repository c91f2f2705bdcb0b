#include "nar/early_stopping.hpp"

#include <cmath>
#include <stdexcept>

namespace nar {

EarlyStopping::EarlyStopping(std::size_t max_fail) : max_fail_(max_fail) {
  if (max_fail == 0) throw std::invalid_argument("max_val_fail must be at least 1");
}

EarlyStopping::Decision EarlyStopping::update(std::size_t epoch, double val_mse, const WeightVector& weights) {
  if (!std::isfinite(val_mse)) throw std::invalid_argument("validation MSE must be finite");
  if (val_mse < best_) {
    best_ = val_mse;
    best_epoch_ = epoch;
    best_weights_ = weights;
    fails_ = 0;
    return Decision::Continue;
  }
  ++fails_;
  return fails_ >= max_fail_ ? Decision::Stop : Decision::Continue;
}

}  // namespace nar
