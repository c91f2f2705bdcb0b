#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nar {

/// Raised for malformed or insufficient input data (bad CSV cells, short or
/// constant series). Precondition violations on arguments use
/// std::invalid_argument instead.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trainer produced a non-finite loss or weight vector.
class TrainingDivergence : public std::runtime_error {
 public:
  TrainingDivergence(const std::string& what, std::size_t epoch)
      : std::runtime_error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}

  [[nodiscard]] std::size_t epoch() const noexcept { return epoch_; }

 private:
  std::size_t epoch_;
};

}  // namespace nar
