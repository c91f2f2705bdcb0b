#include "nar/normalizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nar/error.hpp"

namespace nar {

Normalizer::Normalizer(double x_min, double x_max) : x_min_(x_min), x_max_(x_max) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw std::invalid_argument("normalizer range must satisfy finite x_min < x_max");
  }
}

Normalizer fit_normalizer(std::span<const double> values) {
  if (values.empty()) throw DataError("cannot fit a normalizer to an empty range");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*lo < *hi)) throw DataError("cannot fit a normalizer to a constant series");
  return Normalizer(*lo, *hi);
}

}  // namespace nar
