#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nar/embedding.hpp"
#include "nar/normalizer.hpp"

namespace nar {

/// Flat parameter vector. Layout (version 1): input weights row-major (h x d),
/// then input biases (h), output weights (h), output bias (1).
using WeightVector = Eigen::VectorXd;

inline constexpr int kWeightLayoutVersion = 1;

/// d lagged inputs -> h tanh hidden units -> one linear output.
struct NarNetwork {
  Eigen::MatrixXd input_weights;   ///< h x d
  Eigen::VectorXd input_bias;      ///< h
  Eigen::VectorXd output_weights;  ///< h
  double output_bias = 0.0;
  Normalizer normalizer;

  [[nodiscard]] std::size_t lags() const noexcept { return static_cast<std::size_t>(input_weights.cols()); }
  [[nodiscard]] std::size_t hidden() const noexcept { return static_cast<std::size_t>(input_weights.rows()); }
  [[nodiscard]] std::size_t parameter_count() const noexcept;
};

[[nodiscard]] constexpr std::size_t parameter_count(std::size_t d, std::size_t h) noexcept {
  return h * d + h + h + 1;
}

enum class InitScheme { UniformSmall, NguyenWidrow };

[[nodiscard]] std::string_view to_string(InitScheme scheme);
[[nodiscard]] InitScheme init_scheme_from_string(std::string_view text);

/// All-zero network of the given shape.
[[nodiscard]] NarNetwork zero_network(std::size_t d, std::size_t h, const Normalizer& normalizer = {});

/// Seeded initialization. uniform-small draws every parameter in [-0.5, 0.5];
/// nguyen-widrow gives each first-layer row norm 0.7*h^(1/d) and spreads the
/// hidden biases over the same span so active regions tile [-1, 1]^d.
[[nodiscard]] NarNetwork init_network(std::size_t d, std::size_t h, std::uint64_t seed, InitScheme scheme,
                                      const Normalizer& normalizer = {});

/// Normalized one-step prediction for a normalized input window of length d.
[[nodiscard]] double forward(const NarNetwork& net, std::span<const double> x);

/// Denormalized open-loop predictions for the selected targets.
[[nodiscard]] std::vector<double> predict_targets(const NarNetwork& net, const RegressionSet& reg,
                                                  std::span<const std::size_t> idx);

/// Per-sample errors e_i = target_i - output_i (normalized) and J = de/dw.
struct ErrorJacobian {
  Eigen::VectorXd errors;
  Eigen::MatrixXd jacobian;  ///< |idx| x P

  [[nodiscard]] double sse() const { return errors.squaredNorm(); }
};

[[nodiscard]] ErrorJacobian errors_and_jacobian(const NarNetwork& net, const RegressionSet& reg,
                                                std::span<const std::size_t> idx);

/// Errors only; cheaper than errors_and_jacobian when J is not needed.
[[nodiscard]] Eigen::VectorXd errors(const NarNetwork& net, const RegressionSet& reg,
                                     std::span<const std::size_t> idx);

[[nodiscard]] double sum_squared_error(const NarNetwork& net, const RegressionSet& reg,
                                       std::span<const std::size_t> idx);

/// Gradient of 0.5*SSE, accumulated sample by sample without forming J.
[[nodiscard]] Eigen::VectorXd half_sse_gradient(const NarNetwork& net, const RegressionSet& reg,
                                                std::span<const std::size_t> idx);

[[nodiscard]] WeightVector flatten(const NarNetwork& net);
/// Throws std::invalid_argument when w.size() != parameter_count(d, h).
[[nodiscard]] NarNetwork unflatten(const WeightVector& w, std::size_t d, std::size_t h,
                                   const Normalizer& normalizer = {});

}  // namespace nar
