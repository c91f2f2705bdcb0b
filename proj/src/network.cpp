#include "nar/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nar/random.hpp"

namespace nar {

namespace {

using Eigen::Index;

// Hidden activations for one input row; returns the network output.
double hidden_pass(const NarNetwork& net, const double* x, Eigen::VectorXd& act) {
  const Index h = net.input_weights.rows();
  const Index d = net.input_weights.cols();
  double out = net.output_bias;
  for (Index j = 0; j < h; ++j) {
    double z = net.input_bias(j);
    for (Index k = 0; k < d; ++k) z += net.input_weights(j, k) * x[k];
    act(j) = std::tanh(z);
    out += net.output_weights(j) * act(j);
  }
  return out;
}

void check_indices(const RegressionSet& reg, std::span<const std::size_t> idx) {
  for (const std::size_t i : idx) {
    if (i >= reg.size()) {
      throw std::out_of_range("target index " + std::to_string(i) + " outside regression set of size " +
                              std::to_string(reg.size()));
    }
  }
}

// d(output)/dw for one sample, written into `row` using the flat layout.
template <typename Row>
void output_derivative(const NarNetwork& net, const double* x, const Eigen::VectorXd& act, Row&& row) {
  const Index h = net.input_weights.rows();
  const Index d = net.input_weights.cols();
  const Index bias_at = h * d;
  const Index out_at = bias_at + h;
  for (Index j = 0; j < h; ++j) {
    const double delta = net.output_weights(j) * (1.0 - act(j) * act(j));
    for (Index k = 0; k < d; ++k) row(j * d + k) = delta * x[k];
    row(bias_at + j) = delta;
    row(out_at + j) = act(j);
  }
  row(out_at + h) = 1.0;
}

}  // namespace

std::size_t NarNetwork::parameter_count() const noexcept {
  return nar::parameter_count(lags(), hidden());
}

std::string_view to_string(InitScheme scheme) {
  return scheme == InitScheme::NguyenWidrow ? "nguyen-widrow" : "uniform-small";
}

InitScheme init_scheme_from_string(std::string_view text) {
  if (text == "nguyen-widrow" || text == "nw") return InitScheme::NguyenWidrow;
  if (text == "uniform-small" || text == "uniform") return InitScheme::UniformSmall;
  throw std::invalid_argument("unknown init scheme: " + std::string(text));
}

NarNetwork zero_network(std::size_t d, std::size_t h, const Normalizer& normalizer) {
  if (d < 1 || h < 1) throw std::invalid_argument("network needs d >= 1 and h >= 1");
  NarNetwork net;
  net.input_weights = Eigen::MatrixXd::Zero(static_cast<Index>(h), static_cast<Index>(d));
  net.input_bias = Eigen::VectorXd::Zero(static_cast<Index>(h));
  net.output_weights = Eigen::VectorXd::Zero(static_cast<Index>(h));
  net.output_bias = 0.0;
  net.normalizer = normalizer;
  return net;
}

NarNetwork init_network(std::size_t d, std::size_t h, std::uint64_t seed, InitScheme scheme,
                        const Normalizer& normalizer) {
  NarNetwork net = zero_network(d, h, normalizer);
  Rng rng(seed);
  const Index hi = static_cast<Index>(h);
  const Index di = static_cast<Index>(d);

  if (scheme == InitScheme::UniformSmall) {
    for (Index j = 0; j < hi; ++j)
      for (Index k = 0; k < di; ++k) net.input_weights(j, k) = rng.uniform(-0.5, 0.5);
    for (Index j = 0; j < hi; ++j) net.input_bias(j) = rng.uniform(-0.5, 0.5);
  } else {
    const double magnitude = 0.7 * std::pow(static_cast<double>(h), 1.0 / static_cast<double>(d));
    for (Index j = 0; j < hi; ++j) {
      for (Index k = 0; k < di; ++k) net.input_weights(j, k) = rng.uniform(-1.0, 1.0);
      const double norm = net.input_weights.row(j).norm();
      if (norm > 0.0) net.input_weights.row(j) *= magnitude / norm;
    }
    for (Index j = 0; j < hi; ++j) {
      // Evenly spaced centres across [-magnitude, magnitude], sign set by the row.
      const double spread = h == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(h - 1);
      const double sign = net.input_weights(j, 0) >= 0.0 ? 1.0 : -1.0;
      net.input_bias(j) = magnitude * spread * sign + rng.uniform(-0.05, 0.05) * magnitude;
    }
  }
  for (Index j = 0; j < hi; ++j) net.output_weights(j) = rng.uniform(-0.5, 0.5);
  net.output_bias = rng.uniform(-0.5, 0.5);
  return net;
}

double forward(const NarNetwork& net, std::span<const double> x) {
  if (x.size() != net.lags()) {
    throw std::invalid_argument("input window length " + std::to_string(x.size()) + " != lag count " +
                                std::to_string(net.lags()));
  }
  Eigen::VectorXd act(net.input_weights.rows());
  return hidden_pass(net, x.data(), act);
}

std::vector<double> predict_targets(const NarNetwork& net, const RegressionSet& reg,
                                    std::span<const std::size_t> idx) {
  check_indices(reg, idx);
  std::vector<double> out;
  out.reserve(idx.size());
  Eigen::VectorXd act(net.input_weights.rows());
  for (const std::size_t i : idx) {
    const double y = hidden_pass(net, reg.inputs.row(static_cast<Index>(i)).data(), act);
    out.push_back(reg.normalizer.invert(y));
  }
  return out;
}

ErrorJacobian errors_and_jacobian(const NarNetwork& net, const RegressionSet& reg,
                                  std::span<const std::size_t> idx) {
  check_indices(reg, idx);
  const Index m = static_cast<Index>(idx.size());
  const Index p = static_cast<Index>(net.parameter_count());
  ErrorJacobian out{Eigen::VectorXd(m), Eigen::MatrixXd(m, p)};
  Eigen::VectorXd act(net.input_weights.rows());
  Eigen::VectorXd grad(p);
  for (Index s = 0; s < m; ++s) {
    const auto i = static_cast<Index>(idx[static_cast<std::size_t>(s)]);
    const double* x = reg.inputs.row(i).data();
    out.errors(s) = reg.targets(i) - hidden_pass(net, x, act);
    output_derivative(net, x, act, grad);
    out.jacobian.row(s) = -grad.transpose();
  }
  return out;
}

Eigen::VectorXd errors(const NarNetwork& net, const RegressionSet& reg, std::span<const std::size_t> idx) {
  check_indices(reg, idx);
  Eigen::VectorXd e(static_cast<Index>(idx.size()));
  Eigen::VectorXd act(net.input_weights.rows());
  for (std::size_t s = 0; s < idx.size(); ++s) {
    const auto i = static_cast<Index>(idx[s]);
    e(static_cast<Index>(s)) = reg.targets(i) - hidden_pass(net, reg.inputs.row(i).data(), act);
  }
  return e;
}

double sum_squared_error(const NarNetwork& net, const RegressionSet& reg, std::span<const std::size_t> idx) {
  return errors(net, reg, idx).squaredNorm();
}

Eigen::VectorXd half_sse_gradient(const NarNetwork& net, const RegressionSet& reg,
                                  std::span<const std::size_t> idx) {
  check_indices(reg, idx);
  const Index h = net.input_weights.rows();
  const Index d = net.input_weights.cols();
  Eigen::MatrixXd g_in = Eigen::MatrixXd::Zero(h, d);
  Eigen::VectorXd g_bias = Eigen::VectorXd::Zero(h);
  Eigen::VectorXd g_out = Eigen::VectorXd::Zero(h);
  double g_out_bias = 0.0;
  Eigen::VectorXd act(h);

  for (const std::size_t si : idx) {
    const auto i = static_cast<Index>(si);
    const double* x = reg.inputs.row(i).data();
    const double err = reg.targets(i) - hidden_pass(net, x, act);
    // d(0.5*err^2)/d(output) = -err
    const double dout = -err;
    g_out_bias += dout;
    for (Index j = 0; j < h; ++j) {
      g_out(j) += dout * act(j);
      const double dz = dout * net.output_weights(j) * (1.0 - act(j) * act(j));
      g_bias(j) += dz;
      for (Index k = 0; k < d; ++k) g_in(j, k) += dz * x[k];
    }
  }

  NarNetwork grad_net = net;
  grad_net.input_weights = g_in;
  grad_net.input_bias = g_bias;
  grad_net.output_weights = g_out;
  grad_net.output_bias = g_out_bias;
  return flatten(grad_net);
}

WeightVector flatten(const NarNetwork& net) {
  const Index h = net.input_weights.rows();
  const Index d = net.input_weights.cols();
  WeightVector w(static_cast<Index>(net.parameter_count()));
  Index at = 0;
  for (Index j = 0; j < h; ++j)
    for (Index k = 0; k < d; ++k) w(at++) = net.input_weights(j, k);
  for (Index j = 0; j < h; ++j) w(at++) = net.input_bias(j);
  for (Index j = 0; j < h; ++j) w(at++) = net.output_weights(j);
  w(at) = net.output_bias;
  return w;
}

NarNetwork unflatten(const WeightVector& w, std::size_t d, std::size_t h, const Normalizer& normalizer) {
  if (static_cast<std::size_t>(w.size()) != parameter_count(d, h)) {
    throw std::invalid_argument("weight vector has " + std::to_string(w.size()) + " entries, expected " +
                                std::to_string(parameter_count(d, h)));
  }
  NarNetwork net = zero_network(d, h, normalizer);
  const Index hi = static_cast<Index>(h);
  const Index di = static_cast<Index>(d);
  Index at = 0;
  for (Index j = 0; j < hi; ++j)
    for (Index k = 0; k < di; ++k) net.input_weights(j, k) = w(at++);
  for (Index j = 0; j < hi; ++j) net.input_bias(j) = w(at++);
  for (Index j = 0; j < hi; ++j) net.output_weights(j) = w(at++);
  net.output_bias = w(at);
  return net;
}

}  // namespace nar
