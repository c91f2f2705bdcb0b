#include "nar/train.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nar/early_stopping.hpp"
#include "nar/error.hpp"
#include "nar/optim/levenberg_marquardt.hpp"
#include "nar/optim/scaled_conjugate_gradient.hpp"

namespace nar {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

optim::LmSettings lm_settings(const TrainConfig& config) {
  optim::LmSettings s;
  s.mu_inc = config.mu_inc;
  s.mu_dec = config.mu_dec;
  s.mu_max = config.mu_max;
  return s;
}

// Shared bookkeeping for the three training loops: MSE evaluation in
// original units, early stopping and final-network selection.
class TrainingRun {
 public:
  TrainingRun(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan, const TrainConfig& config)
      : reg_(reg),
        plan_(plan),
        d_(net.lags()),
        h_(net.hidden()),
        normalizer_(net.normalizer),
        unit_scale_(reg.normalizer.scale() * reg.normalizer.scale()),
        stopper_(config.max_val_fail),
        use_validation_(config.validation_stopping && !plan.val_idx.empty()) {
    config.validate();
    if (net.lags() != reg.lags) throw std::invalid_argument("network lag count differs from regression set");
    for (const auto* part : {&plan.train_idx, &plan.val_idx, &plan.test_idx}) {
      for (const std::size_t i : *part) {
        if (i >= reg.size()) throw std::out_of_range("division plan index outside regression set");
      }
    }
    if (plan.train_idx.empty()) throw std::invalid_argument("division plan has no training targets");
    report_.algorithm = config.algorithm;
    report_.config = config;
    report_.final_network = net;
  }

  [[nodiscard]] NarNetwork network(const WeightVector& w) const { return unflatten(w, d_, h_, normalizer_); }
  [[nodiscard]] std::span<const std::size_t> train_idx() const { return plan_.train_idx; }
  [[nodiscard]] std::size_t train_count() const { return plan_.train_idx.size(); }

  [[nodiscard]] double sse(const WeightVector& w) const { return sum_squared_error(network(w), reg_, plan_.train_idx); }

  [[nodiscard]] double to_mse(double sse, std::size_t count) const {
    return sse / static_cast<double>(count) * unit_scale_;
  }

  [[nodiscard]] std::optional<double> mse_on(const NarNetwork& net, const std::vector<std::size_t>& idx) const {
    if (idx.empty()) return std::nullopt;
    return to_mse(sum_squared_error(net, reg_, idx), idx.size());
  }

  void check_finite(double loss, std::size_t epoch) const {
    if (!std::isfinite(loss)) throw TrainingDivergence("non-finite training loss", epoch);
  }

  void set_initial(const WeightVector& w, double train_sse, double gradient_norm) {
    const NarNetwork net = network(w);
    report_.initial.epoch = 0;
    report_.initial.train_mse = to_mse(train_sse, train_count());
    report_.initial.val_mse = mse_on(net, plan_.val_idx);
    report_.initial.test_mse = mse_on(net, plan_.test_idx);
    report_.initial.gradient_norm = gradient_norm;
  }

  /// Appends the epoch record; returns true when validation says stop.
  bool record(EpochRecord rec, const WeightVector& w, double train_sse) {
    const NarNetwork net = network(w);
    rec.train_mse = to_mse(train_sse, train_count());
    rec.val_mse = mse_on(net, plan_.val_idx);
    rec.test_mse = mse_on(net, plan_.test_idx);
    report_.history.push_back(rec);
    report_.epochs_run = rec.epoch;
    last_ = w;
    if (!use_validation_) return false;
    return stopper_.update(rec.epoch, *rec.val_mse, w) == EarlyStopping::Decision::Stop;
  }

  TrainReport finish(StopReason reason) {
    report_.stop_reason = reason;
    if (report_.epochs_run == 0) {
      report_.best_epoch = 0;
    } else if (use_validation_ && stopper_.has_snapshot()) {
      report_.best_epoch = stopper_.best_epoch();
      report_.final_network = network(stopper_.best_weights());
    } else {
      report_.best_epoch = report_.epochs_run;
      report_.final_network = network(last_);
    }
    return std::move(report_);
  }

 private:
  const RegressionSet& reg_;
  const DivisionPlan& plan_;
  std::size_t d_;
  std::size_t h_;
  Normalizer normalizer_;
  double unit_scale_;
  EarlyStopping stopper_;
  bool use_validation_;
  TrainReport report_;
  WeightVector last_;
};

optim::Linearization linearize(const NarNetwork& net, const RegressionSet& reg, std::span<const std::size_t> idx) {
  ErrorJacobian ej = errors_and_jacobian(net, reg, idx);
  return {std::move(ej.errors), std::move(ej.jacobian)};
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::LM: return "LM";
    case Algorithm::BR: return "BR";
    case Algorithm::SCG: return "SCG";
  }
  return "?";
}

Algorithm algorithm_from_string(std::string_view text) {
  const std::string t = lower(text);
  if (t == "lm" || t == "trainlm" || t == "levenberg-marquardt") return Algorithm::LM;
  if (t == "br" || t == "trainbr" || t == "bayesian-regularization") return Algorithm::BR;
  if (t == "scg" || t == "trainscg" || t == "scaled-conjugate-gradient") return Algorithm::SCG;
  throw std::invalid_argument("unknown algorithm: " + std::string(text));
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxEpochs: return "max_epochs";
    case StopReason::MinGradient: return "min_gradient";
    case StopReason::MaxValFail: return "max_val_fail";
    case StopReason::MuMax: return "mu_max";
    case StopReason::Converged: return "converged";
  }
  return "?";
}

StopReason stop_reason_from_string(std::string_view text) {
  for (const auto r : {StopReason::MaxEpochs, StopReason::MinGradient, StopReason::MaxValFail, StopReason::MuMax,
                       StopReason::Converged}) {
    if (to_string(r) == text) return r;
  }
  throw std::invalid_argument("unknown stop reason: " + std::string(text));
}

void TrainConfig::validate() const {
  if (!(mu_dec > 0.0 && mu_dec < 1.0 && mu_inc > 1.0)) {
    throw std::invalid_argument("LM factors must satisfy 0 < mu_dec < 1 < mu_inc");
  }
  if (!(mu0 > 0.0 && mu_max > 0.0 && mu0 <= mu_max)) throw std::invalid_argument("mu0 must lie in (0, mu_max]");
  if (!(min_gradient > 0.0 && sigma0 > 0.0 && lambda0 > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (max_val_fail < 1) throw std::invalid_argument("max_val_fail must be at least 1");
}

double effective_parameters(const Eigen::MatrixXd& jacobian, double alpha, double beta) {
  const Eigen::Index p = jacobian.cols();
  if (alpha <= 0.0) return static_cast<double>(p);
  Eigen::MatrixXd hessian = Eigen::MatrixXd::Zero(p, p);
  hessian.selfadjointView<Eigen::Lower>().rankUpdate(jacobian.transpose(), beta);
  hessian.triangularView<Eigen::StrictlyUpper>() = hessian.transpose();
  hessian.diagonal().array() += alpha;
  const Eigen::LLT<Eigen::MatrixXd> llt(hessian);
  double trace = 0.0;
  if (llt.info() == Eigen::Success) {
    trace = llt.solve(Eigen::MatrixXd::Identity(p, p)).trace();
  } else {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hessian, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < p; ++i) trace += 1.0 / std::max(eig.eigenvalues()(i), alpha);
  }
  return std::clamp(static_cast<double>(p) - alpha * trace, 0.0, static_cast<double>(p));
}

LmEpochResult lm_epoch(const NarNetwork& net, const RegressionSet& reg, std::span<const std::size_t> idx, double mu,
                       const TrainConfig& config) {
  if (!(mu > 0.0 && mu <= config.mu_max)) throw std::invalid_argument("mu must lie in (0, mu_max]");
  const optim::Linearization lin = linearize(net, reg, idx);
  const WeightVector w = flatten(net);
  const double sse = lin.errors.squaredNorm();
  const auto sse_at = [&](const Eigen::VectorXd& trial) {
    return sum_squared_error(unflatten(trial, net.lags(), net.hidden(), net.normalizer), reg, idx);
  };
  const auto it = optim::lm_iterate(lin, w, sse, mu, lm_settings(config), {}, sse_at);

  LmEpochResult out;
  out.gradient_norm = 2.0 * (lin.jacobian.transpose() * lin.errors).lpNorm<Eigen::Infinity>();
  out.accepted = it.accepted;
  out.mu = it.mu;
  out.sse = it.sse;
  out.network = it.accepted ? unflatten(it.weights, net.lags(), net.hidden(), net.normalizer) : net;
  return out;
}

TrainReport train(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan,
                  const TrainConfig& config) {
  switch (config.algorithm) {
    case Algorithm::LM: return train_lm(net, reg, plan, config);
    case Algorithm::BR: return train_br(net, reg, plan, config);
    case Algorithm::SCG: return train_scg(net, reg, plan, config);
  }
  throw std::invalid_argument("unknown algorithm");
}

TrainReport train_lm(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan,
                     const TrainConfig& config) {
  TrainingRun run(net, reg, plan, config);
  WeightVector w = flatten(net);
  const auto sse_at = [&](const Eigen::VectorXd& trial) { return run.sse(trial); };
  const auto settings = lm_settings(config);
  double mu = config.mu0;

  optim::Linearization lin = linearize(net, reg, run.train_idx());
  double sse = lin.errors.squaredNorm();
  run.check_finite(sse, 0);
  double gradient = 2.0 * (lin.jacobian.transpose() * lin.errors).lpNorm<Eigen::Infinity>();
  run.set_initial(w, sse, gradient);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (epoch > 1) {
      lin = linearize(run.network(w), reg, run.train_idx());
      gradient = 2.0 * (lin.jacobian.transpose() * lin.errors).lpNorm<Eigen::Infinity>();
    }
    if (gradient < config.min_gradient) return run.finish(StopReason::MinGradient);

    const auto it = optim::lm_iterate(lin, w, sse, mu, settings, {}, sse_at);
    if (!it.accepted) return run.finish(StopReason::MuMax);
    run.check_finite(it.sse, epoch);
    w = it.weights;
    sse = it.sse;
    mu = it.mu;

    EpochRecord rec;
    rec.epoch = epoch;
    rec.gradient_norm = gradient;
    rec.damping = mu;
    if (run.record(rec, w, sse)) return run.finish(StopReason::MaxValFail);
    if (sse == 0.0) return run.finish(StopReason::Converged);
  }
  return run.finish(StopReason::MaxEpochs);
}

TrainReport train_br(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan,
                     const TrainConfig& config) {
  TrainingRun run(net, reg, plan, config);
  WeightVector w = flatten(net);
  const auto sse_at = [&](const Eigen::VectorXd& trial) { return run.sse(trial); };
  const auto settings = lm_settings(config);
  const auto n_train = static_cast<double>(run.train_count());
  double mu = config.mu0;
  optim::Regularization hyper{0.0, 1.0};

  optim::Linearization lin = linearize(net, reg, run.train_idx());
  double sse = lin.errors.squaredNorm();
  run.check_finite(sse, 0);
  run.set_initial(w, sse, 2.0 * optim::objective_gradient(lin, w, hyper).lpNorm<Eigen::Infinity>());
  if (sse == 0.0) return run.finish(StopReason::Converged);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (epoch > 1) lin = linearize(run.network(w), reg, run.train_idx());
    const double gradient = 2.0 * optim::objective_gradient(lin, w, hyper).lpNorm<Eigen::Infinity>();
    if (gradient < config.min_gradient) return run.finish(StopReason::MinGradient);

    const double before = optim::regularized_objective(sse, w, hyper);
    const auto it = optim::lm_iterate(lin, w, sse, mu, settings, hyper, sse_at);
    if (!it.accepted) return run.finish(StopReason::MuMax);
    run.check_finite(it.sse, epoch);
    w = it.weights;
    sse = it.sse;
    mu = it.mu;

    BrState state;
    state.objective_before = before;
    state.objective_after = it.objective;
    state.gamma = effective_parameters(lin.jacobian, hyper.alpha, hyper.beta);
    state.e_w = 0.5 * w.squaredNorm();
    state.e_d = 0.5 * sse;
    if (state.e_w > 0.0) hyper.alpha = state.gamma / (2.0 * state.e_w);
    if (state.e_d > 0.0 && n_train - state.gamma > 0.0) hyper.beta = (n_train - state.gamma) / (2.0 * state.e_d);
    state.alpha = hyper.alpha;
    state.beta = hyper.beta;

    EpochRecord rec;
    rec.epoch = epoch;
    rec.gradient_norm = gradient;
    rec.damping = mu;
    rec.br = state;
    if (run.record(rec, w, sse)) return run.finish(StopReason::MaxValFail);
    if (sse == 0.0) return run.finish(StopReason::Converged);
  }
  return run.finish(StopReason::MaxEpochs);
}

TrainReport train_scg(const NarNetwork& net, const RegressionSet& reg, const DivisionPlan& plan,
                      const TrainConfig& config) {
  TrainingRun run(net, reg, plan, config);
  optim::Objective objective{
      [&](const Eigen::VectorXd& w) { return 0.5 * run.sse(w); },
      [&](const Eigen::VectorXd& w) { return half_sse_gradient(run.network(w), reg, run.train_idx()); },
  };
  optim::ScgSettings settings;
  settings.sigma0 = config.sigma0;
  settings.lambda0 = config.lambda0;
  optim::ScaledConjugateGradient scg(objective, flatten(net), settings);
  run.check_finite(scg.value(), 0);
  run.set_initial(scg.weights(), 2.0 * scg.value(), 2.0 * scg.gradient().lpNorm<Eigen::Infinity>());

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const double gradient = 2.0 * scg.gradient().lpNorm<Eigen::Infinity>();
    if (gradient < config.min_gradient) return run.finish(StopReason::MinGradient);

    const auto it = scg.iterate();
    run.check_finite(it.value, epoch);
    if (!scg.weights().allFinite()) throw TrainingDivergence("non-finite weights", epoch);

    EpochRecord rec;
    rec.epoch = epoch;
    rec.gradient_norm = gradient;
    rec.damping = it.lambda;
    rec.accepted = it.accepted;
    if (run.record(rec, scg.weights(), 2.0 * it.value)) return run.finish(StopReason::MaxValFail);
    if (it.value == 0.0) return run.finish(StopReason::Converged);
  }
  return run.finish(StopReason::MaxEpochs);
}

}  // namespace nar
