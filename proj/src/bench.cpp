#include "nar/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "nar/embedding.hpp"
#include "nar/error.hpp"
#include "nar/random.hpp"

namespace nar {

namespace {

constexpr std::uint64_t kDivisionStream = 0x6469766973696f6eULL;
constexpr std::uint64_t kInitStream = 0x696e697469616c73ULL;

std::vector<double> gather(const std::vector<double>& values, std::span<const std::size_t> idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (const std::size_t i : idx) out.push_back(values[i]);
  return out;
}

MetricsBundle split_metrics(const NarNetwork& net, const RegressionSet& reg, std::span<const std::size_t> idx) {
  const auto predictions = predict_targets(net, reg, idx);
  const auto targets = gather(reg.raw_targets, idx);
  return compute_metrics(targets, predictions);
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

}  // namespace

ScenarioRun run_scenario(const SeriesDataset& dataset, Algorithm algorithm, const SplitSpec& scenario,
                         const ExperimentConfig& config, std::uint64_t seed) {
  const std::string context = std::string(to_string(algorithm)) + "/" + scenario.name + ": ";
  try {
    validate(dataset);
    if (config.lags < 1 || config.lags + 30 > dataset.size()) {
      throw std::invalid_argument("lag count " + std::to_string(config.lags) + " out of range");
    }
    const std::size_t n_targets = dataset.size() - config.lags;

    ScenarioRun run;
    run.plan = plan_division(n_targets, scenario, config.division, mix64(seed ^ kDivisionStream));

    Normalizer normalizer;
    if (config.normalization == NormalizationPolicy::FullSeries) {
      normalizer = fit_normalizer(dataset.values);
    } else {
      std::vector<double> train_values;
      train_values.reserve(run.plan.train_idx.size());
      for (const std::size_t i : run.plan.train_idx) train_values.push_back(dataset.values[i + config.lags]);
      normalizer = fit_normalizer(train_values);
    }
    const RegressionSet reg = embed_lags(dataset, config.lags, normalizer);
    const NarNetwork initial =
        init_network(config.lags, config.hidden, mix64(seed ^ kInitStream), config.init, normalizer);

    TrainConfig train_config = config.train;
    train_config.algorithm = algorithm;
    train_config.seed = seed;
    run.report = train(initial, reg, run.plan, train_config);
    const NarNetwork& net = run.report.final_network;

    ScenarioResult& r = run.result;
    r.algorithm = algorithm;
    r.scenario = scenario.name;
    r.n_total = n_targets;
    r.counts = run.plan.counts();
    r.train = split_metrics(net, reg, run.plan.train_idx);
    r.validation = split_metrics(net, reg, run.plan.val_idx);
    r.test = split_metrics(net, reg, run.plan.test_idx);
    r.row = {r.test.mse,          r.test.r, r.test.mae, r.test.mape_percent, r.test.accuracy_percent,
             efficiency(n_targets, r.counts.train)};
    r.stop_reason = run.report.stop_reason;
    r.epochs_run = run.report.epochs_run;
    r.best_epoch = run.report.best_epoch;
    r.seed = seed;

    // Diagnostics in original units.
    std::vector<std::size_t> all(n_targets);
    std::vector<Split> labels(n_targets, Split::Train);
    for (std::size_t i = 0; i < n_targets; ++i) all[i] = i;
    for (const std::size_t i : run.plan.val_idx) labels[i] = Split::Validation;
    for (const std::size_t i : run.plan.test_idx) labels[i] = Split::Test;
    const auto outputs = predict_targets(net, reg, all);

    SplitErrors split_errors;
    for (std::size_t i = 0; i < n_targets; ++i) {
      const double e = reg.raw_targets[i] - outputs[i];
      switch (labels[i]) {
        case Split::Train: split_errors.train.push_back(e); break;
        case Split::Validation: split_errors.validation.push_back(e); break;
        case Split::Test: split_errors.test.push_back(e); break;
      }
    }
    run.histogram = error_histogram(split_errors, config.histogram_bins);
    const std::size_t max_lag = std::min(config.acf_max_lag, split_errors.test.size() - 1);
    run.acf = autocorrelation(split_errors.test, max_lag);
    run.response = response_table(reg.target_times, reg.raw_targets, outputs, labels);
    return run;
  } catch (const TrainingDivergence& e) {
    throw TrainingDivergence(context + e.what(), e.epoch());
  } catch (const DataError& e) {
    throw DataError(context + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(context + e.what());
  } catch (const std::domain_error& e) {
    throw DataError(context + e.what());
  }
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t algorithm_index, std::size_t scenario_index) {
  const std::uint64_t cell = (static_cast<std::uint64_t>(algorithm_index) << 16) | scenario_index;
  return mix64(master_seed + mix64(cell));
}

std::vector<ScenarioResult> run_matrix(const SeriesDataset& dataset, std::span<const Algorithm> algorithms,
                                       std::span<const SplitSpec> scenarios, const ExperimentConfig& config,
                                       std::uint64_t master_seed, unsigned threads) {
  if (algorithms.empty() || scenarios.empty()) {
    throw std::invalid_argument("run_matrix needs at least one algorithm and one scenario");
  }
  const std::size_t cells = algorithms.size() * scenarios.size();
  std::vector<ScenarioResult> table(cells);

  const auto run_cell = [&](std::size_t cell) {
    const std::size_t a = cell / scenarios.size();
    const std::size_t s = cell % scenarios.size();
    const std::uint64_t seed = derive_seed(master_seed, a, s);
    try {
      table[cell] = run_scenario(dataset, algorithms[a], scenarios[s], config, seed).result;
    } catch (const std::exception& e) {
      ScenarioResult failed;
      failed.algorithm = algorithms[a];
      failed.scenario = scenarios[s].name;
      failed.seed = seed;
      failed.error = e.what();
      failed.diverged = dynamic_cast<const TrainingDivergence*>(&e) != nullptr;
      table[cell] = std::move(failed);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells)));
  if (workers == 1) {
    for (std::size_t cell = 0; cell < cells; ++cell) run_cell(cell);
    return table;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t cell = next++; cell < cells; cell = next++) run_cell(cell);
    });
  }
  pool.clear();  // joins
  return table;
}

std::string_view to_string(SelectionCriterion criterion) {
  switch (criterion) {
    case SelectionCriterion::MinTestMse: return "min_test_mse";
    case SelectionCriterion::MaxAccuracy: return "max_accuracy";
    case SelectionCriterion::MaxR: return "max_r";
    case SelectionCriterion::Composite: return "composite";
  }
  return "?";
}

SelectionCriterion selection_criterion_from_string(std::string_view text) {
  for (const auto c : {SelectionCriterion::MinTestMse, SelectionCriterion::MaxAccuracy, SelectionCriterion::MaxR,
                       SelectionCriterion::Composite}) {
    if (to_string(c) == text) return c;
  }
  throw std::invalid_argument("unknown selection criterion: " + std::string(text));
}

std::vector<ScenarioResult> select_best(std::span<const ScenarioResult> table, SelectionCriterion criterion) {
  // true when a ranks strictly ahead of b
  const auto better = [criterion](const ScenarioResult& a, const ScenarioResult& b) {
    switch (criterion) {
      case SelectionCriterion::MinTestMse: return a.row.mse < b.row.mse;
      case SelectionCriterion::MaxAccuracy: return a.row.accuracy_percent > b.row.accuracy_percent;
      case SelectionCriterion::MaxR: return a.row.r > b.row.r;
      case SelectionCriterion::Composite: {
        const double mse_a = round_to(a.row.mse, 2);
        const double mse_b = round_to(b.row.mse, 2);
        if (mse_a != mse_b) return mse_a < mse_b;
        const double r_a = round_to(a.row.r, 4);
        const double r_b = round_to(b.row.r, 4);
        if (r_a != r_b) return r_a > r_b;
        return a.row.efficiency > b.row.efficiency;
      }
    }
    return false;
  };

  std::vector<ScenarioResult> best;
  for (const auto& row : table) {
    if (!row.ok()) continue;
    auto it = std::find_if(best.begin(), best.end(), [&](const ScenarioResult& b) { return b.algorithm == row.algorithm; });
    if (it == best.end()) {
      best.push_back(row);
    } else if (better(row, *it)) {
      *it = row;
    }
  }
  return best;
}

}  // namespace nar
