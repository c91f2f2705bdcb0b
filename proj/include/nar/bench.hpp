#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nar/diagnostics.hpp"
#include "nar/division.hpp"
#include "nar/metrics.hpp"
#include "nar/network.hpp"
#include "nar/normalizer.hpp"
#include "nar/series.hpp"
#include "nar/train.hpp"

namespace nar {

/// Everything besides the algorithm, split and seed that shapes one run.
struct ExperimentConfig {
  std::size_t lags = 2;
  std::size_t hidden = 10;
  DivisionMethod division = DivisionMethod::RandomInterleaved;
  NormalizationPolicy normalization = NormalizationPolicy::FullSeries;
  InitScheme init = InitScheme::NguyenWidrow;
  TrainConfig train;
  std::size_t histogram_bins = 20;
  std::size_t acf_max_lag = 20;
};

/// Test-set view in the column order of the per-algorithm tables.
struct TestRow {
  double mse = 0.0;
  double r = 0.0;
  double mae = 0.0;
  double mape_percent = 0.0;
  double accuracy_percent = 0.0;
  double efficiency = 0.0;
};

/// One (algorithm, scenario) cell of the experiment grid.
struct ScenarioResult {
  Algorithm algorithm = Algorithm::LM;
  std::string scenario;
  std::size_t n_total = 0;  ///< targets divided by the plan
  SplitCounts counts;
  MetricsBundle train;
  MetricsBundle validation;
  MetricsBundle test;
  TestRow row;
  StopReason stop_reason = StopReason::MaxEpochs;
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  std::uint64_t seed = 0;
  /// Set when the cell failed; metrics are then meaningless.
  std::optional<std::string> error;
  bool diverged = false;

  [[nodiscard]] bool ok() const noexcept { return !error.has_value(); }
};

/// A scenario result together with the artifacts that back it.
struct ScenarioRun {
  ScenarioResult result;
  TrainReport report;
  DivisionPlan plan;
  ErrorHistogram histogram;
  AcfResult acf;  ///< over test errors in time order
  std::vector<ResponseRow> response;
};

/// normalize -> embed -> divide -> init -> train -> predict -> metrics -> diagnostics.
/// Deterministic in all inputs; errors propagate with scenario/algorithm context.
[[nodiscard]] ScenarioRun run_scenario(const SeriesDataset& dataset, Algorithm algorithm, const SplitSpec& scenario,
                                       const ExperimentConfig& config, std::uint64_t seed);

/// Per-cell seed; injective in (algorithm_index, scenario_index) for index values below 2^16.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t algorithm_index,
                                        std::size_t scenario_index);

/// One row per (algorithm, scenario), algorithm-major. A failing cell is
/// recorded in its row and does not stop the grid. Output does not depend on
/// `threads`.
[[nodiscard]] std::vector<ScenarioResult> run_matrix(const SeriesDataset& dataset,
                                                     std::span<const Algorithm> algorithms,
                                                     std::span<const SplitSpec> scenarios,
                                                     const ExperimentConfig& config, std::uint64_t master_seed,
                                                     unsigned threads = 1);

enum class SelectionCriterion { MinTestMse, MaxAccuracy, MaxR, Composite };

[[nodiscard]] std::string_view to_string(SelectionCriterion criterion);
[[nodiscard]] SelectionCriterion selection_criterion_from_string(std::string_view text);

/// Best successful row per algorithm, in order of first appearance.
/// Composite ranks by test MSE at table precision (2 decimals), then r at
/// table precision (4 decimals) descending, then efficiency descending.
[[nodiscard]] std::vector<ScenarioResult> select_best(std::span<const ScenarioResult> table,
                                                      SelectionCriterion criterion = SelectionCriterion::Composite);

}  // namespace nar
