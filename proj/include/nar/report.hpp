#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nar/bench.hpp"

namespace nar {

inline constexpr int kReportSchemaVersion = 1;

/// What is needed to reproduce a report bit for bit.
struct RunManifest {
  nlohmann::json dataset;  ///< {"path": ..} or {"synthetic": {profile}, "n": .., "seed": ..}
  std::uint64_t master_seed = 0;
  nlohmann::json config;  ///< ExperimentConfig echo
  std::string tool_version = NAR_VERSION;
  std::string timestamp;  ///< ISO-8601 UTC; the only non-reproducible field
};

enum class ReportFormat { Csv, Json, Markdown };

[[nodiscard]] std::string_view to_string(ReportFormat format);
[[nodiscard]] ReportFormat report_format_from_string(std::string_view text);
[[nodiscard]] std::string_view file_extension(ReportFormat format);

[[nodiscard]] std::string utc_timestamp();

[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& config);
[[nodiscard]] ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json to_json(const SyntheticProfile& profile);
[[nodiscard]] nlohmann::json to_json(const MetricsBundle& metrics);
[[nodiscard]] MetricsBundle metrics_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json to_json(const ScenarioResult& result);
[[nodiscard]] ScenarioResult scenario_result_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json to_json(const RunManifest& manifest);
[[nodiscard]] RunManifest manifest_from_json(const nlohmann::json& doc);

/// Re-derives accuracy = 100 - MAPE and efficiency = n_total / train count for
/// every successful row; throws std::logic_error on any mismatch.
void check_row_consistency(std::span<const ScenarioResult> results);

/// Full results document: schema version, manifest, rows and the best row
/// per algorithm under `criterion`.
[[nodiscard]] nlohmann::json results_document(std::span<const ScenarioResult> results, const RunManifest& manifest,
                                              SelectionCriterion criterion = SelectionCriterion::Composite);

/// Header plus one line per row; metric columns MSE, R, MAE, MAPE, Accuracy, Efficiency.
[[nodiscard]] std::string render_csv(std::span<const ScenarioResult> results);

/// One table per algorithm (MSE, R, MAE, MAPE, Accuracy, Efficiency) and a
/// comparison of the best rows (R, MSE, MAE, MAPE, Acc, Eff).
[[nodiscard]] std::string render_markdown(std::span<const ScenarioResult> results,
                                          SelectionCriterion criterion = SelectionCriterion::Composite);

/// Validates rows, renders and writes. Throws std::runtime_error on IO failure.
void emit_report(std::span<const ScenarioResult> results, const RunManifest& manifest, ReportFormat format,
                 const std::filesystem::path& path, SelectionCriterion criterion = SelectionCriterion::Composite);

struct LoadedReport {
  RunManifest manifest;
  std::vector<ScenarioResult> results;
};

/// Reads a JSON document written by emit_report. Throws DataError when malformed.
[[nodiscard]] LoadedReport load_report(const std::filesystem::path& path);

}  // namespace nar
