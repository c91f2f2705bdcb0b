#include "nar/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nar/error.hpp"

namespace nar {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::Markdown: return "markdown";
  }
  return "?";
}

ReportFormat report_format_from_string(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  if (text == "markdown" || text == "md") return ReportFormat::Markdown;
  throw std::invalid_argument("unknown report format: " + std::string(text));
}

std::string_view file_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return ".csv";
    case ReportFormat::Json: return ".json";
    case ReportFormat::Markdown: return ".md";
  }
  return "";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const ExperimentConfig& config) {
  return {
      {"lags", config.lags},
      {"hidden", config.hidden},
      {"division", to_string(config.division)},
      {"normalization", config.normalization == NormalizationPolicy::FullSeries ? "full-series" : "train-only"},
      {"init", to_string(config.init)},
      {"train", to_json(config.train)},
      {"histogram_bins", config.histogram_bins},
      {"acf_max_lag", config.acf_max_lag},
  };
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
  ExperimentConfig c;
  c.lags = doc.at("lags").get<std::size_t>();
  c.hidden = doc.at("hidden").get<std::size_t>();
  c.division = division_method_from_string(doc.at("division").get<std::string>());
  const auto policy = doc.at("normalization").get<std::string>();
  if (policy == "full-series") {
    c.normalization = NormalizationPolicy::FullSeries;
  } else if (policy == "train-only") {
    c.normalization = NormalizationPolicy::TrainOnly;
  } else {
    throw std::invalid_argument("unknown normalization policy: " + policy);
  }
  c.init = init_scheme_from_string(doc.at("init").get<std::string>());
  c.train = train_config_from_json(doc.at("train"));
  c.histogram_bins = doc.at("histogram_bins").get<std::size_t>();
  c.acf_max_lag = doc.at("acf_max_lag").get<std::size_t>();
  return c;
}

nlohmann::json to_json(const SyntheticProfile& profile) {
  return {
      {"baseline_bpm", profile.baseline_bpm},   {"drift_amplitude", profile.drift_amplitude},
      {"drift_period", profile.drift_period},   {"noise_stddev", profile.noise_stddev},
      {"ar_coefficient", profile.ar_coefficient}, {"sample_interval_s", profile.sample_interval_s},
  };
}

nlohmann::json to_json(const MetricsBundle& m) {
  return {
      {"mse", m.mse},
      {"r", m.r},
      {"mae", m.mae},
      {"mape_percent", m.mape_percent},
      {"accuracy_percent", m.accuracy_percent},
      {"r_squared", m.r_squared},
      {"rss", m.rss},
      {"tss", m.tss},
      {"sample_count", m.sample_count},
  };
}

MetricsBundle metrics_from_json(const nlohmann::json& doc) {
  MetricsBundle m;
  m.mse = doc.at("mse").get<double>();
  m.r = doc.at("r").get<double>();
  m.mae = doc.at("mae").get<double>();
  m.mape_percent = doc.at("mape_percent").get<double>();
  m.accuracy_percent = doc.at("accuracy_percent").get<double>();
  m.r_squared = doc.at("r_squared").get<double>();
  m.rss = doc.at("rss").get<double>();
  m.tss = doc.at("tss").get<double>();
  m.sample_count = doc.at("sample_count").get<std::size_t>();
  return m;
}

nlohmann::json to_json(const ScenarioResult& r) {
  return {
      {"algorithm", to_string(r.algorithm)},
      {"scenario", r.scenario},
      {"n_total", r.n_total},
      {"counts", {{"train", r.counts.train}, {"validation", r.counts.val}, {"test", r.counts.test}}},
      {"test_row",
       {{"mse", r.row.mse},
        {"r", r.row.r},
        {"mae", r.row.mae},
        {"mape_percent", r.row.mape_percent},
        {"accuracy_percent", r.row.accuracy_percent},
        {"efficiency", r.row.efficiency}}},
      {"metrics", {{"train", to_json(r.train)}, {"validation", to_json(r.validation)}, {"test", to_json(r.test)}}},
      {"stop_reason", to_string(r.stop_reason)},
      {"epochs_run", r.epochs_run},
      {"best_epoch", r.best_epoch},
      {"seed", r.seed},
      {"error", r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr)},
      {"diverged", r.diverged},
  };
}

ScenarioResult scenario_result_from_json(const nlohmann::json& doc) {
  ScenarioResult r;
  r.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
  r.scenario = doc.at("scenario").get<std::string>();
  r.n_total = doc.at("n_total").get<std::size_t>();
  const auto& counts = doc.at("counts");
  r.counts = {counts.at("train").get<std::size_t>(), counts.at("validation").get<std::size_t>(),
              counts.at("test").get<std::size_t>()};
  const auto& row = doc.at("test_row");
  r.row = {row.at("mse").get<double>(),          row.at("r").get<double>(),
           row.at("mae").get<double>(),          row.at("mape_percent").get<double>(),
           row.at("accuracy_percent").get<double>(), row.at("efficiency").get<double>()};
  const auto& metrics = doc.at("metrics");
  r.train = metrics_from_json(metrics.at("train"));
  r.validation = metrics_from_json(metrics.at("validation"));
  r.test = metrics_from_json(metrics.at("test"));
  r.stop_reason = stop_reason_from_string(doc.at("stop_reason").get<std::string>());
  r.epochs_run = doc.at("epochs_run").get<std::size_t>();
  r.best_epoch = doc.at("best_epoch").get<std::size_t>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  if (!doc.at("error").is_null()) r.error = doc.at("error").get<std::string>();
  r.diverged = doc.at("diverged").get<bool>();
  return r;
}

nlohmann::json to_json(const RunManifest& manifest) {
  return {
      {"dataset", manifest.dataset},         {"master_seed", manifest.master_seed},
      {"config", manifest.config},           {"tool_version", manifest.tool_version},
      {"timestamp", manifest.timestamp},
  };
}

RunManifest manifest_from_json(const nlohmann::json& doc) {
  RunManifest m;
  m.dataset = doc.at("dataset");
  m.master_seed = doc.at("master_seed").get<std::uint64_t>();
  m.config = doc.at("config");
  m.tool_version = doc.at("tool_version").get<std::string>();
  m.timestamp = doc.at("timestamp").get<std::string>();
  return m;
}

void check_row_consistency(std::span<const ScenarioResult> results) {
  for (const auto& r : results) {
    if (!r.ok()) continue;
    const std::string where = std::string(to_string(r.algorithm)) + "/" + r.scenario;
    if (r.row.accuracy_percent != 100.0 - r.row.mape_percent || r.test.accuracy_percent != 100.0 - r.test.mape_percent) {
      throw std::logic_error(where + ": accuracy differs from 100 - MAPE");
    }
    if (r.row.efficiency != efficiency(r.n_total, r.counts.train)) {
      throw std::logic_error(where + ": efficiency differs from n_total / train count");
    }
  }
}

nlohmann::json results_document(std::span<const ScenarioResult> results, const RunManifest& manifest,
                                SelectionCriterion criterion) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : results) rows.push_back(to_json(r));
  nlohmann::json best = nlohmann::json::array();
  for (const auto& r : select_best(results, criterion)) {
    best.push_back({{"algorithm", to_string(r.algorithm)}, {"scenario", r.scenario}});
  }
  return {
      {"kind", "nar-bench-report"},
      {"schema_version", kReportSchemaVersion},
      {"manifest", to_json(manifest)},
      {"results", rows},
      {"best", {{"criterion", to_string(criterion)}, {"rows", best}}},
  };
}

std::string render_csv(std::span<const ScenarioResult> results) {
  std::ostringstream out;
  out << "algorithm,scenario,train_count,val_count,test_count,mse,r,mae,mape_percent,accuracy_percent,efficiency,"
         "r_squared,stop_reason,epochs_run,best_epoch,seed,error\n";
  for (const auto& r : results) {
    out << to_string(r.algorithm) << ',' << r.scenario << ',' << r.counts.train << ',' << r.counts.val << ','
        << r.counts.test << ',' << full(r.row.mse) << ',' << full(r.row.r) << ',' << full(r.row.mae) << ','
        << full(r.row.mape_percent) << ',' << full(r.row.accuracy_percent) << ',' << full(r.row.efficiency) << ','
        << full(r.test.r_squared) << ',' << to_string(r.stop_reason) << ',' << r.epochs_run << ',' << r.best_epoch
        << ',' << r.seed << ',' << (r.error ? csv_escape(*r.error) : "") << '\n';
  }
  return out.str();
}

std::string render_markdown(std::span<const ScenarioResult> results, SelectionCriterion criterion) {
  std::ostringstream out;
  std::vector<Algorithm> order;
  for (const auto& r : results) {
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
  }

  for (const Algorithm algorithm : order) {
    out << "## " << to_string(algorithm) << " testing data results\n\n";
    out << "| Scenario | MSE | R | MAE | MAPE | Accuracy | Efficiency |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : results) {
      if (r.algorithm != algorithm) continue;
      if (!r.ok()) {
        out << "| " << r.scenario << " | failed | | | | | |\n";
        continue;
      }
      out << "| " << r.scenario << " | " << fixed(r.row.mse, 2) << " | " << fixed(r.row.r, 4) << " | "
          << fixed(r.row.mae, 2) << " | " << fixed(r.row.mape_percent, 2) << "% | "
          << fixed(r.row.accuracy_percent, 2) << "% | " << fixed(r.row.efficiency, 2) << " |\n";
    }
    out << '\n';
  }

  out << "## Comparison (best scenario per algorithm, criterion: " << to_string(criterion) << ")\n\n";
  out << "| Algorithm | R | MSE | MAE | MAPE | Acc | Eff |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : select_best(results, criterion)) {
    out << "| " << to_string(r.algorithm) << " (" << r.scenario << ") | " << fixed(r.row.r, 4) << " | "
        << fixed(r.row.mse, 2) << " | " << fixed(r.row.mae, 2) << " | " << fixed(r.row.mape_percent, 2) << "% | "
        << fixed(r.row.accuracy_percent, 2) << "% | " << fixed(r.row.efficiency, 2) << " |\n";
  }
  return out.str();
}

void emit_report(std::span<const ScenarioResult> results, const RunManifest& manifest, ReportFormat format,
                 const std::filesystem::path& path, SelectionCriterion criterion) {
  check_row_consistency(results);
  std::string text;
  switch (format) {
    case ReportFormat::Csv: text = render_csv(results); break;
    case ReportFormat::Json: text = results_document(results, manifest, criterion).dump(2) + "\n"; break;
    case ReportFormat::Markdown: text = render_markdown(results, criterion); break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing report: " + path.string());
}

LoadedReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open report: " + path.string());
  try {
    nlohmann::json doc;
    in >> doc;
    if (doc.at("kind").get<std::string>() != "nar-bench-report") throw DataError("not a bench report");
    if (doc.at("schema_version").get<int>() != kReportSchemaVersion) throw DataError("unsupported report schema");
    LoadedReport loaded;
    loaded.manifest = manifest_from_json(doc.at("manifest"));
    for (const auto& row : doc.at("results")) loaded.results.push_back(scenario_result_from_json(row));
    return loaded;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace nar
