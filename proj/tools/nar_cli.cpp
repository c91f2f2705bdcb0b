// nar: NAR heart-rate forecasting toolkit.
//
//   nar synth   --n 6312 --synth-seed 1 --out hr.csv
//   nar run     --data hr.csv --algo lm --scenario 7 --out run/
//   nar bench   --synthetic --threads 4 --out bench/
//   nar predict --network run/network.json --data hr.csv
//   nar report  --in bench/results.json --format markdown
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 training divergence.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nar/bench.hpp"
#include "nar/error.hpp"
#include "nar/network_io.hpp"
#include "nar/report.hpp"
#include "nar/series.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDivergence = 3;

struct DataOptions {
  std::string path;
  std::string column = "0";
  std::string time_column;
  bool synthetic = false;
  std::size_t n = 6312;
  std::uint64_t synth_seed = 1;
  nar::SyntheticProfile profile;
};

struct ModelOptions {
  std::size_t lags = 2;
  std::size_t hidden = 10;
  std::string division = "random";
  std::string normalize = "full";
  std::string init = "nguyen-widrow";
  std::size_t max_epochs = 1000;
  std::size_t max_val_fail = 6;
  double min_gradient = 1e-7;
  bool no_validation_stop = false;
};

nar::ColumnRef column_ref(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return static_cast<std::size_t>(std::stoull(text));
  }
  return text;
}

void add_data_options(CLI::App* cmd, DataOptions& opts) {
  cmd->add_option("--data", opts.path, "CSV file with the heart-rate series");
  cmd->add_option("--column", opts.column, "Value column (index or header name)")->capture_default_str();
  cmd->add_option("--time-column", opts.time_column, "Optional timestamp column (seconds)");
  cmd->add_flag("--synthetic", opts.synthetic, "Use the built-in synthetic heart-rate profile");
  cmd->add_option("--n", opts.n, "Synthetic series length")->capture_default_str();
  cmd->add_option("--synth-seed", opts.synth_seed, "Synthetic generator seed")->capture_default_str();
  cmd->add_option("--baseline", opts.profile.baseline_bpm, "Synthetic baseline (bpm)")->capture_default_str();
  cmd->add_option("--drift", opts.profile.drift_amplitude, "Synthetic drift amplitude (bpm)")->capture_default_str();
  cmd->add_option("--noise", opts.profile.noise_stddev, "Synthetic noise stddev (bpm)")->capture_default_str();
}

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("--lags", opts.lags, "Lag count d")->capture_default_str();
  cmd->add_option("--hidden", opts.hidden, "Hidden units h")->capture_default_str();
  cmd->add_option("--division", opts.division, "random | block")->capture_default_str();
  cmd->add_option("--normalize", opts.normalize, "full | train")->capture_default_str();
  cmd->add_option("--init", opts.init, "nguyen-widrow | uniform-small")->capture_default_str();
  cmd->add_option("--max-epochs", opts.max_epochs, "Epoch limit")->capture_default_str();
  cmd->add_option("--max-val-fail", opts.max_val_fail, "Validation checks before stopping")->capture_default_str();
  cmd->add_option("--min-gradient", opts.min_gradient, "Gradient stop threshold")->capture_default_str();
  cmd->add_flag("--no-validation-stop", opts.no_validation_stop, "Disable validation early stopping");
}

struct LoadedData {
  nar::SeriesDataset series;
  nlohmann::json descriptor;
};

LoadedData load_data(const DataOptions& opts) {
  if (opts.synthetic == !opts.path.empty()) throw CLI::ValidationError("exactly one of --data or --synthetic is required");
  if (opts.synthetic) {
    return {nar::generate_synthetic(opts.n, opts.synth_seed, opts.profile),
            {{"synthetic", nar::to_json(opts.profile)}, {"n", opts.n}, {"seed", opts.synth_seed}}};
  }
  std::optional<nar::ColumnRef> time_col;
  if (!opts.time_column.empty()) time_col = column_ref(opts.time_column);
  nlohmann::json descriptor = {{"path", opts.path}, {"column", opts.column}};
  if (time_col) descriptor["time_column"] = opts.time_column;
  return {nar::load_series(opts.path, column_ref(opts.column), time_col), descriptor};
}

nar::ExperimentConfig experiment_config(const ModelOptions& opts) {
  nar::ExperimentConfig config;
  config.lags = opts.lags;
  config.hidden = opts.hidden;
  config.division = nar::division_method_from_string(opts.division);
  if (opts.normalize == "full" || opts.normalize == "full-series") {
    config.normalization = nar::NormalizationPolicy::FullSeries;
  } else if (opts.normalize == "train" || opts.normalize == "train-only") {
    config.normalization = nar::NormalizationPolicy::TrainOnly;
  } else {
    throw CLI::ValidationError("--normalize must be full or train");
  }
  config.init = nar::init_scheme_from_string(opts.init);
  config.train.max_epochs = opts.max_epochs;
  config.train.max_val_fail = opts.max_val_fail;
  config.train.min_gradient = opts.min_gradient;
  config.train.validation_stopping = !opts.no_validation_stop;
  config.train.validate();
  return config;
}

std::vector<nar::SplitSpec> parse_scenarios(const std::vector<std::string>& items) {
  std::vector<nar::SplitSpec> out;
  for (const auto& item : items) {
    if (item == "all") {
      out.assign(nar::standard_scenarios().begin(), nar::standard_scenarios().end());
      return out;
    }
    int number = 0;
    try {
      number = std::stoi(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--scenario expects 1..7 or all, got '" + item + "'");
    }
    out.push_back(nar::standard_scenario(number));
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writer(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NAR neural-network forecasting of heart-rate series (LM, BR, SCG trainers)", "nar"};
  app.set_version_flag("--version", std::string(NAR_VERSION));
  app.set_config("--config", "", "Config file (key=value, sections per subcommand); flags override it");
  app.require_subcommand(1);

  DataOptions data;
  ModelOptions model;
  std::uint64_t seed = 1;
  std::string out_path;
  std::vector<std::string> formats;
  std::string criterion = "composite";

  // run
  auto* run_cmd = app.add_subcommand("run", "Train and evaluate one algorithm on one scenario");
  std::string algo = "lm";
  std::string scenario = "7";
  add_data_options(run_cmd, data);
  add_model_options(run_cmd, model);
  run_cmd->add_option("--algo", algo, "lm | br | scg")->capture_default_str();
  run_cmd->add_option("--scenario", scenario, "Scenario 1..7")->capture_default_str();
  run_cmd->add_option("--seed", seed, "Run seed")->capture_default_str();
  run_cmd->add_option("--out", out_path, "Output directory")->required();
  run_cmd->add_option("--format", formats, "csv | json | markdown (repeatable)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run the algorithm x scenario grid");
  std::vector<std::string> algos = {"lm", "br", "scg"};
  std::vector<std::string> scenarios = {"all"};
  unsigned threads = 1;
  add_data_options(bench_cmd, data);
  add_model_options(bench_cmd, model);
  bench_cmd->add_option("--algo", algos, "Algorithms (repeatable or comma separated)")->delimiter(',');
  bench_cmd->add_option("--scenario", scenarios, "Scenarios 1..7 or all")->delimiter(',');
  bench_cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
  bench_cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--criterion", criterion, "min_test_mse | max_accuracy | max_r | composite")
      ->capture_default_str();
  bench_cmd->add_option("--out", out_path, "Output directory")->required();
  bench_cmd->add_option("--format", formats, "Extra formats besides json: csv | markdown")->delimiter(',');

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "Apply a saved network to a series (one-step-ahead)");
  std::string network_path;
  add_data_options(predict_cmd, data);
  predict_cmd->add_option("--network", network_path, "Network snapshot JSON")->required();
  predict_cmd->add_option("--out", out_path, "Output CSV (default stdout)");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic heart-rate series");
  synth_cmd->add_option("--n", data.n, "Series length")->capture_default_str();
  synth_cmd->add_option("--synth-seed,--seed", data.synth_seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--baseline", data.profile.baseline_bpm, "Baseline (bpm)")->capture_default_str();
  synth_cmd->add_option("--drift", data.profile.drift_amplitude, "Drift amplitude (bpm)")->capture_default_str();
  synth_cmd->add_option("--noise", data.profile.noise_stddev, "Noise stddev (bpm)")->capture_default_str();
  synth_cmd->add_option("--out", out_path, "Output CSV (default stdout)");

  // report
  auto* report_cmd = app.add_subcommand("report", "Re-render a saved bench JSON report");
  std::string in_path;
  std::string format = "markdown";
  report_cmd->add_option("--in", in_path, "results.json from bench")->required();
  report_cmd->add_option("--format", format, "csv | json | markdown")->capture_default_str();
  report_cmd->add_option("--criterion", criterion, "Best-row criterion")->capture_default_str();
  report_cmd->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*synth_cmd) {
      const auto series = nar::generate_synthetic(data.n, data.synth_seed, data.profile);
      if (out_path.empty()) {
        nar::write_series_csv(std::cout, series);
      } else {
        write_file(out_path, [&](std::ostream& out) { nar::write_series_csv(out, series); });
      }
      return 0;
    }

    if (*run_cmd) {
      const auto loaded = load_data(data);
      const auto config = experiment_config(model);
      const auto algorithm = nar::algorithm_from_string(algo);
      const auto spec = parse_scenarios({scenario});
      if (spec.size() != 1) throw CLI::ValidationError("run takes a single scenario");
      const auto run = nar::run_scenario(loaded.series, algorithm, spec.front(), config, seed);

      fs::create_directories(out_path);
      const fs::path dir(out_path);
      nar::RunManifest manifest{loaded.descriptor, seed, nar::to_json(config), NAR_VERSION, nar::utc_timestamp()};
      const std::vector<nar::ScenarioResult> rows = {run.result};
      if (formats.empty()) formats = {"json"};
      for (const auto& f : formats) {
        const auto fmt = nar::report_format_from_string(f);
        nar::emit_report(rows, manifest, fmt, dir / ("result" + std::string(nar::file_extension(fmt))));
      }
      write_text(dir / "train_report.json", nar::to_json(run.report).dump(2) + "\n");
      nar::save_network(run.report.final_network, dir / "network.json");
      write_file(dir / "histogram.csv", [&](std::ostream& out) { nar::write_histogram_csv(out, run.histogram); });
      write_file(dir / "acf.csv", [&](std::ostream& out) { nar::write_acf_csv(out, run.acf); });
      write_file(dir / "response.csv", [&](std::ostream& out) { nar::write_response_csv(out, run.response); });

      const auto& r = run.result;
      std::cout << nar::to_string(r.algorithm) << ' ' << r.scenario << ": test MSE " << r.row.mse << ", R " << r.row.r
                << ", MAE " << r.row.mae << ", MAPE " << r.row.mape_percent << "%, accuracy "
                << r.row.accuracy_percent << "%, efficiency " << r.row.efficiency << " (" << r.epochs_run
                << " epochs, stop: " << nar::to_string(r.stop_reason) << ", best epoch " << r.best_epoch << ")\n";
      return 0;
    }

    if (*bench_cmd) {
      const auto loaded = load_data(data);
      const auto config = experiment_config(model);
      std::vector<nar::Algorithm> algorithms;
      for (const auto& a : algos) algorithms.push_back(nar::algorithm_from_string(a));
      const auto specs = parse_scenarios(scenarios);
      const auto crit = nar::selection_criterion_from_string(criterion);

      const auto table = nar::run_matrix(loaded.series, algorithms, specs, config, seed, threads);

      fs::create_directories(out_path);
      const fs::path dir(out_path);
      nar::RunManifest manifest{loaded.descriptor, seed, nar::to_json(config), NAR_VERSION, nar::utc_timestamp()};
      nar::emit_report(table, manifest, nar::ReportFormat::Json, dir / "results.json", crit);
      for (const auto& f : formats) {
        const auto fmt = nar::report_format_from_string(f);
        if (fmt == nar::ReportFormat::Json) continue;
        nar::emit_report(table, manifest, fmt, dir / ("results" + std::string(nar::file_extension(fmt))), crit);
      }
      std::cout << nar::render_markdown(table, crit);

      bool diverged = false;
      for (const auto& row : table) {
        if (!row.ok()) {
          std::cerr << "warning: " << nar::to_string(row.algorithm) << '/' << row.scenario << " failed: " << *row.error
                    << '\n';
          diverged = diverged || row.diverged;
        }
      }
      return diverged ? kExitDivergence : 0;
    }

    if (*predict_cmd) {
      const auto net = nar::load_network(network_path);
      const auto loaded = load_data(data);
      const auto reg = nar::embed_lags(loaded.series, net.lags(), net.normalizer);
      std::vector<std::size_t> all(reg.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      const auto predictions = nar::predict_targets(net, reg, all);
      const auto emit = [&](std::ostream& out) {
        out << std::setprecision(17) << "time,target,prediction,error\n";
        for (std::size_t i = 0; i < all.size(); ++i) {
          out << reg.target_times[i] << ',' << reg.raw_targets[i] << ',' << predictions[i] << ','
              << reg.raw_targets[i] - predictions[i] << '\n';
        }
      };
      if (out_path.empty()) {
        emit(std::cout);
      } else {
        write_file(out_path, emit);
      }
      return 0;
    }

    if (*report_cmd) {
      const auto loaded = nar::load_report(in_path);
      const auto fmt = nar::report_format_from_string(format);
      const auto crit = nar::selection_criterion_from_string(criterion);
      if (out_path.empty()) {
        nar::check_row_consistency(loaded.results);
        switch (fmt) {
          case nar::ReportFormat::Csv: std::cout << nar::render_csv(loaded.results); break;
          case nar::ReportFormat::Markdown: std::cout << nar::render_markdown(loaded.results, crit); break;
          case nar::ReportFormat::Json:
            std::cout << nar::results_document(loaded.results, loaded.manifest, crit).dump(2) << '\n';
            break;
        }
      } else {
        nar::emit_report(loaded.results, loaded.manifest, fmt, out_path, crit);
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nar::TrainingDivergence& e) {
    std::cerr << "training diverged: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const nar::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
