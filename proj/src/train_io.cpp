#include <cmath>

#include "nar/network_io.hpp"
#include "nar/train.hpp"

namespace nar {

namespace {

nlohmann::json optional_number(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const EpochRecord& rec) {
  nlohmann::json j = {
      {"epoch", rec.epoch},
      {"train_mse", rec.train_mse},
      {"val_mse", optional_number(rec.val_mse)},
      {"test_mse", optional_number(rec.test_mse)},
      {"gradient_norm", rec.gradient_norm},
      {"damping", rec.damping},
      {"accepted", rec.accepted},
  };
  if (rec.br) {
    j["br"] = {
        {"alpha", rec.br->alpha},
        {"beta", rec.br->beta},
        {"gamma", rec.br->gamma},
        {"e_w", rec.br->e_w},
        {"e_d", rec.br->e_d},
        {"objective_before", rec.br->objective_before},
        {"objective_after", rec.br->objective_after},
    };
  }
  return j;
}

}  // namespace

nlohmann::json to_json(const TrainConfig& config) {
  return {
      {"algorithm", to_string(config.algorithm)},
      {"max_epochs", config.max_epochs},
      {"max_val_fail", config.max_val_fail},
      {"min_gradient", config.min_gradient},
      {"mu0", config.mu0},
      {"mu_inc", config.mu_inc},
      {"mu_dec", config.mu_dec},
      {"mu_max", config.mu_max},
      {"sigma0", config.sigma0},
      {"lambda0", config.lambda0},
      {"validation_stopping", config.validation_stopping},
      {"seed", config.seed},
  };
}

TrainConfig train_config_from_json(const nlohmann::json& doc) {
  TrainConfig c;
  c.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
  c.max_epochs = doc.at("max_epochs").get<std::size_t>();
  c.max_val_fail = doc.at("max_val_fail").get<std::size_t>();
  c.min_gradient = doc.at("min_gradient").get<double>();
  c.mu0 = doc.at("mu0").get<double>();
  c.mu_inc = doc.at("mu_inc").get<double>();
  c.mu_dec = doc.at("mu_dec").get<double>();
  c.mu_max = doc.at("mu_max").get<double>();
  c.sigma0 = doc.at("sigma0").get<double>();
  c.lambda0 = doc.at("lambda0").get<double>();
  c.validation_stopping = doc.at("validation_stopping").get<bool>();
  c.seed = doc.at("seed").get<std::uint64_t>();
  return c;
}

nlohmann::json to_json(const TrainReport& report) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto& rec : report.history) history.push_back(to_json(rec));
  return {
      {"kind", "nar-train-report"},
      {"schema_version", 1},
      {"algorithm", to_string(report.algorithm)},
      {"config", to_json(report.config)},
      {"epochs_run", report.epochs_run},
      {"stop_reason", to_string(report.stop_reason)},
      {"best_epoch", report.best_epoch},
      {"initial", to_json(report.initial)},
      {"history", history},
      {"final_network", network_to_json(report.final_network)},
  };
}

}  // namespace nar
