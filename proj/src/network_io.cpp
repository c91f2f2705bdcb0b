#include "nar/network_io.hpp"

#include <fstream>

#include "nar/error.hpp"

namespace nar {

nlohmann::json network_to_json(const NarNetwork& net) {
  const WeightVector w = flatten(net);
  return {
      {"kind", "nar-network"},
      {"layout_version", kWeightLayoutVersion},
      {"d", net.lags()},
      {"h", net.hidden()},
      {"weights", std::vector<double>(w.data(), w.data() + w.size())},
      {"normalizer", {{"x_min", net.normalizer.x_min()}, {"x_max", net.normalizer.x_max()}}},
  };
}

NarNetwork network_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("kind").get<std::string>() != "nar-network") throw DataError("not a network snapshot");
    if (doc.at("layout_version").get<int>() != kWeightLayoutVersion) {
      throw DataError("unsupported weight layout version");
    }
    const auto d = doc.at("d").get<std::size_t>();
    const auto h = doc.at("h").get<std::size_t>();
    const auto values = doc.at("weights").get<std::vector<double>>();
    const Normalizer normalizer(doc.at("normalizer").at("x_min").get<double>(),
                                doc.at("normalizer").at("x_max").get<double>());
    const WeightVector w = Eigen::Map<const WeightVector>(values.data(), static_cast<Eigen::Index>(values.size()));
    return unflatten(w, d, h, normalizer);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed network snapshot: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed network snapshot: ") + e.what());
  }
}

void save_network(const NarNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << network_to_json(net).dump(2) << '\n';
}

NarNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open network snapshot: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed network snapshot: ") + e.what());
  }
  return network_from_json(doc);
}

}  // namespace nar
