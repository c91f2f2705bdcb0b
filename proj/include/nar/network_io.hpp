#pragma once

#include <filesystem>
#include <json.hpp>

#include "nar/network.hpp"

namespace nar {

/// Snapshot document:
///   {"kind": "nar-network", "layout_version": 1, "d": .., "h": ..,
///    "weights": [...], "normalizer": {"x_min": .., "x_max": ..}}
[[nodiscard]] nlohmann::json network_to_json(const NarNetwork& net);
/// Throws DataError on a malformed or incompatible document.
[[nodiscard]] NarNetwork network_from_json(const nlohmann::json& doc);

void save_network(const NarNetwork& net, const std::filesystem::path& path);
[[nodiscard]] NarNetwork load_network(const std::filesystem::path& path);

}  // namespace nar
