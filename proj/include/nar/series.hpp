#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace nar {

/// Shortest series accepted anywhere in the pipeline: the default lag count
/// (2) plus 30 targets so three splits are never empty.
inline constexpr std::size_t kMinSeriesLength = 32;

/// A univariate heart-rate series (beats/min), in time order.
struct SeriesDataset {
  std::vector<double> values;
  /// Seconds, strictly increasing, same length as values when present.
  std::optional<std::vector<double>> timestamps;
  std::string source_label;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  /// Timestamp of sample i, or i itself when the series carries no clock.
  [[nodiscard]] double time_at(std::size_t i) const;
};

/// Checks every dataset invariant; throws DataError naming the first violation.
void validate(const SeriesDataset& series);

/// CSV column selector: zero-based index or header name.
using ColumnRef = std::variant<std::size_t, std::string>;

/// Reads one numeric column (and optionally a timestamp column) from a CSV file.
///
/// The first non-empty line is treated as a header when a column is selected
/// by name or when the selected cell does not parse as a number. Row numbers
/// in error messages are 1-based physical line numbers.
[[nodiscard]] SeriesDataset load_series(const std::filesystem::path& path, const ColumnRef& column,
                                        const std::optional<ColumnRef>& time_column = std::nullopt);

/// Writes `time,value` rows with a header.
void write_series_csv(std::ostream& out, const SeriesDataset& series);

/// Parameters for the synthetic heart-rate generator.
struct SyntheticProfile {
  double baseline_bpm = 75.0;
  double drift_amplitude = 8.0;
  /// Period of the sinusoidal drift, in samples.
  double drift_period = 900.0;
  /// Stationary standard deviation of the AR(1) noise component.
  double noise_stddev = 1.5;
  double ar_coefficient = 0.8;
  double sample_interval_s = 1.0;
};

/// baseline + drift_amplitude*sin(2*pi*t/drift_period) + AR(1) noise, clamped
/// to at least 1 bpm. Deterministic in (n, seed, profile).
[[nodiscard]] SeriesDataset generate_synthetic(std::size_t n, std::uint64_t seed,
                                               const SyntheticProfile& profile = {});

/// Noiseless y(t) = coefficient*y(t-1) + intercept starting from `start`.
[[nodiscard]] SeriesDataset make_ar1_series(std::size_t n, double coefficient, double intercept,
                                            double start);

}  // namespace nar
