#include "nar/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "nar/error.hpp"
#include "nar/random.hpp"

namespace nar {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string_view>* header) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) return *index;
  const auto& name = std::get<std::string>(ref);
  if (header == nullptr) throw DataError("column '" + name + "' requested but the CSV has no header");
  const auto it = std::find(header->begin(), header->end(), std::string_view(name));
  if (it == header->end()) throw DataError("column '" + name + "' not found in CSV header");
  return static_cast<std::size_t>(it - header->begin());
}

}  // namespace

double SeriesDataset::time_at(std::size_t i) const {
  if (timestamps) return timestamps->at(i);
  return static_cast<double>(i);
}

void validate(const SeriesDataset& series) {
  if (series.size() < kMinSeriesLength) {
    throw DataError("too few points: " + std::to_string(series.size()) + " (minimum " +
                    std::to_string(kMinSeriesLength) + ")");
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!std::isfinite(series.values[i])) {
      throw DataError("non-finite value at index " + std::to_string(i));
    }
  }
  if (series.timestamps) {
    const auto& t = *series.timestamps;
    if (t.size() != series.size()) throw DataError("timestamp count differs from value count");
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!(t[i] > t[i - 1])) {
        throw DataError("timestamps not strictly increasing at index " + std::to_string(i));
      }
    }
  }
}

SeriesDataset load_series(const std::filesystem::path& path, const ColumnRef& column,
                          const std::optional<ColumnRef>& time_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path.string());

  SeriesDataset series;
  series.source_label = path.filename().string();
  std::vector<double> times;

  std::string line;
  std::size_t row = 0;
  bool first = true;
  std::size_t value_col = 0;
  std::optional<std::size_t> time_col;
  std::vector<std::string> header_storage;

  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);

    if (first) {
      first = false;
      const bool named = std::holds_alternative<std::string>(column) ||
                         (time_column && std::holds_alternative<std::string>(*time_column));
      bool is_header = named;
      if (!is_header) {
        const auto idx = std::get<std::size_t>(column);
        is_header = idx < fields.size() && !parse_number(fields[idx]);
      }
      if (is_header) {
        header_storage.assign(fields.begin(), fields.end());
        std::vector<std::string_view> header(header_storage.begin(), header_storage.end());
        value_col = resolve_column(column, &header);
        if (time_column) time_col = resolve_column(*time_column, &header);
        continue;
      }
      value_col = resolve_column(column, nullptr);
      if (time_column) time_col = resolve_column(*time_column, nullptr);
    }

    const auto read_cell = [&](std::size_t col) {
      if (col >= fields.size()) {
        throw DataError("row " + std::to_string(row) + ": missing column " + std::to_string(col));
      }
      const auto parsed = parse_number(fields[col]);
      if (!parsed) {
        throw DataError("row " + std::to_string(row) + ": non-numeric value '" +
                        std::string(fields[col]) + "'");
      }
      return *parsed;
    };
    series.values.push_back(read_cell(value_col));
    if (time_col) times.push_back(read_cell(*time_col));
  }

  if (time_col) series.timestamps = std::move(times);
  validate(series);
  return series;
}

void write_series_csv(std::ostream& out, const SeriesDataset& series) {
  out << "time,value\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << series.time_at(i) << ',' << series.values[i] << '\n';
  }
}

SeriesDataset generate_synthetic(std::size_t n, std::uint64_t seed, const SyntheticProfile& profile) {
  if (n < kMinSeriesLength) {
    throw std::invalid_argument("synthetic series needs at least " +
                                std::to_string(kMinSeriesLength) + " points");
  }
  if (!(profile.noise_stddev >= 0.0)) throw std::invalid_argument("noise stddev must be >= 0");
  if (!(profile.drift_period > 0.0)) throw std::invalid_argument("drift period must be positive");
  if (!(std::abs(profile.ar_coefficient) < 1.0)) {
    throw std::invalid_argument("AR coefficient must lie in (-1, 1)");
  }

  Rng rng(seed);
  const double phi = profile.ar_coefficient;
  const double innovation = profile.noise_stddev * std::sqrt(1.0 - phi * phi);

  SeriesDataset series;
  series.values.resize(n);
  series.timestamps = std::vector<double>(n);
  std::ostringstream label;
  label << "synthetic(n=" << n << ",seed=" << seed << ",baseline=" << profile.baseline_bpm
        << ",drift=" << profile.drift_amplitude << ",noise=" << profile.noise_stddev << ')';
  series.source_label = label.str();

  double noise = profile.noise_stddev > 0.0 ? profile.noise_stddev * rng.normal() : 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t > 0 && profile.noise_stddev > 0.0) noise = phi * noise + innovation * rng.normal();
    const double drift = profile.drift_amplitude *
                         std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / profile.drift_period);
    series.values[t] = std::max(profile.baseline_bpm + drift + noise, 1.0);
    (*series.timestamps)[t] = static_cast<double>(t) * profile.sample_interval_s;
  }
  return series;
}

SeriesDataset make_ar1_series(std::size_t n, double coefficient, double intercept, double start) {
  SeriesDataset series;
  series.values.resize(n);
  double y = start;
  for (std::size_t t = 0; t < n; ++t) {
    series.values[t] = y;
    y = coefficient * y + intercept;
  }
  std::ostringstream label;
  label << "ar1(n=" << n << ",a=" << coefficient << ",c=" << intercept << ",y0=" << start << ')';
  series.source_label = label.str();
  return series;
}

}  // namespace nar
