#include "nar/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nar {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
  }
  return "?";
}

std::size_t ErrorHistogram::total(Split split) const {
  std::size_t sum = 0;
  for (const auto& c : counts) sum += c[static_cast<std::size_t>(split)];
  return sum;
}

std::size_t ErrorHistogram::total() const {
  return total(Split::Train) + total(Split::Validation) + total(Split::Test);
}

ErrorHistogram error_histogram(const SplitErrors& errors, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  const std::array<const std::vector<double>*, 3> parts = {&errors.train, &errors.validation, &errors.test};

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  for (const auto* part : parts) {
    for (const double e : *part) {
      if (!std::isfinite(e)) throw std::invalid_argument("histogram errors must be finite");
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("histogram needs at least one error value");

  ErrorHistogram hist;
  if (lo == hi) {
    bins = 1;
    hist.edges = {lo - 0.5, hi + 0.5};
  } else {
    hist.edges.resize(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b) hist.edges[b] = lo + width * static_cast<double>(b);
    hist.edges.back() = hi;
  }
  hist.counts.assign(bins, {0, 0, 0});

  const double first = hist.edges.front();
  const double width = (hist.edges.back() - first) / static_cast<double>(bins);
  for (std::size_t s = 0; s < parts.size(); ++s) {
    for (const double e : *parts[s]) {
      auto b = static_cast<std::size_t>(std::floor((e - first) / width));
      b = std::min(b, bins - 1);
      // Guard against rounding placing e just outside its computed bin.
      while (b > 0 && e < hist.edges[b]) --b;
      while (b + 1 < bins && e >= hist.edges[b + 1]) ++b;
      ++hist.counts[b][s];
    }
  }

  const auto zero_it = std::find_if(hist.edges.begin() + 1, hist.edges.end(), [](double edge) { return edge >= 0.0; });
  if (hist.edges.front() <= 0.0 && hist.edges.back() >= 0.0) {
    std::size_t b = static_cast<std::size_t>(zero_it - hist.edges.begin()) - 1;
    if (hist.edges[b + 1] == 0.0 && b + 1 < bins) ++b;  // zero on an interior edge belongs to the right bin
    hist.zero_error_bin = b;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < bins; ++b) {
      const double centre = 0.5 * (hist.edges[b] + hist.edges[b + 1]);
      if (std::abs(centre) < best) {
        best = std::abs(centre);
        hist.zero_error_bin = b;
      }
    }
  }
  return hist;
}

AcfResult autocorrelation(std::span<const double> errors, std::size_t max_lag, bool remove_mean) {
  const std::size_t n = errors.size();
  if (max_lag >= n) {
    throw std::invalid_argument("max lag " + std::to_string(max_lag) + " must be below the sample count " +
                                std::to_string(n));
  }
  double mean = 0.0;
  if (remove_mean) mean = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(n);

  AcfResult acf;
  acf.sample_count = n;
  acf.mean_removed = remove_mean;
  acf.values.resize(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double sum = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) sum += (errors[t] - mean) * (errors[t + k] - mean);
    acf.values[k] = sum / static_cast<double>(n);
  }
  acf.confidence_limit = 1.96 * acf.values[0] / std::sqrt(static_cast<double>(n));
  return acf;
}

std::vector<ResponseRow> response_table(std::span<const double> times, std::span<const double> targets,
                                        std::span<const double> outputs, std::span<const Split> splits) {
  const std::size_t n = times.size();
  if (targets.size() != n || outputs.size() != n || splits.size() != n) {
    throw std::invalid_argument("response table columns differ in length");
  }
  std::vector<ResponseRow> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = {times[i], targets[i], outputs[i], targets[i] - outputs[i], splits[i]};
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ResponseRow& a, const ResponseRow& b) { return a.time < b.time; });
  return rows;
}

void write_histogram_csv(std::ostream& out, const ErrorHistogram& histogram) {
  out << std::setprecision(17);
  out << "bin,left_edge,right_edge,train,validation,test,zero_error_bin\n";
  for (std::size_t b = 0; b < histogram.bins(); ++b) {
    const auto& c = histogram.counts[b];
    out << b << ',' << histogram.edges[b] << ',' << histogram.edges[b + 1] << ',' << c[0] << ',' << c[1] << ','
        << c[2] << ',' << (b == histogram.zero_error_bin ? 1 : 0) << '\n';
  }
}

void write_acf_csv(std::ostream& out, const AcfResult& acf) {
  out << std::setprecision(17);
  out << "lag,value,lower_limit,upper_limit\n";
  for (std::size_t k = 0; k < acf.values.size(); ++k) {
    out << k << ',' << acf.values[k] << ',' << -acf.confidence_limit << ',' << acf.confidence_limit << '\n';
  }
}

void write_response_csv(std::ostream& out, std::span<const ResponseRow> rows) {
  out << std::setprecision(17);
  out << "time,target,output,error,split\n";
  for (const auto& row : rows) {
    out << row.time << ',' << row.target << ',' << row.output << ',' << row.error << ',' << to_string(row.split)
        << '\n';
  }
}

}  // namespace nar
