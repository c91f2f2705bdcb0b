#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace nar {

enum class Split { Train = 0, Validation = 1, Test = 2 };

[[nodiscard]] std::string_view to_string(Split split);

/// Errors (target - output) grouped by the split their target belongs to.
struct SplitErrors {
  std::vector<double> train;
  std::vector<double> validation;
  std::vector<double> test;
};

struct ErrorHistogram {
  std::vector<double> edges;                        ///< bins + 1, strictly increasing
  std::vector<std::array<std::size_t, 3>> counts;   ///< per bin, indexed by Split
  std::size_t zero_error_bin = 0;                    ///< bin holding 0, else the bin centred nearest 0

  [[nodiscard]] std::size_t bins() const noexcept { return counts.size(); }
  [[nodiscard]] std::size_t total(Split split) const;
  [[nodiscard]] std::size_t total() const;
};

/// Uniform bins over [min error, max error]; the last bin is closed on the
/// right. When every error is identical a single bin of width 1 centred on
/// that value is used.
[[nodiscard]] ErrorHistogram error_histogram(const SplitErrors& errors, std::size_t bins = 20);

/// Autocovariance of a residual sequence, biased (1/N) at every lag and by
/// default without mean removal, so lag 0 equals the mean squared error.
struct AcfResult {
  std::vector<double> values;  ///< lags 0..L
  double confidence_limit = 0.0;  ///< 1.96 * c0 / sqrt(N)
  std::size_t sample_count = 0;
  bool mean_removed = false;
};

/// Requires max_lag < errors.size() (std::invalid_argument).
[[nodiscard]] AcfResult autocorrelation(std::span<const double> errors, std::size_t max_lag,
                                        bool remove_mean = false);

struct ResponseRow {
  double time = 0.0;
  double target = 0.0;
  double output = 0.0;
  double error = 0.0;
  Split split = Split::Train;
};

/// Rows sorted by time (stable); error = target - output.
[[nodiscard]] std::vector<ResponseRow> response_table(std::span<const double> times, std::span<const double> targets,
                                                      std::span<const double> outputs, std::span<const Split> splits);

void write_histogram_csv(std::ostream& out, const ErrorHistogram& histogram);
void write_acf_csv(std::ostream& out, const AcfResult& acf);
void write_response_csv(std::ostream& out, std::span<const ResponseRow> rows);

}  // namespace nar
