#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nar {

/// Train/validation/test fractions. Construct through make() to validate.
struct SplitSpec {
  std::string name;
  double train_frac = 0.0;
  double val_frac = 0.0;
  double test_frac = 0.0;

  /// Fractions must each be in (0, 1) and sum to 1 within 1e-12.
  [[nodiscard]] static SplitSpec make(std::string name, double train, double val, double test);
  void validate() const;
};

/// The seven sampling scenarios, 90/5/5 down to 30/35/35 in steps of 10%
/// training data. Named "scenario1" ... "scenario7".
[[nodiscard]] const std::array<SplitSpec, 7>& standard_scenarios();
/// 1-based lookup into standard_scenarios().
[[nodiscard]] const SplitSpec& standard_scenario(int number);

enum class DivisionMethod { RandomInterleaved, ContiguousBlock };

[[nodiscard]] std::string_view to_string(DivisionMethod method);
[[nodiscard]] DivisionMethod division_method_from_string(std::string_view text);

struct SplitCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

/// round(train_frac*n), round(val_frac*n), remainder; halves round away from
/// zero. Throws std::invalid_argument when any count would be zero or negative.
[[nodiscard]] SplitCounts split_counts(std::size_t n_targets, const SplitSpec& spec);

/// Partition of target indices. Each index list is sorted ascending.
struct DivisionPlan {
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> val_idx;
  std::vector<std::size_t> test_idx;
  DivisionMethod method = DivisionMethod::RandomInterleaved;
  std::uint64_t seed = 0;

  [[nodiscard]] SplitCounts counts() const { return {train_idx.size(), val_idx.size(), test_idx.size()}; }
  [[nodiscard]] std::size_t total() const { return train_idx.size() + val_idx.size() + test_idx.size(); }
};

/// Random-interleaved: a seeded Fisher-Yates shuffle of 0..n-1 is cut into the
/// three counts. Contiguous-block: train, validation, test in time order.
[[nodiscard]] DivisionPlan plan_division(std::size_t n_targets, const SplitSpec& spec,
                                         DivisionMethod method, std::uint64_t seed);

}  // namespace nar
