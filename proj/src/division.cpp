#include "nar/division.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nar/random.hpp"

namespace nar {

SplitSpec SplitSpec::make(std::string name, double train, double val, double test) {
  SplitSpec spec{std::move(name), train, val, test};
  spec.validate();
  return spec;
}

void SplitSpec::validate() const {
  for (const double f : {train_frac, val_frac, test_frac}) {
    if (!(f > 0.0 && f < 1.0)) {
      throw std::invalid_argument("split '" + name + "': every fraction must lie in (0, 1)");
    }
  }
  if (std::abs(train_frac + val_frac + test_frac - 1.0) > 1e-12) {
    throw std::invalid_argument("split '" + name + "': fractions must sum to 1");
  }
}

const std::array<SplitSpec, 7>& standard_scenarios() {
  static const std::array<SplitSpec, 7> scenarios = {
      SplitSpec::make("scenario1", 0.90, 0.05, 0.05), SplitSpec::make("scenario2", 0.80, 0.10, 0.10),
      SplitSpec::make("scenario3", 0.70, 0.15, 0.15), SplitSpec::make("scenario4", 0.60, 0.20, 0.20),
      SplitSpec::make("scenario5", 0.50, 0.25, 0.25), SplitSpec::make("scenario6", 0.40, 0.30, 0.30),
      SplitSpec::make("scenario7", 0.30, 0.35, 0.35),
  };
  return scenarios;
}

const SplitSpec& standard_scenario(int number) {
  if (number < 1 || number > 7) throw std::invalid_argument("scenario number must be 1..7");
  return standard_scenarios()[static_cast<std::size_t>(number - 1)];
}

std::string_view to_string(DivisionMethod method) {
  return method == DivisionMethod::RandomInterleaved ? "random" : "block";
}

DivisionMethod division_method_from_string(std::string_view text) {
  if (text == "random" || text == "random-interleaved") return DivisionMethod::RandomInterleaved;
  if (text == "block" || text == "contiguous-block") return DivisionMethod::ContiguousBlock;
  throw std::invalid_argument("unknown division method: " + std::string(text));
}

SplitCounts split_counts(std::size_t n_targets, const SplitSpec& spec) {
  spec.validate();
  const auto n = static_cast<double>(n_targets);
  const long long train = std::llround(spec.train_frac * n);
  const long long val = std::llround(spec.val_frac * n);
  const long long test = static_cast<long long>(n_targets) - train - val;
  if (train <= 0 || val <= 0 || test <= 0) {
    throw std::invalid_argument("split '" + spec.name + "' leaves an empty subset for " +
                                std::to_string(n_targets) + " targets");
  }
  return {static_cast<std::size_t>(train), static_cast<std::size_t>(val), static_cast<std::size_t>(test)};
}

DivisionPlan plan_division(std::size_t n_targets, const SplitSpec& spec, DivisionMethod method,
                           std::uint64_t seed) {
  if (n_targets < 3) throw std::invalid_argument("need at least 3 targets to divide");
  const SplitCounts counts = split_counts(n_targets, spec);

  std::vector<std::size_t> order(n_targets);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (method == DivisionMethod::RandomInterleaved) {
    Rng rng(seed);
    for (std::size_t i = n_targets - 1; i > 0; --i) {
      std::swap(order[i], order[rng.below(i + 1)]);
    }
  }

  DivisionPlan plan;
  plan.method = method;
  plan.seed = seed;
  const auto first = order.begin();
  plan.train_idx.assign(first, first + static_cast<std::ptrdiff_t>(counts.train));
  plan.val_idx.assign(first + static_cast<std::ptrdiff_t>(counts.train),
                      first + static_cast<std::ptrdiff_t>(counts.train + counts.val));
  plan.test_idx.assign(first + static_cast<std::ptrdiff_t>(counts.train + counts.val), order.end());
  std::sort(plan.train_idx.begin(), plan.train_idx.end());
  std::sort(plan.val_idx.begin(), plan.val_idx.end());
  std::sort(plan.test_idx.begin(), plan.test_idx.end());
  return plan;
}

}  // namespace nar
