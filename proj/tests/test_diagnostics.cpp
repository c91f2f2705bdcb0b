#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "nar/diagnostics.hpp"
#include "nar/metrics.hpp"
#include "nar/random.hpp"
#include "test_support.hpp"

namespace nar {
namespace {

TEST(Histogram, PaperSpanWidth) {
  SplitErrors e;
  e.train = {-1.283, 0.1, 1.577};
  const auto h = error_histogram(e, 20);
  ASSERT_EQ(h.edges.size(), 21u);
  EXPECT_NEAR(h.edges[1] - h.edges[0], 0.143, 1e-12);
  EXPECT_EQ(h.edges.front(), -1.283);
  EXPECT_EQ(h.edges.back(), 1.577);
}

TEST(Histogram, UnitSpanEndCounts) {
  SplitErrors e;
  e.test = {-1.0, 1.0};
  const auto h = error_histogram(e, 20);
  EXPECT_NEAR(h.edges[1] - h.edges[0], 0.1, 1e-15);
  EXPECT_EQ(h.counts.front()[static_cast<std::size_t>(Split::Test)], 1u);
  EXPECT_EQ(h.counts.back()[static_cast<std::size_t>(Split::Test)], 1u);
  EXPECT_EQ(h.total(), 2u);
  EXPECT_TRUE(h.zero_error_bin == 9u || h.zero_error_bin == 10u);
}

TEST(Histogram, DegenerateSpanUsesOneBin) {
  SplitErrors e;
  e.train = {0.0, 0.0, 0.0};
  e.validation = {0.0};
  const auto h = error_histogram(e, 20);
  ASSERT_EQ(h.bins(), 1u);
  EXPECT_EQ(h.edges[0], -0.5);
  EXPECT_EQ(h.edges[1], 0.5);
  EXPECT_EQ(h.total(Split::Train), 3u);
  EXPECT_EQ(h.total(Split::Validation), 1u);
  EXPECT_EQ(h.zero_error_bin, 0u);
}

TEST(Histogram, ConservesTotalsPerSplit) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    SplitErrors e;
    e.train = test::random_vector(rng, 1 + rng.below(300), -3.0, 2.0);
    e.validation = test::random_vector(rng, rng.below(100), -1.0, 4.0);
    e.test = test::random_vector(rng, rng.below(100), -2.0, 2.0);
    const std::size_t bins = 1 + rng.below(30);
    const auto h = error_histogram(e, bins);
    ASSERT_EQ(h.bins(), bins);
    ASSERT_EQ(h.total(Split::Train), e.train.size());
    ASSERT_EQ(h.total(Split::Validation), e.validation.size());
    ASSERT_EQ(h.total(Split::Test), e.test.size());
    for (std::size_t i = 1; i < h.edges.size(); ++i) ASSERT_LT(h.edges[i - 1], h.edges[i]);
  }
}

TEST(Histogram, RejectsEmptyInput) {
  EXPECT_THROW((void)error_histogram(SplitErrors{}, 20), std::invalid_argument);
  SplitErrors e;
  e.train = {1.0};
  EXPECT_THROW((void)error_histogram(e, 0), std::invalid_argument);
}

TEST(Acf, AllZeroErrors) {
  const std::vector<double> e(50, 0.0);
  const auto acf = autocorrelation(e, 10);
  ASSERT_EQ(acf.values.size(), 11u);
  for (const double c : acf.values) EXPECT_EQ(c, 0.0);
}

TEST(Acf, LagZeroIsMse) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = test::random_vector(rng, 21 + rng.below(500), -4.0, 5.0);
    const std::vector<double> zeros(e.size(), 0.0);
    const auto acf = autocorrelation(e, 20);
    EXPECT_NEAR(acf.values[0], mse(e, zeros), 1e-12);
    EXPECT_EQ(acf.sample_count, e.size());
    EXPECT_FALSE(acf.mean_removed);
  }
}

TEST(Acf, QuadraticHomogeneity) {
  Rng rng(6);
  const auto e = test::random_vector(rng, 300, -1.0, 1.0);
  const double a = -3.7;
  std::vector<double> scaled;
  for (const double x : e) scaled.push_back(a * x);
  const auto base = autocorrelation(e, 15);
  const auto s = autocorrelation(scaled, 15);
  for (std::size_t k = 0; k <= 15; ++k) EXPECT_NEAR(s.values[k], a * a * base.values[k], 1e-12);
}

TEST(Acf, MeanRemovedVariant) {
  const std::vector<double> e{1, 2, 3, 4, 5, 6};
  const auto acf = autocorrelation(e, 2, true);
  EXPECT_TRUE(acf.mean_removed);
  EXPECT_NEAR(acf.values[0], 17.5 / 6.0, 1e-12);
  EXPECT_THROW((void)autocorrelation(e, 6), std::invalid_argument);
}

TEST(Acf, WhiteNoiseStaysInsideBand) {
  Rng rng(2024);
  std::vector<double> e(2000);
  for (auto& x : e) x = rng.normal();
  const auto acf = autocorrelation(e, 20);
  std::size_t inside = 0;
  for (std::size_t k = 1; k <= 20; ++k) inside += std::abs(acf.values[k]) <= acf.confidence_limit ? 1 : 0;
  EXPECT_GE(inside, 18u);
  EXPECT_EQ(inside, 20u);
  EXPECT_NEAR(acf.values[0], 1.0588120021473282, 1e-12);
  EXPECT_NEAR(acf.confidence_limit, 0.046404481999003953, 1e-15);
}

TEST(Response, EmptyAndPerfect) {
  EXPECT_TRUE(response_table({}, {}, {}, {}).empty());
  const std::vector<double> times{3, 1, 2};
  const std::vector<double> values{70, 71, 72};
  const std::vector<Split> splits{Split::Test, Split::Train, Split::Validation};
  const auto rows = response_table(times, values, values, splits);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].time, 1.0);
  EXPECT_EQ(rows[0].split, Split::Train);
  EXPECT_EQ(rows[2].target, 70.0);
  for (const auto& row : rows) EXPECT_EQ(row.error, 0.0);
  EXPECT_THROW((void)response_table(times, values, std::vector<double>{1.0}, splits), std::invalid_argument);
}

TEST(Writers, CsvShapes) {
  SplitErrors e;
  e.train = {-1.0, 0.0, 1.0};
  std::ostringstream hist, acf;
  write_histogram_csv(hist, error_histogram(e, 4));
  write_acf_csv(acf, autocorrelation(e.train, 2));
  const std::string h = hist.str(), a = acf.str();
  EXPECT_EQ(std::count(h.begin(), h.end(), '\n'), 5);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 4);
}

}  // namespace
}  // namespace nar
