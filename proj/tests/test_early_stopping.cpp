#include <gtest/gtest.h>

#include <limits>

#include "nar/early_stopping.hpp"

namespace nar {
namespace {

TEST(EarlyStopping, StopsOnSixthNonImprovementAndKeepsBest) {
  EarlyStopping stopper(6);
  const std::vector<double> val{1.0, 1.1, 1.2, 1.0, 1.3, 1.4, 1.5};
  for (std::size_t e = 0; e < val.size(); ++e) {
    const auto decision = stopper.update(e + 1, val[e], WeightVector::Constant(3, static_cast<double>(e + 1)));
    EXPECT_EQ(decision, e + 1 == val.size() ? EarlyStopping::Decision::Stop : EarlyStopping::Decision::Continue)
        << "epoch " << e + 1;
  }
  EXPECT_EQ(stopper.fail_count(), 6u);
  EXPECT_EQ(stopper.best_epoch(), 1u);
  EXPECT_EQ(stopper.best_value(), 1.0);
  EXPECT_EQ(stopper.best_weights(), WeightVector::Constant(3, 1.0));
}

TEST(EarlyStopping, ImprovementResetsCounter) {
  EarlyStopping stopper(2);
  EXPECT_EQ(stopper.update(1, 5.0, WeightVector::Zero(1)), EarlyStopping::Decision::Continue);
  EXPECT_EQ(stopper.update(2, 6.0, WeightVector::Zero(1)), EarlyStopping::Decision::Continue);
  EXPECT_EQ(stopper.update(3, 4.0, WeightVector::Ones(1)), EarlyStopping::Decision::Continue);
  EXPECT_EQ(stopper.fail_count(), 0u);
  EXPECT_EQ(stopper.update(4, 4.5, WeightVector::Zero(1)), EarlyStopping::Decision::Continue);
  EXPECT_EQ(stopper.update(5, 4.5, WeightVector::Zero(1)), EarlyStopping::Decision::Stop);
  EXPECT_EQ(stopper.best_epoch(), 3u);
}

TEST(EarlyStopping, RejectsBadInput) {
  EXPECT_THROW(EarlyStopping(0), std::invalid_argument);
  EarlyStopping stopper(3);
  EXPECT_FALSE(stopper.has_snapshot());
  EXPECT_THROW((void)stopper.update(1, std::numeric_limits<double>::quiet_NaN(), WeightVector::Zero(1)),
               std::invalid_argument);
}

}  // namespace
}  // namespace nar
