#include "tlou/step_tariff.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "tlou/verification.hpp"

namespace tlou {
namespace {

using testing::flat_tariff;
using testing::scenario_sum_cost;
using testing::toy_distribution;
using testing::toy_tariff;

TEST(StepFunction, RightContinuousAtBreakpoints) {
  const StepFunction f({0.0, 2.0, 3.5}, {1.0, 0.8, 0.6});
  EXPECT_DOUBLE_EQ(f(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f(1.999), 1.0);
  EXPECT_DOUBLE_EQ(f(2.0), 0.8);
  EXPECT_DOUBLE_EQ(f(3.4), 0.8);
  EXPECT_DOUBLE_EQ(f(3.5), 0.6);
  EXPECT_DOUBLE_EQ(f(1e6), 0.6);
}

TEST(StepFunction, RejectsBadBreakpoints) {
  EXPECT_THROW(StepFunction({0.5, 1.0}, {1.0, 0.9}), std::invalid_argument);
  EXPECT_THROW(StepFunction({0.0, 1.0, 1.0}, {1.0, 0.9, 0.8}), std::invalid_argument);
  EXPECT_THROW(StepFunction({0.0, 1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(StepFunction({}, {}), std::invalid_argument);
}

TEST(StepFunction, NegativeCapacityIsDomainError) {
  EXPECT_THROW((void)StepFunction::constant(1.0)(-0.1), std::domain_error);
}

TEST(TariffSetting, EnforcesInvariants) {
  // Anchors must equal the baseline.
  EXPECT_THROW(TariffSetting(0.1, StepFunction({0.0, 1.0}, {0.9, 0.8}),
                             StepFunction::constant(1.0), 1.0),
               std::invalid_argument);
  // Lower curve rising.
  EXPECT_THROW(TariffSetting(0.1, StepFunction({0.0, 1.0}, {1.0, 1.1}),
                             StepFunction::constant(1.0), 1.0),
               std::invalid_argument);
  // Higher curve falling.
  EXPECT_THROW(TariffSetting(0.1, StepFunction::constant(1.0),
                             StepFunction({0.0, 1.0}, {1.0, 0.9}), 1.0),
               std::invalid_argument);
  EXPECT_THROW(TariffSetting(-0.1, StepFunction::constant(1.0), StepFunction::constant(1.0), 1.0),
               std::invalid_argument);
  EXPECT_NO_THROW(toy_tariff());
}

TEST(Cost, ToyExamples) {
  const auto t = toy_tariff();
  EXPECT_NEAR(cost(t, 0.0, 2.5), 2.5, 1e-12);
  EXPECT_NEAR(cost(t, 2.5, 2.5), 2.25, 1e-12);  // boundary bills the lower price
  EXPECT_NEAR(cost(t, 2.5, 4.0), 4.25, 1e-12);  // pi^H(2.5) is still the first step
}

TEST(Cost, NegativeInputsAreDomainErrors) {
  const auto t = toy_tariff();
  EXPECT_THROW((void)cost(t, -1.0, 1.0), std::domain_error);
  EXPECT_THROW((void)cost(t, 1.0, -1.0), std::domain_error);
}

TEST(Partition, ToyExamples) {
  const auto d = toy_distribution();
  auto p = partition(d, 0.0);
  EXPECT_TRUE(p.below.empty());
  EXPECT_EQ(p.above, (std::vector<std::size_t>{0, 1, 2}));

  p = partition(d, 2.5);
  EXPECT_EQ(p.below, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.above, (std::vector<std::size_t>{2}));

  p = partition(d, 10.0);
  EXPECT_EQ(p.below.size(), 3u);
  EXPECT_TRUE(p.above.empty());
}

TEST(ExpectedCost, ToyExamples) {
  const auto t = toy_tariff();
  const auto d = toy_distribution();
  EXPECT_NEAR(expected_cost(t, 0.0, d), 2.35, 1e-12);
  EXPECT_NEAR(expected_cost(t, 1.0, d), 2.45, 1e-12);
  EXPECT_NEAR(expected_cost(t, 2.0, d), 2.49, 1e-12);
  EXPECT_NEAR(expected_cost(t, 2.5, d), 2.29, 1e-12);
  EXPECT_NEAR(expected_cost(t, 4.0, d), 2.28, 1e-12);
}

TEST(ExpectedCost, MatchesScenarioSum) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto inst = random_instance(rng);
    for (double c : {0.0, 0.37, 1.0, 2.5, 4.2, 9.0}) {
      EXPECT_NEAR(expected_cost(inst.setting, c, inst.dist),
                  scenario_sum_cost(inst.setting, c, inst.dist), 1e-12);
    }
  }
}

TEST(RelativeCost, ToyExamples) {
  const auto t = toy_tariff();
  for (double x : {0.1, 1.0, 2.5, 7.0}) EXPECT_NEAR(relative_cost(t, 0.0, x), 1.0, 1e-12);
  EXPECT_NEAR(relative_cost(t, 2.5, 2.5), 0.9, 1e-12);
  EXPECT_NEAR(relative_cost(t, 2.5, 4.0), 1.0625, 1e-12);
  EXPECT_THROW((void)relative_cost(t, 1.0, 0.0), std::domain_error);
}

TEST(Guarantee, ToyExamples) {
  const auto t = toy_tariff();
  EXPECT_DOUBLE_EQ(guarantee(t, 0.0), 0.0);
  EXPECT_NEAR(guarantee(t, 2.5), 0.5, 1e-12);
  EXPECT_NEAR(guarantee(t, 3.0), 1.5, 1e-12);
}

TEST(Properties, RelativeCostAtZeroIsBaseline) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(0.01, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_instance(rng);
    const double v = x(rng);
    EXPECT_NEAR(relative_cost(inst.setting, 0.0, v), inst.setting.baseline, 1e-12);
  }
}

TEST(Properties, BoundaryUsesLowerPrice) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_instance(rng);
    for (double c : inst.setting.higher.breakpoints()) {
      EXPECT_DOUBLE_EQ(cost(inst.setting, c, c),
                       inst.setting.booking_fee * c + inst.setting.lower(c) * c);
    }
  }
}

TEST(Properties, GuaranteeIsNonNegative) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_instance(rng);
    for (double c = 0.0; c < 8.0; c += 0.05) EXPECT_GE(guarantee(inst.setting, c), 0.0);
  }
}

TEST(Properties, FlatTariffExpectedCostIsMeanTimesBaseline) {
  const auto d = toy_distribution();
  const auto t = flat_tariff(1.7);
  for (double c : {0.0, 1.0, 3.3}) EXPECT_NEAR(expected_cost(t, c, d), 1.7 * d.mean(), 1e-12);
}

}  // namespace
}  // namespace tlou
