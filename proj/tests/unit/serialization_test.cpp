#include "tlou/serialization.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "fixtures.hpp"
#include "tlou/verification.hpp"

namespace tlou {
namespace {

using testing::toy_distribution;
using testing::toy_tariff;

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(-1.5e-9), "-1.5e-09");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(TariffJson, RoundTrip) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_instance(rng);
    const auto back = tariff_from_json(tariff_to_json(inst.setting));
    EXPECT_EQ(back, inst.setting);
  }
}

TEST(TariffJson, RejectsMalformed) {
  EXPECT_THROW((void)tariff_from_json("{"), FormatError);
  EXPECT_THROW((void)tariff_from_json("{\"booking_fee\": 1}"), FormatError);
  // Anchor mismatch is a domain error, surfaced as a format error.
  EXPECT_THROW((void)tariff_from_json(R"({"booking_fee":0.1,"baseline":1,
      "lower":{"breakpoints":[0],"values":[0.9]},
      "higher":{"breakpoints":[0],"values":[1]}})"),
               FormatError);
}

TEST(DistributionsJson, RoundTripWithEmptyHours) {
  HourlyDistributions d;
  d[3] = toy_distribution(3);
  d[18] = DiscreteDistribution({0.3, 0.7, 2.25}, {0.2, 0.3, 0.5}, 18, 180);
  const std::string text = distributions_to_json(d);
  const auto back = distributions_from_json(text);
  for (int h = 0; h < 24; ++h) {
    EXPECT_EQ(back[static_cast<std::size_t>(h)], d[static_cast<std::size_t>(h)]) << h;
  }
  EXPECT_EQ(distributions_to_json(back), text);
}

TEST(DistributionsJson, RejectsWrongShape) {
  EXPECT_THROW((void)distributions_from_json("[]"), FormatError);
  EXPECT_THROW((void)distributions_from_json("{}"), FormatError);
}

TEST(MenuJson, RoundTrip) {
  const auto dist = toy_distribution(19);
  SolverConfig cfg;
  cfg.grid.lower = {0.0, 2.0};
  cfg.grid.higher = {0.0, 3.0};
  const Menu m = menu(dist, ContractRules{}, cfg);
  ASSERT_FALSE(m.options.empty());
  const std::string text = menu_to_json(m);
  const Menu back = menu_from_json(text);
  EXPECT_EQ(back.time_frame, 19);
  EXPECT_EQ(back.candidates_total, m.candidates_total);
  EXPECT_EQ(back.infeasible_count, m.infeasible_count);
  EXPECT_EQ(back.has_zero_option, m.has_zero_option);
  ASSERT_EQ(back.options.size(), m.options.size());
  for (std::size_t i = 0; i < m.options.size(); ++i) {
    EXPECT_EQ(back.options[i].setting, m.options[i].setting);
    EXPECT_EQ(back.options[i].target_capacity, m.options[i].target_capacity);
    EXPECT_EQ(back.options[i].expected_revenue, m.options[i].expected_revenue);
    EXPECT_EQ(back.options[i].guarantee, m.options[i].guarantee);
    EXPECT_EQ(back.options[i].margin, m.options[i].margin);
  }
  EXPECT_EQ(menu_to_json(back), text);
}

TEST(OptionJson, RoundTrip) {
  const PricingOption o{5, 4.0, toy_tariff(), 2.28, 1.2, 0.01};
  const auto back = option_from_json(option_to_json(o));
  EXPECT_EQ(back.time_frame, 5);
  EXPECT_EQ(back.setting, o.setting);
  EXPECT_EQ(back.margin, 0.01);
}

TEST(DeltaSweepCsv, RoundTrip) {
  std::vector<DeltaSweep> sweeps(2);
  sweeps[0].time_frame = 0;
  sweeps[0].points = {{0.0, 3}, {0.5, 1}, {1.0, 0}};
  sweeps[0].delta_max = 1.0;
  sweeps[1].time_frame = 18;
  sweeps[1].points = {{0.0, 4}, {0.5, 2}};
  const std::string text = delta_sweep_to_csv(sweeps);
  EXPECT_EQ(text.substr(0, text.find('\n')), "hour,delta,nonzero_option_count");
  const auto back = delta_sweep_from_csv(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].points.size(), 3u);
  EXPECT_EQ(back[0].delta_max, std::optional<double>(1.0));
  EXPECT_FALSE(back[1].delta_max);
  EXPECT_EQ(delta_sweep_to_csv(back), text);
}

TEST(Csv, ParseAndWrite) {
  const auto t = parse_csv("a,b\n1,2\r\n3,4\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][1], "4");
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_THROW((void)t.column("c"), FormatError);
  EXPECT_EQ(to_csv(t), "a,b\n1,2\n3,4\n");
  EXPECT_THROW((void)parse_csv("a,b\n1\n"), FormatError);
}

}  // namespace
}  // namespace tlou
