#include "tlou_cli/synthetic_meter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace tlou::cli {

namespace {

// Lognormal multiplier with unit mean.
double unit_lognormal(std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> n(-0.5 * sigma * sigma, sigma);
  return std::exp(n(rng));
}

bool is_weekend(std::chrono::sys_days day) {
  const std::chrono::weekday wd{day};
  return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

}  // namespace

void write_synthetic_meter(std::ostream& out, const SyntheticMeterConfig& cfg) {
  using namespace std::chrono;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> outage_length(60, 6 * 60);

  out << "Date;Time;Global_active_power;Global_reactive_power;Voltage;Global_intensity;"
         "Sub_metering_1;Sub_metering_2;Sub_metering_3\n";

  const sys_days first{cfg.start};
  const int total_minutes = cfg.days * 24 * 60;
  int minute_of_day = cfg.start_minute;
  sys_days day = first;
  double day_factor = unit_lognormal(rng, 0.2);
  double hour_factor = unit_lognormal(rng, 0.3);
  int outage_left = 0;
  char line[160];

  for (int i = 0; i < total_minutes; ++i) {
    if (minute_of_day == 24 * 60) {
      minute_of_day = 0;
      day += days{1};
      day_factor = unit_lognormal(rng, 0.2);
      if (unit(rng) < cfg.outage_rate) outage_left = outage_length(rng);
    }
    const int hour = minute_of_day / 60;
    const int minute = minute_of_day % 60;
    if (minute == 0 || i == 0) hour_factor = unit_lognormal(rng, 0.3);

    const year_month_day ymd{day};
    const int written = std::snprintf(line, sizeof(line), "%u/%u/%d;%02d:%02d:00;",
                                      static_cast<unsigned>(ymd.day()),
                                      static_cast<unsigned>(ymd.month()),
                                      static_cast<int>(ymd.year()), hour, minute);
    out.write(line, written);

    const bool missing = outage_left > 0 || unit(rng) < cfg.missing_rate;
    if (outage_left > 0) --outage_left;
    if (missing) {
      out << "?;?;?;?;?;?;\n";
    } else {
      const double weekend = is_weekend(day) && hour >= 9 && hour <= 17 ? 1.3 : 1.0;
      const double kw = std::max(
          0.076, cfg.profile[static_cast<std::size_t>(hour)] * weekend * day_factor *
                     hour_factor * unit_lognormal(rng, 0.45));
      const double voltage = 240.0 + 3.0 * (unit(rng) - 0.5) - 0.8 * kw;
      const double amps = kw * 1000.0 / voltage;
      const double reactive = 0.12 * kw * unit(rng);
      const int kitchen = unit(rng) < 0.05 ? static_cast<int>(unit(rng) * 38.0) : 0;
      const int laundry = unit(rng) < 0.1 ? static_cast<int>(unit(rng) * 30.0) : 1;
      const int heater = static_cast<int>(std::min(kw * 8.0, 20.0) * unit(rng));
      const int n = std::snprintf(line, sizeof(line), "%.3f;%.3f;%.2f;%.1f;%d.000;%d.000;%d\n",
                                  kw, reactive, voltage, amps, kitchen, laundry, heater);
      out.write(line, n);
    }
    ++minute_of_day;
  }
}

}  // namespace tlou::cli
