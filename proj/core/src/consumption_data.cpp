#include "tlou/consumption_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

namespace tlou {

namespace {

constexpr std::array<std::string_view, 3> kRequiredColumns = {
    "Date", "Time", "Global_active_power"};
constexpr std::size_t kMaxSkippedExamples = 5;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || s.empty()) return std::nullopt;
  return value;
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view s) {
  const auto parts = split(s, '/');
  if (parts.size() != 3) return std::nullopt;
  const auto d = parse_number<unsigned>(parts[0]);
  const auto m = parse_number<unsigned>(parts[1]);
  const auto y = parse_number<int>(parts[2]);
  if (!d || !m || !y) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{*m},
                                  std::chrono::day{*d}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

// Seconds since midnight.
std::optional<int> parse_time(std::string_view s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) return std::nullopt;
  const auto h = parse_number<int>(parts[0]);
  const auto m = parse_number<int>(parts[1]);
  const auto sec = parse_number<int>(parts[2]);
  if (!h || !m || !sec) return std::nullopt;
  if (*h < 0 || *h > 23 || *m < 0 || *m > 59 || *sec < 0 || *sec > 59) return std::nullopt;
  return *h * 3600 + *m * 60 + *sec;
}

int detect_cadence(const std::vector<long long>& stamps) {
  std::map<long long, std::size_t> counts;
  for (std::size_t i = 1; i < stamps.size(); ++i) {
    const long long diff = stamps[i] - stamps[i - 1];
    if (diff > 0) ++counts[diff];
  }
  if (counts.empty()) return 60;
  // Most frequent spacing; the map order makes the smallest spacing win ties.
  auto best = std::max_element(counts.begin(), counts.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
  return static_cast<int>(std::min<long long>(best->first, 3600));
}

struct HourAccumulator {
  double sum = 0.0;
  std::size_t present = 0;
};

}  // namespace

IngestResult ingest_power_csv(std::istream& source, const IngestConfig& cfg) {
  std::string line;
  if (!std::getline(source, line)) {
    throw ParseError("meter data: missing header line");
  }
  const auto header = split(trim(line), ';');
  for (std::size_t i = 0; i < kRequiredColumns.size(); ++i) {
    const std::string_view found = i < header.size() ? trim(header[i]) : std::string_view{};
    if (found != kRequiredColumns[i]) {
      throw ParseError("meter data: header column " + std::to_string(i + 1) +
                       " should be '" + std::string(kRequiredColumns[i]) +
                       "', found '" + std::string(found) + "'");
    }
  }

  IngestResult result;
  auto& diag = result.diagnostics;
  std::map<std::pair<int, int>, HourAccumulator> hours;  // (day number, hour)
  std::vector<long long> probe;
  probe.reserve(cfg.cadence_probe_rows);

  std::size_t line_no = 1;
  auto skip = [&](const char* reason) {
    ++diag.rows_skipped;
    if (diag.skipped_examples.size() < kMaxSkippedExamples) {
      diag.skipped_examples.push_back("line " + std::to_string(line_no) + ": " + reason);
    }
  };

  while (std::getline(source, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    ++diag.rows_read;

    const auto fields = split(row, ';');
    if (fields.size() < kRequiredColumns.size()) {
      skip("too few columns");
      continue;
    }
    const auto date = parse_date(trim(fields[0]));
    if (!date) {
      skip("bad date");
      continue;
    }
    const auto seconds = parse_time(trim(fields[1]));
    if (!seconds) {
      skip("bad time");
      continue;
    }
    const std::string_view power_field = trim(fields[2]);
    std::optional<double> power;
    if (power_field != "?") {
      power = parse_number<double>(power_field);
      if (!power || !std::isfinite(*power) || *power < 0.0) {
        skip("bad active power");
        continue;
      }
    }

    const int day = std::chrono::sys_days{*date}.time_since_epoch().count();
    if (probe.size() < cfg.cadence_probe_rows) {
      probe.push_back(static_cast<long long>(day) * 86400 + *seconds);
    }
    auto& acc = hours[{day, *seconds / 3600}];
    if (power) {
      acc.sum += *power;
      ++acc.present;
    } else {
      ++diag.missing_values;
    }
  }

  diag.cadence_seconds = detect_cadence(probe);
  const double expected = std::max(1.0, std::round(3600.0 / diag.cadence_seconds));

  for (const auto& [key, acc] : hours) {
    const double coverage = std::min(1.0, static_cast<double>(acc.present) / expected);
    if (acc.present == 0 || coverage < cfg.min_coverage) {
      ++diag.hours_dropped;
      continue;
    }
    HourlySample s;
    s.date = std::chrono::year_month_day{std::chrono::sys_days{std::chrono::days{key.first}}};
    s.hour = key.second;
    s.energy = acc.sum / static_cast<double>(acc.present);
    s.coverage = coverage;
    result.samples.push_back(s);
  }
  diag.hours_kept = result.samples.size();
  return result;
}

HourlyGroups group_by_hour(std::span<const HourlySample> samples) {
  HourlyGroups groups;
  for (const auto& s : samples) {
    groups.at(static_cast<std::size_t>(s.hour)).push_back(s.energy);
  }
  return groups;
}

DiscreteDistribution discretize(std::span<const double> energies,
                                std::size_t n_scenarios, int time_frame) {
  if (energies.empty()) {
    throw std::domain_error("discretize: no energies to discretize");
  }
  if (n_scenarios < 1 || n_scenarios > energies.size()) {
    throw std::domain_error("discretize: scenario count must be in [1, sample count]");
  }
  std::vector<double> sorted(energies.begin(), energies.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  // Equal-mass cut points. A cut that lands inside a run of equal values
  // moves to the nearer end of the run (forward on ties).
  std::vector<std::size_t> cuts{0};
  for (std::size_t b = 1; b < n_scenarios; ++b) {
    const std::size_t cut = b * n / n_scenarios;
    std::size_t chosen = cut;
    if (sorted[cut] == sorted[cut - 1]) {
      const auto run_begin = static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), sorted[cut]) - sorted.begin());
      const auto run_end = static_cast<std::size_t>(
          std::upper_bound(sorted.begin(), sorted.end(), sorted[cut]) - sorted.begin());
      const bool back_ok = run_begin > cuts.back();
      const bool fwd_ok = run_end < n;
      if (back_ok && (!fwd_ok || cut - run_begin < run_end - cut)) {
        chosen = run_begin;
      } else if (fwd_ok) {
        chosen = run_end;
      } else {
        continue;
      }
    }
    if (chosen > cuts.back() && chosen < n) cuts.push_back(chosen);
  }
  cuts.push_back(n);

  std::vector<double> loads;
  std::vector<double> probs;
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    const std::size_t lo = cuts[b];
    const std::size_t hi = cuts[b + 1];
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += sorted[i];
    const auto count = static_cast<double>(hi - lo);
    loads.push_back(sum / count);
    probs.push_back(count / static_cast<double>(n));
  }
  return DiscreteDistribution(std::move(loads), std::move(probs), time_frame, n);
}

}  // namespace tlou
