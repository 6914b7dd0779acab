#include "tlou/serialization.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "json.hpp"

namespace tlou {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

json step_to_json(const StepFunction& f) {
  return json{{"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())},
              {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

StepFunction step_from_json(const json& j) {
  return StepFunction(get_field<std::vector<double>>(j, "breakpoints"),
                      get_field<std::vector<double>>(j, "values"));
}

json tariff_json(const TariffSetting& s) {
  return json{{"booking_fee", s.booking_fee},
              {"baseline", s.baseline},
              {"lower", step_to_json(s.lower)},
              {"higher", step_to_json(s.higher)}};
}

TariffSetting tariff_from(const json& j) {
  try {
    return TariffSetting(get_field<double>(j, "booking_fee"), step_from_json(j.at("lower")),
                         step_from_json(j.at("higher")), get_field<double>(j, "baseline"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("tariff: ") + e.what());
  } catch (const json::exception& e) {
    throw FormatError(std::string("tariff: ") + e.what());
  }
}

json option_json(const PricingOption& o) {
  return json{{"time_frame", o.time_frame},
              {"target_capacity", o.target_capacity},
              {"setting", tariff_json(o.setting)},
              {"expected_revenue", o.expected_revenue},
              {"guarantee", o.guarantee},
              {"margin", o.margin}};
}

PricingOption option_from(const json& j) {
  if (!j.contains("setting")) throw FormatError("missing field 'setting'");
  return PricingOption{get_field<int>(j, "time_frame"), get_field<double>(j, "target_capacity"),
                       tariff_from(j.at("setting")), get_field<double>(j, "expected_revenue"),
                       get_field<double>(j, "guarantee"), get_field<double>(j, "margin")};
}

double parse_double(std::string_view s) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError("not a number: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string tariff_to_json(const TariffSetting& setting) {
  return tariff_json(setting).dump(2);
}

TariffSetting tariff_from_json(std::string_view text) { return tariff_from(parse_json(text)); }

std::string distributions_to_json(const HourlyDistributions& dists) {
  json arr = json::array();
  for (int h = 0; h < 24; ++h) {
    const auto& d = dists[static_cast<std::size_t>(h)];
    json entry{{"hour", h}};
    if (d) {
      entry["loads"] = std::vector<double>(d->loads().begin(), d->loads().end());
      entry["probs"] = std::vector<double>(d->probs().begin(), d->probs().end());
      entry["n_samples"] = d->sample_count();
    } else {
      entry["loads"] = json::array();
      entry["probs"] = json::array();
      entry["n_samples"] = 0;
    }
    arr.push_back(std::move(entry));
  }
  return arr.dump(2);
}

HourlyDistributions distributions_from_json(std::string_view text) {
  const json arr = parse_json(text);
  if (!arr.is_array() || arr.size() != 24) {
    throw FormatError("distributions: expected an array of 24 hourly entries");
  }
  HourlyDistributions out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& entry = arr[i];
    const int hour = get_field<int>(entry, "hour");
    if (hour != static_cast<int>(i)) {
      throw FormatError("distributions: entry " + std::to_string(i) + " has hour " +
                        std::to_string(hour));
    }
    auto loads = get_field<std::vector<double>>(entry, "loads");
    auto probs = get_field<std::vector<double>>(entry, "probs");
    const auto n = get_field<std::size_t>(entry, "n_samples");
    if (loads.empty()) continue;
    try {
      out[static_cast<std::size_t>(hour)] =
          DiscreteDistribution(std::move(loads), std::move(probs), hour, n);
    } catch (const std::invalid_argument& e) {
      throw FormatError("distributions: hour " + std::to_string(hour) + ": " + e.what());
    }
  }
  return out;
}

std::string option_to_json(const PricingOption& option) { return option_json(option).dump(2); }

PricingOption option_from_json(std::string_view text) { return option_from(parse_json(text)); }

std::string menu_to_json(const Menu& menu) {
  json options = json::array();
  for (const auto& o : menu.options) options.push_back(option_json(o));
  json doc{{"hour", menu.time_frame},
           {"options", std::move(options)},
           {"diagnostics",
            {{"candidates_total", menu.candidates_total},
             {"infeasible_count", menu.infeasible_count},
             {"solver_failures", menu.failures},
             {"has_zero_option", menu.has_zero_option}}}};
  return doc.dump(2);
}

Menu menu_from_json(std::string_view text) {
  const json doc = parse_json(text);
  Menu m;
  m.time_frame = get_field<int>(doc, "hour");
  if (!doc.contains("options") || !doc.at("options").is_array()) {
    throw FormatError("menu: missing options array");
  }
  for (const auto& o : doc.at("options")) m.options.push_back(option_from(o));
  if (!doc.contains("diagnostics")) throw FormatError("menu: missing diagnostics");
  const json& diag = doc.at("diagnostics");
  m.candidates_total = get_field<std::size_t>(diag, "candidates_total");
  m.infeasible_count = get_field<std::size_t>(diag, "infeasible_count");
  m.failures = get_field<std::vector<std::string>>(diag, "solver_failures");
  m.has_zero_option = get_field<bool>(diag, "has_zero_option");
  return m;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FormatError("csv: missing column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos
                                                                            : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size()) {
        throw FormatError("csv: row has " + std::to_string(cells.size()) + " cells, header has " +
                          std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw FormatError("csv: empty input");
  return table;
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream out;
  auto write_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  write_row(table.header);
  for (const auto& r : table.rows) write_row(r);
  return out.str();
}

std::string delta_sweep_to_csv(std::span<const DeltaSweep> sweeps) {
  CsvTable table{{"hour", "delta", "nonzero_option_count"}, {}};
  for (const auto& s : sweeps) {
    for (const auto& p : s.points) {
      table.rows.push_back({std::to_string(s.time_frame), format_double(p.delta),
                            std::to_string(p.nonzero_option_count)});
    }
  }
  return to_csv(table);
}

std::vector<DeltaSweep> delta_sweep_from_csv(std::string_view text) {
  const CsvTable table = parse_csv(text);
  const std::size_t hour_col = table.column("hour");
  const std::size_t delta_col = table.column("delta");
  const std::size_t count_col = table.column("nonzero_option_count");
  std::map<int, DeltaSweep> by_hour;
  std::vector<int> order;
  for (const auto& row : table.rows) {
    const int hour = static_cast<int>(parse_double(row[hour_col]));
    const double delta = parse_double(row[delta_col]);
    const auto count = static_cast<std::size_t>(parse_double(row[count_col]));
    auto [it, inserted] = by_hour.try_emplace(hour);
    if (inserted) {
      it->second.time_frame = hour;
      order.push_back(hour);
    }
    it->second.points.push_back({delta, count});
    if (count == 0 && !it->second.delta_max) it->second.delta_max = delta;
  }
  std::vector<DeltaSweep> out;
  for (int h : order) out.push_back(std::move(by_hour[h]));
  return out;
}

}  // namespace tlou
