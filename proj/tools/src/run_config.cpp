#include "tlou_cli/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tlou/serialization.hpp"

namespace tlou::cli {

namespace {

using nlohmann::json;

// Rejects unknown keys in one object; '_'-prefixed keys are comments.
void check_keys(const json& obj, std::string_view where, std::set<std::string> allowed) {
  if (!obj.is_object()) throw UsageError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!key.empty() && key.front() == '_') continue;
    if (!allowed.contains(key)) {
      throw UsageError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& target, std::string_view where) {
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string(where) + "." + key + ": wrong type");
  }
}

void read_interval(const json& obj, const char* key, Interval& iv, std::string_view where) {
  if (!obj.contains(key)) return;
  const std::string path = std::string(where) + "." + key;
  check_keys(obj.at(key), path, {"min", "max"});
  read(obj.at(key), "min", iv.min, path);
  read(obj.at(key), "max", iv.max, path);
}

json interval_json(const Interval& iv) { return {{"min", iv.min}, {"max", iv.max}}; }

}  // namespace

std::filesystem::path RunConfig::distributions_path() const {
  return distributions.empty() ? out_dir / "distributions.json" : distributions;
}

std::vector<int> RunConfig::selected_hours() const {
  if (!hours.empty()) return hours;
  std::vector<int> all(24);
  for (int h = 0; h < 24; ++h) all[static_cast<std::size_t>(h)] = h;
  return all;
}

void RunConfig::validate() const {
  try {
    rules.validate();
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (rules.price_floor > solver.baseline) {
    throw UsageError("contract_rules.price_floor exceeds solver.baseline");
  }
  if (scenarios == 0) throw UsageError("discretization.scenarios must be >= 1");
  if (!(ingest.min_coverage >= 0.0 && ingest.min_coverage <= 1.0)) {
    throw UsageError("discretization.min_coverage must lie in [0, 1]");
  }
  for (int h : hours) {
    if (h < 0 || h > 23) throw UsageError("hour " + std::to_string(h) + " outside 0..23");
  }
  if (sweep.count == 0 || !(sweep.first >= 0.0) || !(sweep.last >= sweep.first) ||
      (sweep.count > 1 && !(sweep.last > sweep.first))) {
    throw UsageError("sweep: need 0 <= first < last and count >= 1");
  }
  if (!(curves.step > 0.0) || !(curves.capacity_max > 0.0) || !(curves.consumption_max > 0.0)) {
    throw UsageError("curves: step and maxima must be positive");
  }
  if (!(verify.resolution > 0.0)) throw UsageError("verify.resolution must be positive");
}

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.input = "data/household_power_consumption.txt";
  cfg.rules.booking_fee = {0.01, 1.0};
  cfg.rules.higher_step_increase = {0.01, 1.0};
  cfg.solver.grid.lower = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
  cfg.solver.grid.higher = {0.0, 0.25, 1.0, 2.0, 3.0};
  return cfg;
}

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  check_keys(doc, "config",
             {"paths", "discretization", "grids", "contract_rules", "solver", "sweep", "curves",
              "verify", "hours"});
  RunConfig cfg = default_run_config();

  if (doc.contains("paths")) {
    const json& p = doc["paths"];
    check_keys(p, "paths", {"input", "distributions", "out_dir"});
    auto read_path = [&](const char* key, std::filesystem::path& target) {
      std::string s = target.string();
      read(p, key, s, "paths");
      target = s;
    };
    read_path("input", cfg.input);
    read_path("distributions", cfg.distributions);
    read_path("out_dir", cfg.out_dir);
  }
  if (doc.contains("discretization")) {
    const json& d = doc["discretization"];
    check_keys(d, "discretization", {"scenarios", "min_coverage", "cadence_probe_rows"});
    read(d, "scenarios", cfg.scenarios, "discretization");
    read(d, "min_coverage", cfg.ingest.min_coverage, "discretization");
    read(d, "cadence_probe_rows", cfg.ingest.cadence_probe_rows, "discretization");
  }
  if (doc.contains("grids")) {
    const json& g = doc["grids"];
    check_keys(g, "grids", {"lower", "higher"});
    read(g, "lower", cfg.solver.grid.lower, "grids");
    read(g, "higher", cfg.solver.grid.higher, "grids");
  }
  if (doc.contains("contract_rules")) {
    const json& r = doc["contract_rules"];
    check_keys(r, "contract_rules",
               {"booking_fee", "higher_step_increase", "lower_step_decrease", "price_floor"});
    read_interval(r, "booking_fee", cfg.rules.booking_fee, "contract_rules");
    read_interval(r, "higher_step_increase", cfg.rules.higher_step_increase, "contract_rules");
    read_interval(r, "lower_step_decrease", cfg.rules.lower_step_decrease, "contract_rules");
    read(r, "price_floor", cfg.rules.price_floor, "contract_rules");
  }
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    check_keys(s, "solver",
               {"baseline", "delta", "lexicographic_slack", "lazy_mode", "lazy_iteration_cap"});
    read(s, "baseline", cfg.solver.baseline, "solver");
    read(s, "delta", cfg.solver.delta, "solver");
    read(s, "lexicographic_slack", cfg.solver.lexicographic_slack, "solver");
    read(s, "lazy_mode", cfg.solver.lazy_mode, "solver");
    read(s, "lazy_iteration_cap", cfg.solver.lazy_iteration_cap, "solver");
  }
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    check_keys(s, "sweep", {"first", "last", "count"});
    read(s, "first", cfg.sweep.first, "sweep");
    read(s, "last", cfg.sweep.last, "sweep");
    read(s, "count", cfg.sweep.count, "sweep");
  }
  if (doc.contains("curves")) {
    const json& c = doc["curves"];
    check_keys(c, "curves", {"capacity_max", "consumption_max", "step", "relative_capacities"});
    read(c, "capacity_max", cfg.curves.capacity_max, "curves");
    read(c, "consumption_max", cfg.curves.consumption_max, "curves");
    read(c, "step", cfg.curves.step, "curves");
    read(c, "relative_capacities", cfg.curves.relative_capacities, "curves");
  }
  if (doc.contains("verify")) {
    const json& v = doc["verify"];
    check_keys(v, "verify", {"seed", "instances", "resolution"});
    read(v, "seed", cfg.verify.seed, "verify");
    read(v, "instances", cfg.verify.instances, "verify");
    read(v, "resolution", cfg.verify.resolution, "verify");
  }
  read(doc, "hours", cfg.hours, "config");
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text_file(path));
}

std::string run_config_to_json(const RunConfig& cfg) {
  json doc{
      {"paths",
       {{"input", cfg.input.string()},
        {"distributions", cfg.distributions.string()},
        {"out_dir", cfg.out_dir.string()}}},
      {"discretization",
       {{"scenarios", cfg.scenarios},
        {"min_coverage", cfg.ingest.min_coverage},
        {"cadence_probe_rows", cfg.ingest.cadence_probe_rows}}},
      {"grids", {{"lower", cfg.solver.grid.lower}, {"higher", cfg.solver.grid.higher}}},
      {"contract_rules",
       {{"booking_fee", interval_json(cfg.rules.booking_fee)},
        {"higher_step_increase", interval_json(cfg.rules.higher_step_increase)},
        {"lower_step_decrease", interval_json(cfg.rules.lower_step_decrease)},
        {"price_floor", cfg.rules.price_floor}}},
      {"solver",
       {{"baseline", cfg.solver.baseline},
        {"delta", cfg.solver.delta},
        {"lexicographic_slack", cfg.solver.lexicographic_slack},
        {"lazy_mode", cfg.solver.lazy_mode},
        {"lazy_iteration_cap", cfg.solver.lazy_iteration_cap}}},
      {"sweep", {{"first", cfg.sweep.first}, {"last", cfg.sweep.last}, {"count", cfg.sweep.count}}},
      {"curves",
       {{"capacity_max", cfg.curves.capacity_max},
        {"consumption_max", cfg.curves.consumption_max},
        {"step", cfg.curves.step},
        {"relative_capacities", cfg.curves.relative_capacities}}},
      {"verify",
       {{"seed", cfg.verify.seed},
        {"instances", cfg.verify.instances},
        {"resolution", cfg.verify.resolution}}},
      {"hours", cfg.hours}};
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw UsageError("write failed: " + path.string());
}

}  // namespace tlou::cli
