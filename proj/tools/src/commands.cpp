#include "tlou_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tlou/verification.hpp"

namespace tlou::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

HourlyDistributions load_distributions(const RunConfig& cfg) {
  const auto path = cfg.distributions_path();
  try {
    return distributions_from_json(read_text_file(path));
  } catch (const FormatError& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

std::vector<double> range_grid(double step, double last, bool skip_zero) {
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor(last / step + 1e-9));
  for (std::size_t i = skip_zero ? 1 : 0; i <= n; ++i) grid.push_back(step * static_cast<double>(i));
  return grid;
}

PricingOption load_option(const CurvesRequest& request) {
  const std::string text = read_text_file(request.option_file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(request.option_file.string() + ": " + e.what());
  }
  try {
    if (!doc.contains("options")) return option_from_json(text);
    const Menu m = menu_from_json(text);
    if (m.options.empty()) throw UsageError(request.option_file.string() + ": menu is empty");
    if (!request.capacity) {
      // Largest capacity is the most informative default.
      return m.options.back();
    }
    for (const auto& o : m.options) {
      if (std::abs(o.target_capacity - *request.capacity) <= 1e-9) return o;
    }
    throw UsageError("no option with capacity " + format_double(*request.capacity) + " in " +
                     request.option_file.string());
  } catch (const FormatError& e) {
    throw UsageError(request.option_file.string() + ": " + e.what());
  }
}

}  // namespace

HourlyDistributions build_distributions(std::istream& meter, const RunConfig& cfg,
                                        IngestDiagnostics* diagnostics) {
  IngestResult ingested = ingest_power_csv(meter, cfg.ingest);
  const HourlyGroups groups = group_by_hour(ingested.samples);
  HourlyDistributions out;
  for (int h = 0; h < 24; ++h) {
    const auto& g = groups[static_cast<std::size_t>(h)];
    if (g.empty()) continue;
    out[static_cast<std::size_t>(h)] = discretize(g, std::min(cfg.scenarios, g.size()), h);
  }
  if (diagnostics) *diagnostics = std::move(ingested.diagnostics);
  return out;
}

int cmd_ingest(const RunConfig& cfg, std::ostream& log) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw UsageError("cannot open input " + cfg.input.string());
  IngestDiagnostics diag;
  HourlyDistributions dists;
  try {
    dists = build_distributions(in, cfg, &diag);
  } catch (const ParseError& e) {
    throw UsageError(cfg.input.string() + ": " + e.what());
  }
  log << "read " << diag.rows_read << " rows (" << diag.missing_values << " missing, "
      << diag.rows_skipped << " skipped), cadence " << diag.cadence_seconds << " s\n";
  for (const auto& ex : diag.skipped_examples) log << "  skipped " << ex << '\n';
  log << "hours kept " << diag.hours_kept << ", dropped " << diag.hours_dropped
      << " (coverage < " << cfg.ingest.min_coverage << ")\n";
  log << "hour  samples  scenarios  mean_kwh\n";
  std::size_t empty = 0;
  for (int h = 0; h < 24; ++h) {
    const auto& d = dists[static_cast<std::size_t>(h)];
    char line[64];
    if (d) {
      std::snprintf(line, sizeof(line), "%4d  %7zu  %9zu  %8.4f\n", h, d->sample_count(),
                    d->size(), d->mean());
    } else {
      ++empty;
      std::snprintf(line, sizeof(line), "%4d  %7d  %9d  %8s\n", h, 0, 0, "-");
    }
    log << line;
  }
  const auto path = cfg.distributions_path();
  write_text_file(path, distributions_to_json(dists));
  log << "wrote " << path.string() << '\n';
  if (empty > 0) log << "warning: " << empty << " hour(s) without usable samples\n";
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const HourlyDistributions dists = load_distributions(cfg);
  CsvTable per_hour{{"hour", "candidates_total", "options", "nonzero_options", "infeasible",
                     "solver_failures", "has_zero_option", "solve_ms"},
                    {}};
  CsvTable capacities{{"hour", "target_capacity", "expected_revenue", "guarantee", "margin",
                       "booking_fee"},
                      {}};
  CsvTable utopia{{"hour", "candidate", "capacity", "revenue_opt", "guarantee_opt",
                   "lex_revenue", "lex_guarantee", "revenue_gap", "guarantee_gap",
                   "utopia_reached"},
                  {}};
  bool failed = false;
  std::size_t utopia_misses = 0;
  log << "hour  candidates  options  nonzero  zero_opt  ms\n";
  for (int h : cfg.selected_hours()) {
    const auto& d = dists[static_cast<std::size_t>(h)];
    if (!d) {
      log << "warning: hour " << h << " has no distribution; skipped\n";
      continue;
    }
    const auto start = Clock::now();
    const Menu m = menu(*d, cfg.rules, cfg.solver);
    const double ms = ms_since(start);
    write_text_file(cfg.out_dir / ("menu_" + std::to_string(h) + ".json"), menu_to_json(m));

    per_hour.rows.push_back({std::to_string(h), std::to_string(m.candidates_total),
                             std::to_string(m.options.size()),
                             std::to_string(m.nonzero_option_count()),
                             std::to_string(m.infeasible_count), std::to_string(m.failures.size()),
                             m.has_zero_option ? "1" : "0", format_double(std::round(ms * 1e3) / 1e3)});
    for (const auto& o : m.options) {
      capacities.rows.push_back({std::to_string(h), format_double(o.target_capacity),
                                 format_double(o.expected_revenue), format_double(o.guarantee),
                                 format_double(o.margin), format_double(o.setting.booking_fee)});
    }
    const PriceModel model(*d, cfg.rules, cfg.solver);
    for (std::size_t k = 0; k < model.candidates().size(); ++k) {
      const UtopiaReport r = utopia_check(*d, k, cfg.rules, cfg.solver);
      if (!r.feasible) continue;
      if (!r.utopia_reached) ++utopia_misses;
      utopia.rows.push_back({std::to_string(h), std::to_string(k), format_double(r.capacity),
                             format_double(r.revenue_opt), format_double(r.guarantee_opt),
                             format_double(r.lex_revenue), format_double(r.lex_guarantee),
                             format_double(r.revenue_gap), format_double(r.guarantee_gap),
                             r.utopia_reached ? "1" : "0"});
    }

    char line[96];
    std::snprintf(line, sizeof(line), "%4d  %10zu  %7zu  %7zu  %8s  %.2f\n", h,
                  m.candidates_total, m.options.size(), m.nonzero_option_count(),
                  m.has_zero_option ? "yes" : "no", ms);
    log << line;
    if (m.options.empty()) log << "warning: hour " << h << " has no feasible option\n";
    for (const auto& f : m.failures) {
      log << "error: hour " << h << ", " << f << '\n';
      failed = true;
    }
  }
  write_text_file(cfg.out_dir / "options_per_hour.csv", to_csv(per_hour));
  write_text_file(cfg.out_dir / "option_capacities.csv", to_csv(capacities));
  write_text_file(cfg.out_dir / "utopia_report.csv", to_csv(utopia));
  log << "utopia point reached on " << utopia.rows.size() - utopia_misses << " of "
      << utopia.rows.size() << " feasible candidates\n";
  log << "wrote menus and summaries to " << cfg.out_dir.string() << '\n';
  return failed ? kExitFailure : kExitOk;
}

int cmd_curves(const RunConfig& cfg, const CurvesRequest& request, std::ostream& log) {
  const PricingOption option = load_option(request);
  const TariffSetting& s = option.setting;

  CsvTable prices{{"capacity", "lower", "higher"}, {}};
  for (double c : range_grid(cfg.curves.step, cfg.curves.capacity_max, false)) {
    prices.rows.push_back({format_double(c), format_double(s.lower(c)), format_double(s.higher(c))});
  }
  write_text_file(cfg.out_dir / "price_curves.csv", to_csv(prices));

  std::vector<double> caps = cfg.curves.relative_capacities;
  if (std::none_of(caps.begin(), caps.end(),
                   [&](double c) { return std::abs(c - option.target_capacity) <= 1e-12; })) {
    caps.push_back(option.target_capacity);
  }
  CsvTable relative{{"capacity", "consumption", "relative_cost"}, {}};
  const auto consumption = range_grid(cfg.curves.step, cfg.curves.consumption_max, true);
  for (double c : caps) {
    for (double x : consumption) {
      relative.rows.push_back(
          {format_double(c), format_double(x), format_double(relative_cost(s, c, x))});
    }
  }
  write_text_file(cfg.out_dir / "relative_cost.csv", to_csv(relative));
  log << "wrote price_curves.csv and relative_cost.csv for hour " << option.time_frame
      << ", capacity " << format_double(option.target_capacity) << '\n';

  const auto dist_path = cfg.distributions_path();
  if (!std::filesystem::exists(dist_path)) {
    log << "note: " << dist_path.string() << " not found; expected_cost.csv skipped\n";
    return kExitOk;
  }
  const HourlyDistributions dists = load_distributions(cfg);
  const auto& d = dists[static_cast<std::size_t>(option.time_frame)];
  if (!d) {
    log << "note: no distribution for hour " << option.time_frame
        << "; expected_cost.csv skipped\n";
    return kExitOk;
  }
  CsvTable expected{{"capacity", "expected_cost"}, {}};
  for (double c : range_grid(cfg.curves.step, cfg.curves.capacity_max, false)) {
    expected.rows.push_back({format_double(c), format_double(expected_cost(s, c, *d))});
  }
  write_text_file(cfg.out_dir / "expected_cost.csv", to_csv(expected));
  log << "wrote expected_cost.csv\n";
  return kExitOk;
}

int cmd_sweep_delta(const RunConfig& cfg, std::ostream& log) {
  const HourlyDistributions dists = load_distributions(cfg);
  const auto grid = linear_grid(cfg.sweep.first, cfg.sweep.last, cfg.sweep.count);
  std::vector<DeltaSweep> sweeps;
  CsvTable maxima{{"hour", "delta_max"}, {}};
  const auto start = Clock::now();
  for (int h : cfg.selected_hours()) {
    const auto& d = dists[static_cast<std::size_t>(h)];
    if (!d) {
      log << "warning: hour " << h << " has no distribution; skipped\n";
      continue;
    }
    sweeps.push_back(delta_max(*d, cfg.rules, cfg.solver, grid));
    const auto& s = sweeps.back();
    maxima.rows.push_back({std::to_string(h), s.delta_max ? format_double(*s.delta_max) : ""});
    log << "hour " << h << ": delta_max "
        << (s.delta_max ? format_double(*s.delta_max) : std::string("not reached")) << '\n';
  }
  write_text_file(cfg.out_dir / "delta_sweep.csv", delta_sweep_to_csv(sweeps));
  write_text_file(cfg.out_dir / "delta_max.csv", to_csv(maxima));
  log << "sweep of " << grid.size() << " delta values took " << ms_since(start) / 1e3 << " s\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, bool corrupt_continuity, std::ostream& log) {
  OracleCheckOptions opts;
  opts.seed = cfg.verify.seed;
  opts.instances = cfg.verify.instances;
  opts.resolution = cfg.verify.resolution;
  opts.corrupt_right_continuity = corrupt_continuity;
  const OracleReport report = run_oracle_check(opts);
  log << report.instances << " instances, " << report.mismatches.size() << " mismatches, "
      << report.seconds << " s\n";
  for (const auto& m : report.mismatches) {
    log << "mismatch on instance " << m.instance << ": candidate argmin "
        << format_double(m.candidate_best.capacity) << " (cost "
        << format_double(m.candidate_best.expected_cost) << "), grid argmin "
        << format_double(m.brute_best.capacity) << " (cost "
        << format_double(m.brute_best.expected_cost) << ")"
        << (m.brute_in_candidate_set ? "" : ", grid argmin outside candidate set") << '\n';
    log << "  loads";
    for (double x : m.loads) log << ' ' << format_double(x);
    log << "\n  probs";
    for (double p : m.probs) log << ' ' << format_double(p);
    log << "\n  setting " << m.setting_json << '\n';
  }
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_synth_data(const std::filesystem::path& out, const SyntheticMeterConfig& meter,
                   std::ostream& log) {
  std::ostringstream text;
  write_synthetic_meter(text, meter);
  write_text_file(out, text.str());
  log << "wrote " << meter.days << " days of synthetic readings to " << out.string() << '\n';
  return kExitOk;
}

}  // namespace tlou::cli
