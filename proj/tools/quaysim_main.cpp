// quaysim command-line interface: simulate, validate, compare, plot,
// calibrate. Exit codes: 0 success, 1 validation violations, 2 usage or
// input errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quaysim/quaysim.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw quaysim::IoFailure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw quaysim::IoFailure("cannot write '" + path + "'");
  out << content;
  if (!out.flush()) throw quaysim::IoFailure("short write on '" + path + "'");
}

struct ParamOverrides {
  std::optional<std::string> crane_rate, alpha, truck_cycle, yard_service;
  std::optional<long long> max_cranes, threshold;

  void apply(quaysim::ServiceParams& p) const {
    using quaysim::Rational;
    if (crane_rate) p.crane_rate_moves_per_min = Rational::parse(*crane_rate);
    if (alpha) p.interference_alpha = Rational::parse(*alpha);
    if (max_cranes) p.max_cranes_per_vessel = static_cast<int>(*max_cranes);
    if (threshold) p.moves_per_crane_threshold = *threshold;
    if (truck_cycle) p.truck_cycle_min = Rational::parse(*truck_cycle);
    if (yard_service) p.yard_crane_service_min = Rational::parse(*yard_service);
  }
};

void add_param_flags(CLI::App* cmd, ParamOverrides& o) {
  cmd->add_option("--crane_rate_moves_per_min", o.crane_rate);
  cmd->add_option("--interference_alpha", o.alpha);
  cmd->add_option("--max_cranes_per_vessel", o.max_cranes);
  cmd->add_option("--moves_per_crane_threshold", o.threshold);
  cmd->add_option("--truck_cycle_min", o.truck_cycle);
  cmd->add_option("--yard_crane_service_min", o.yard_service);
}

quaysim::ScenarioConfig resolve_config(const std::optional<std::string>& config_path, bool strict,
                                       const std::optional<std::string>& mode,
                                       const std::optional<long long>& seed,
                                       const ParamOverrides& overrides) {
  quaysim::ScenarioConfig cfg;
  std::vector<std::string> warnings;
  if (config_path) cfg = quaysim::load_config(*config_path, strict, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  if (mode) cfg.mode = quaysim::parse_mode(*mode);
  if (seed) cfg.seed = static_cast<std::uint64_t>(*seed);
  overrides.apply(cfg.service);
  return cfg;
}

int run_simulate(const std::string& ships_path, const std::optional<std::string>& config_path,
                 bool strict, const std::optional<std::string>& mode,
                 const std::optional<long long>& seed, const ParamOverrides& overrides,
                 const std::optional<std::string>& trace_path, const std::string& out_path) {
  auto cfg = resolve_config(config_path, strict, mode, seed, overrides);
  auto vessels = quaysim::parse_log_sheet(read_file(ships_path), cfg.epoch);
  auto result = quaysim::simulate(vessels, cfg);

  if (trace_path) {
    std::ofstream trace(*trace_path, std::ios::binary);
    if (!trace) throw quaysim::IoFailure("cannot write '" + *trace_path + "'");
    quaysim::write_trace(result.trace, trace);
  }

  auto report = quaysim::build_report(result, vessels, cfg);
  std::ostringstream csv;
  quaysim::write_kpi_csv(report, csv);
  write_file(out_path, csv.str());

  std::cout << "mode: " << quaysim::to_string(cfg.mode) << '\n'
            << "vessels: " << report.rows.size() << '\n'
            << "total service: " << report.total_service_min << " min\n"
            << "total moves: " << report.total_moves << ", total TEU: " << report.total_teu << '\n'
            << "utilization: QC " << report.utilization_quay_cranes.to_double()
            << ", YC " << report.utilization_yard_cranes.to_double() << ", trucks "
            << report.utilization_trucks.to_double() << '\n';
  return 0;
}

int run_validate(const std::string& ships_path, long long quay_length,
                 const std::string& epoch_text) {
  quaysim::Timestamp epoch = quaysim::Timestamp::parse(epoch_text);
  auto vessels = quaysim::parse_log_sheet(read_file(ships_path), epoch);
  quaysim::QuayLayout quay{quay_length};
  auto plan = quaysim::build_recorded_plan(vessels, quay);
  auto violations = quaysim::validate_plan(plan, quay);

  std::cout << "vessel_a,vessel_b,overlap_start_min,overlap_end_min\n";
  for (const auto& v : violations) {
    std::cout << v.vessel_a << ',' << v.vessel_b << ',' << v.overlap_start << ',';
    if (v.overlap_end) std::cout << *v.overlap_end;
    std::cout << '\n';
  }
  std::cerr << (violations.empty() ? "plan feasible\n"
                                   : std::to_string(violations.size()) + " violation(s)\n");
  return violations.empty() ? 0 : 1;
}

int run_compare(const std::string& baseline_path, const std::string& candidate_path, bool csv) {
  auto baseline = quaysim::load_kpi_csv(baseline_path);
  auto candidate = quaysim::load_kpi_csv(candidate_path);
  auto cmp = quaysim::compare(baseline, candidate);
  std::cout << "baseline total: " << cmp.baseline_total_min << " min\n"
            << "candidate total: " << cmp.candidate_total_min << " min\n"
            << "reduction: " << cmp.percent() << '\n';
  if (csv) {
    std::cout << "vessel_id,baseline_min,candidate_min,delta_min\n";
    for (const auto& d : cmp.deltas)
      std::cout << d.vessel_id << ',' << d.baseline_min << ',' << d.candidate_min << ','
                << d.delta_min << '\n';
  }
  return 0;
}

int run_plot(const std::string& baseline_path, const std::string& candidate_path,
             const std::string& out_path) {
  auto baseline = quaysim::load_kpi_csv(baseline_path);
  auto candidate = quaysim::load_kpi_csv(candidate_path);
  std::string svg_path = out_path;
  if (svg_path.size() > 4 && svg_path.substr(svg_path.size() - 4) == ".csv")
    svg_path = svg_path.substr(0, svg_path.size() - 4) + ".svg";
  else
    svg_path += ".svg";
  quaysim::emit_plot(baseline, candidate, out_path, svg_path);
  std::cout << "wrote " << out_path << " and " << svg_path << '\n';
  return 0;
}

int run_calibrate(const std::string& ships_path, const std::string& targets_path,
                  const std::string& grid_path, const std::optional<std::string>& config_path,
                  bool strict, const std::optional<std::string>& mode,
                  const std::string& out_path) {
  auto cfg = resolve_config(config_path, strict, mode, std::nullopt, {});
  auto vessels = quaysim::parse_log_sheet(read_file(ships_path), cfg.epoch);
  auto targets = quaysim::load_targets(targets_path);
  auto grid = quaysim::load_grid(grid_path, cfg.service);
  auto result = quaysim::calibrate(vessels, targets, grid, cfg);

  std::ostringstream out;
  out << "# calibrated against " << targets_path << " (mode " << quaysim::to_string(cfg.mode)
      << ", MAPE " << result.mape.str() << " ~ " << result.mape.to_double() * 100.0 << "%)\n";
  out << "crane_rate_moves_per_min = " << result.best.crane_rate_moves_per_min.str() << '\n';
  out << "interference_alpha = " << result.best.interference_alpha.str() << '\n';
  out << "max_cranes_per_vessel = " << result.best.max_cranes_per_vessel << '\n';
  out << "moves_per_crane_threshold = " << result.best.moves_per_crane_threshold << '\n';
  out << "truck_cycle_min = " << result.best.truck_cycle_min.str() << '\n';
  out << "yard_crane_service_min = " << result.best.yard_crane_service_min.str() << '\n';
  write_file(out_path, out.str());

  std::cout << "points: " << result.points_evaluated;
  if (result.points_skipped > 0) std::cout << " (" << result.points_skipped << " incomplete)";
  std::cout << "\nbest MAPE: " << result.mape.str() << " ~ " << result.mape.to_double() * 100.0
            << "%\n"
            << "crane_rate_moves_per_min = " << result.best.crane_rate_moves_per_min.str() << '\n'
            << "interference_alpha = " << result.best.interference_alpha.str() << '\n'
            << "max_cranes_per_vessel = " << result.best.max_cranes_per_vessel << '\n'
            << "moves_per_crane_threshold = " << result.best.moves_per_crane_threshold << '\n'
            << "truck_cycle_min = " << result.best.truck_cycle_min.str() << '\n'
            << "yard_crane_service_min = " << result.best.yard_crane_service_min.str() << '\n'
            << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Container terminal quayside simulator"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run the simulator and write a KPI report");
  std::string sim_ships, sim_out;
  std::optional<std::string> sim_config, sim_mode, sim_trace;
  std::optional<long long> sim_seed;
  bool sim_strict = false;
  ParamOverrides sim_params;
  sim->add_option("--ships", sim_ships, "Ship log sheet CSV")->required();
  sim->add_option("--config", sim_config, "Scenario config file");
  sim->add_option("--mode", sim_mode, "recorded | aggregate | detailed");
  sim->add_option("--seed", sim_seed, "Seed for stochastic service times");
  sim->add_option("--trace", sim_trace, "Write the event trace here");
  sim->add_option("--out", sim_out, "KPI report CSV")->required();
  sim->add_flag("--strict", sim_strict, "Reject unknown config keys");
  add_param_flags(sim, sim_params);

  // validate
  auto* val = app.add_subcommand("validate", "Check the recorded berth plan for conflicts");
  std::string val_ships;
  long long val_quay = 1040;
  std::string val_epoch = "2014-03-03 00:00";
  val->add_option("--ships", val_ships, "Ship log sheet CSV")->required();
  val->add_option("--quay-length", val_quay, "Quay length in meters");
  val->add_option("--epoch", val_epoch, "Scenario epoch timestamp");

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare two KPI reports");
  std::string cmp_baseline, cmp_candidate;
  bool cmp_csv = false;
  cmp->add_option("--baseline", cmp_baseline, "Baseline KPI CSV")->required();
  cmp->add_option("--candidate", cmp_candidate, "Candidate KPI CSV")->required();
  cmp->add_flag("--csv", cmp_csv, "Also print per-vessel deltas as CSV");

  // plot
  auto* plt = app.add_subcommand("plot", "Emit the service-time comparison chart");
  std::string plt_baseline, plt_candidate, plt_out;
  plt->add_option("--baseline", plt_baseline, "Baseline KPI CSV")->required();
  plt->add_option("--candidate", plt_candidate, "Candidate KPI CSV")->required();
  plt->add_option("--out", plt_out, "Output CSV path; the SVG lands next to it")->required();

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "Grid-search service parameters against targets");
  std::string cal_ships, cal_targets, cal_grid, cal_out;
  std::optional<std::string> cal_config, cal_mode;
  bool cal_strict = false;
  cal->add_option("--ships", cal_ships, "Ship log sheet CSV")->required();
  cal->add_option("--targets", cal_targets, "Targets CSV (vessel_id,target_min)")->required();
  cal->add_option("--grid", cal_grid, "Parameter grid file")->required();
  cal->add_option("--out", cal_out, "Write the best parameters here")->required();
  cal->add_option("--config", cal_config, "Scenario config file");
  cal->add_option("--mode", cal_mode, "recorded | aggregate | detailed");
  cal->add_flag("--strict", cal_strict, "Reject unknown config keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed())
      return run_simulate(sim_ships, sim_config, sim_strict, sim_mode, sim_seed, sim_params,
                          sim_trace, sim_out);
    if (val->parsed()) return run_validate(val_ships, val_quay, val_epoch);
    if (cmp->parsed()) return run_compare(cmp_baseline, cmp_candidate, cmp_csv);
    if (plt->parsed()) return run_plot(plt_baseline, plt_candidate, plt_out);
    if (cal->parsed())
      return run_calibrate(cal_ships, cal_targets, cal_grid, cal_config, cal_strict, cal_mode,
                           cal_out);
  } catch (const quaysim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
