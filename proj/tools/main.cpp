// aafermi command line: echo series, backflow reports, sweeps, phase scans
// and the small-lattice many-body cross-check.

#include "aafermi/backflow.hpp"
#include "aafermi/csv.hpp"
#include "aafermi/oracle.hpp"
#include "aafermi/sweep.hpp"
#include "aafermi/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace aafermi;

namespace {

struct LatticeFlags {
  int length = 233;
  double hopping = 1.0;
  double epsilon = 0.1;
  double phi = 0.0;
  std::string beta = "golden";
  int impurity_site = 1;
  std::string boundary = "periodic";
};

struct GridFlags {
  std::optional<double> t_max;
  int samples = kDefaultSamples;
};

void add_lattice_flags(CLI::App* app, LatticeFlags& f) {
  app->add_option("-L,--length", f.length, "number of lattice sites")->capture_default_str();
  app->add_option("-J,--hopping", f.hopping, "hopping J")->capture_default_str();
  app->add_option("-e,--epsilon", f.epsilon, "impurity coupling epsilon/J")->capture_default_str();
  app->add_option("--phi", f.phi, "potential phase")->capture_default_str();
  app->add_option("--beta", f.beta, "incommensuration, a number or 'golden'")->capture_default_str();
  app->add_option("-x,--impurity-site", f.impurity_site, "impurity site label")->capture_default_str();
  app->add_option("--boundary", f.boundary, "periodic or open")
      ->check(CLI::IsMember({"periodic", "open"}))
      ->capture_default_str();
}

void add_grid_flags(CLI::App* app, GridFlags& g) {
  app->add_option("-t,--t-max", g.t_max, "time horizon (default 50/epsilon, 50/J at epsilon = 0)");
  app->add_option("-n,--samples", g.samples, "number of time samples")->capture_default_str();
}

double parse_beta(const std::string& text) { return text == "golden" ? kGoldenRatio : parse_double(text); }

LatticeConfig make_config(const LatticeFlags& f, double delta_over_j) {
  LatticeConfig c;
  c.length = f.length;
  c.hopping = f.hopping;
  c.potential_strength = delta_over_j * f.hopping;
  c.impurity_coupling = f.epsilon * f.hopping;
  c.incommensuration = parse_beta(f.beta);
  c.phase = f.phi;
  c.impurity_site = f.impurity_site;
  c.boundary = boundary_from_string(f.boundary);
  validate(c);
  return c;
}

TimeGrid make_grid(const GridFlags& g, const LatticeConfig& c) {
  return TimeGrid(g.t_max ? *g.t_max : default_t_max(c), g.samples);
}

void print_warnings(const LatticeConfig& c) {
  for (const auto& w : lattice_warnings(c)) std::cerr << "warning: " << w << '\n';
}

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw CLI::ValidationError("--delta-range", "expected start:stop:step");
  return arithmetic_range(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
}

nlohmann::json report_json(const LatticeConfig& c, const BackflowReport& r) {
  nlohmann::json j;
  j["lattice"] = lattice_config_tag(c);
  j["t_max"] = r.t_max;
  j["samples"] = r.n_samples;
  j["backflow"] = r.backflow;
  j["outflow"] = r.outflow;
  j["ratio"] = r.ratio;
  j["final_abs_chi"] = r.final_magnitude;
  j["rising_segments"] = r.segments.rising.size();
  j["falling_segments"] = r.segments.falling.size();
  return j;
}

int run_echo(const LatticeFlags& lat, const GridFlags& grid, const std::vector<double>& deltas,
             const std::string& output, unsigned threads) {
  std::vector<LatticeConfig> configs;
  for (double d : deltas) configs.push_back(make_config(lat, d));
  print_warnings(configs.front());
  const EvaluationOptions opts{threads};
  const TimeGrid g = make_grid(grid, configs.front());

  if (configs.size() == 1) {
    const auto series = decoherence_series(configs.front(), g, opts);
    if (output.empty() || output == "-") {
      write_echo_series(std::cout, series);
    } else {
      write_echo_series_file(output, series);
      std::cerr << "wrote " << output << '\n';
    }
    return 0;
  }
  if (output.empty() || output == "-") {
    std::cerr << "error: several --delta values need --output as a file prefix\n";
    return 2;
  }
  for (const auto& path : emit_echo_series(configs, g, output, opts)) std::cerr << "wrote " << path << '\n';
  return 0;
}

int run_report(const LatticeFlags& lat, const GridFlags& grid, double delta, bool refine,
               double rel_tol, bool as_json, unsigned threads) {
  const LatticeConfig c = make_config(lat, delta);
  print_warnings(c);
  const TimeGrid g = make_grid(grid, c);
  const EvaluationOptions opts{threads};
  if (!refine) {
    const auto r = backflow_report(decoherence_series(c, g, opts));
    if (as_json) {
      std::cout << report_json(c, r).dump(2) << '\n';
    } else {
      std::cout << lattice_config_tag(c) << '\n'
                << "t_max      " << format_double(r.t_max) << '\n'
                << "samples    " << r.n_samples << '\n'
                << "N-         " << format_double(r.backflow) << '\n'
                << "N+         " << format_double(r.outflow) << '\n'
                << "R          " << format_double(r.ratio) << '\n'
                << "|chi(t_max)| " << format_double(r.final_magnitude) << '\n';
    }
    return 0;
  }

  const auto res = refine_until_stable(c, g, rel_tol, opts);
  if (as_json) {
    auto j = report_json(c, res.report);
    j["converged"] = res.converged;
    j["doublings"] = res.doublings;
    j["rel_tol"] = rel_tol;
    j["ladder"] = nlohmann::json::array();
    for (std::size_t k = 0; k < res.ratios.size(); ++k) {
      j["ladder"].push_back({{"samples", res.samples[k]}, {"ratio", res.ratios[k]}});
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << lattice_config_tag(c) << '\n' << "t_max      " << format_double(g.t_max()) << '\n';
    for (std::size_t k = 0; k < res.ratios.size(); ++k) {
      std::cout << "samples " << res.samples[k] << "  R = " << format_double(res.ratios[k]) << '\n';
    }
    std::cout << "N-         " << format_double(res.report.backflow) << '\n'
              << "N+         " << format_double(res.report.outflow) << '\n'
              << "R          " << format_double(res.report.ratio) << '\n'
              << (res.converged ? "converged" : "NOT converged") << " after " << res.doublings
              << " doubling(s), rel_tol " << format_double(rel_tol) << '\n';
  }
  return res.converged ? 0 : 1;
}

int report_sweep(const std::vector<RunRecord>& records, const std::string& path) {
  const auto failed = std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return !r.ok; });
  std::cerr << records.size() << " points";
  if (!path.empty()) std::cerr << " -> " << path;
  std::cerr << '\n';
  if (failed > 0) {
    std::cerr << failed << " point(s) failed; see the status column\n";
    return 1;
  }
  return 0;
}

int run_oracle_check(const std::vector<int>& lengths, int configs, int points, double t_max,
                     std::uint64_t seed, double tolerance) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> delta(0.0, 3.0);
  std::uniform_real_distribution<double> log_eps(-3.0, 0.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  const TimeGrid grid(t_max, points);
  double worst = 0.0;
  for (int length : lengths) {
    if (length > kOracleMaxLength) {
      std::cerr << "error: oracle lengths are limited to " << kOracleMaxLength << '\n';
      return 2;
    }
    double worst_l = 0.0;
    for (int k = 0; k < configs; ++k) {
      LatticeConfig c;
      c.length = length;
      c.potential_strength = delta(engine);
      c.impurity_coupling = std::pow(10.0, log_eps(engine));
      c.phase = phase(engine);
      const auto det = decoherence_series(c, grid, {1});
      const auto ref = many_body_oracle(c, grid);
      for (std::size_t i = 0; i < det.size(); ++i) worst_l = std::max(worst_l, std::abs(det.chi[i] - ref.chi[i]));
    }
    std::cout << "L = " << length << "  configs = " << configs
              << "  max |chi_det - chi_oracle| = " << format_double(worst_l) << '\n';
    worst = std::max(worst, worst_l);
  }
  std::cout << "max deviation " << format_double(worst) << (worst <= tolerance ? "  ok" : "  FAILED")
            << " (tolerance " << format_double(tolerance) << ")\n";
  return worst <= tolerance ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Impurity dephasing in an Aubry-Andre charge-density-wave Fermi lattice"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "threads per echo series (0 = all cores)");

  // echo
  auto* echo = app.add_subcommand("echo", "write chi(t) for one or more Delta/J values");
  LatticeFlags echo_lat;
  GridFlags echo_grid;
  std::vector<double> echo_deltas{2.5};
  std::string echo_out;
  add_lattice_flags(echo, echo_lat);
  add_grid_flags(echo, echo_grid);
  echo->add_option("-d,--delta", echo_deltas, "potential strength Delta/J (repeatable or comma-separated)")
      ->delimiter(',')
      ->capture_default_str();
  echo->add_option("-o,--output", echo_out, "output file, or file prefix for several deltas ('-' = stdout)");

  // report
  auto* report = app.add_subcommand("report", "backflow, outflow and R for one configuration");
  LatticeFlags rep_lat;
  GridFlags rep_grid;
  double rep_delta = 2.5;
  bool rep_refine = true;
  double rep_tol = 0.01;
  bool rep_json = false;
  add_lattice_flags(report, rep_lat);
  add_grid_flags(report, rep_grid);
  report->add_option("-d,--delta", rep_delta, "potential strength Delta/J")->capture_default_str();
  report->add_flag("--refine,!--no-refine", rep_refine, "halve the grid spacing until R is stable")
      ->capture_default_str();
  report->add_option("--rel-tol", rep_tol, "relative tolerance of the refinement")->capture_default_str();
  report->add_flag("--json", rep_json, "print JSON");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a config file");
  std::string sweep_config;
  std::optional<std::uint64_t> sweep_seed;
  unsigned sweep_workers = 0;
  bool sweep_resume = false;
  bool sweep_progress = false;
  std::string sweep_out;
  sweep->add_option("config", sweep_config, "sweep config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--seed", sweep_seed, "override the phase draw seed");
  sweep->add_option("-w,--workers", sweep_workers, "parallel points (0 = all cores)");
  sweep->add_flag("--resume", sweep_resume, "skip points already in the output or its journal");
  sweep->add_option("-o,--output", sweep_out, "override [output] path");
  sweep->add_flag("--progress", sweep_progress, "report each finished point on stderr");

  // phase-scan
  auto* scan = app.add_subcommand("phase-scan", "R against Delta/J for random phases at one L and epsilon");
  int scan_length = 233;
  double scan_eps = 0.1;
  int scan_count = 10;
  std::uint64_t scan_seed = 42;
  std::string scan_range = "0.2:3.0:0.05";
  GridFlags scan_grid;
  unsigned scan_workers = 0;
  bool scan_resume = false;
  std::string scan_out;
  scan->add_option("-L,--length", scan_length, "number of lattice sites")->capture_default_str();
  scan->add_option("-e,--epsilon", scan_eps, "impurity coupling epsilon/J")->capture_default_str();
  scan->add_option("--count", scan_count, "number of random phases")->capture_default_str();
  scan->add_option("--seed", scan_seed, "phase draw seed")->capture_default_str();
  scan->add_option("--delta-range", scan_range, "start:stop:step of Delta/J")->capture_default_str();
  add_grid_flags(scan, scan_grid);
  scan->add_option("-w,--workers", scan_workers, "parallel points (0 = all cores)");
  scan->add_flag("--resume", scan_resume, "skip points already computed");
  scan->add_option("-o,--output", scan_out, "output CSV")->required();

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check", "compare against exact many-body propagation");
  std::vector<int> oc_lengths{5, 8};
  int oc_configs = 20;
  int oc_points = 20;
  double oc_tmax = 5.0;
  std::uint64_t oc_seed = 7;
  double oc_tol = 1e-10;
  oracle->add_option("-L,--lengths", oc_lengths, "lattice lengths (<= 14)")->delimiter(',')->capture_default_str();
  oracle->add_option("--configs", oc_configs, "random configurations per length")->capture_default_str();
  oracle->add_option("--points", oc_points, "time samples")->capture_default_str();
  oracle->add_option("--t-max", oc_tmax, "time horizon in units of 1/J")->capture_default_str();
  oracle->add_option("--seed", oc_seed, "config draw seed")->capture_default_str();
  oracle->add_option("--tolerance", oc_tol, "maximum allowed deviation")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*echo) return run_echo(echo_lat, echo_grid, echo_deltas, echo_out, threads);
    if (*report) return run_report(rep_lat, rep_grid, rep_delta, rep_refine, rep_tol, rep_json, threads);
    if (*sweep) {
      SweepSpec spec = load_sweep_spec(sweep_config);
      if (sweep_seed) {
        if (!spec.phase_draw) throw std::invalid_argument("--seed needs a [phase] count in the config");
        spec.phase_draw->seed = *sweep_seed;
      }
      if (!sweep_out.empty()) spec.output_path = sweep_out;
      if (spec.output_path.empty()) throw std::invalid_argument("no output path: set [output] path or --output");
      const auto records = run_sweep(spec, {sweep_workers, sweep_resume, !sweep_progress});
      return report_sweep(records, spec.output_path);
    }
    if (*scan) {
      SweepSpec spec;
      spec.lengths = {scan_length};
      spec.epsilon_over_j = {scan_eps};
      spec.delta_over_j = parse_range(scan_range);
      spec.phase_draw = PhaseDraw{scan_count, scan_seed};
      spec.t_max = scan_grid.t_max;
      spec.n_samples = scan_grid.samples;
      validate(spec);
      const auto records = emit_phase_scan(spec, scan_out, {scan_workers, scan_resume, true});
      return report_sweep(records, scan_out);
    }
    if (*oracle) return run_oracle_check(oc_lengths, oc_configs, oc_points, oc_tmax, oc_seed, oc_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
