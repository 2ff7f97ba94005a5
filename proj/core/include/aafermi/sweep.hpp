#pragma once

// Parameter sweeps over (L, Delta/J, epsilon/J, phi) with deterministic,
// resumable CSV output.

#include "aafermi/backflow.hpp"
#include "aafermi/dephasing.hpp"
#include "aafermi/lattice.hpp"
#include "aafermi/csv.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aafermi {

/// n values uniform on [0, 2pi) from mt19937_64(seed). The draw uses the top
/// 53 bits of each output, so the sequence is identical on every platform.
std::vector<double> draw_phases(int count, std::uint64_t seed);

struct PhaseDraw {
  int count = 1;
  std::uint64_t seed = 0;
};

struct SweepSpec {
  // Fixed for the whole sweep.
  double hopping = 1.0;
  double incommensuration = kGoldenRatio;
  int impurity_site = 1;
  Boundary boundary = Boundary::periodic;

  std::vector<int> lengths;
  std::vector<double> delta_over_j;
  std::vector<double> epsilon_over_j;
  std::vector<double> phases;        // explicit list, or
  std::optional<PhaseDraw> phase_draw;  // seeded uniform draws

  /// Unset: coupling-scaled default_t_max for every point.
  std::optional<double> t_max;
  int n_samples = kDefaultSamples;

  bool refine = false;
  double rel_tol = 0.01;

  std::string output_path;

  /// Explicit phases, or the seeded draw.
  std::vector<double> resolved_phases() const;
  std::size_t point_count() const;
};

/// Throws std::invalid_argument for empty axes, missing seed, invalid
/// lattice parameters and the like.
void validate(const SweepSpec& spec);

/// Sections [lattice] [delta] [epsilon] [phase] [grid] [report] [output].
/// Axis sections accept `values = a, b, c` or `range = start:stop:step`.
SweepSpec sweep_spec_from_ini(const IniDocument& doc);
SweepSpec load_sweep_spec(const std::string& path);

/// Inclusive arithmetic range, values snapped to 12 decimals.
std::vector<double> arithmetic_range(double start, double stop, double step);

struct RunRecord {
  int length = 0;
  double hopping = 1.0;
  double delta_over_j = 0.0;
  double epsilon_over_j = 0.0;
  double incommensuration = kGoldenRatio;
  double phase = 0.0;
  int impurity_site = 1;
  Boundary boundary = Boundary::periodic;
  double t_max = kDefaultHorizon;
  int n_samples = kDefaultSamples;

  double backflow = 0.0;
  double outflow = 0.0;
  double ratio = 0.0;
  double final_magnitude = 1.0;
  std::optional<bool> converged;  // set when the grid ladder was run
  bool ok = true;
  std::string message;
  double runtime_seconds = 0.0;  // journal only; excluded from the canonical CSV

  LatticeConfig lattice() const;
  /// Parameter columns joined; identifies a tuple across runs.
  std::string key() const;
};

/// Columns of the canonical CSV, in order.
std::string run_record_header();
std::string run_record_row(const RunRecord& r);
RunRecord parse_run_record(const std::string& row);

/// Evaluates a single tuple; failures become an error record.
RunRecord evaluate_point(const RunRecord& params, bool refine, double rel_tol,
                         const EvaluationOptions& options = {});

struct SweepOptions {
  unsigned workers = 0;  // 0 = hardware concurrency
  bool resume = false;
  bool quiet = true;
};

/// Runs the Cartesian product and writes spec.output_path (if non-empty).
/// Completed tuples are appended to `<output>.partial` as they finish; the
/// final file is sorted by (L, Delta/J, epsilon/J, phi).
std::vector<RunRecord> run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

/// Canonical CSV for a finished sweep.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<RunRecord>& records);

// Output-family helpers.

/// One echo file per config: `<prefix>_L<L>_delta<D>_eps<E>_phi<P>.csv`.
std::vector<std::string> emit_echo_series(const std::vector<LatticeConfig>& configs,
                                          const TimeGrid& grid, const std::string& prefix,
                                          const EvaluationOptions& options = {});
/// R against Delta/J at a single phase.
std::vector<RunRecord> emit_r_curve(SweepSpec spec, const std::string& path,
                                    const SweepOptions& options = {});
/// R against Delta/J for several phases at one (L, epsilon).
std::vector<RunRecord> emit_phase_scan(SweepSpec spec, const std::string& path,
                                       const SweepOptions& options = {});

}  // namespace aafermi
