#pragma once

// Information backflow and outflow of the optimal trace distance |chi(t)|.

#include "aafermi/dephasing.hpp"

#include <span>
#include <vector>

namespace aafermi {

/// Differences smaller than this (absolute) count as plateaus.
inline constexpr double kPlateauThreshold = 1e-15;
/// Below this outflow the ratio is reported as 0.
inline constexpr double kOutflowFloor = 1e-300;

/// Closed index interval [first, last] of the sample sequence.
struct IndexInterval {
  std::size_t first = 0;
  std::size_t last = 0;

  friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

struct MonotoneSegments {
  std::vector<IndexInterval> rising;
  std::vector<IndexInterval> falling;
};

struct BackflowReport {
  double backflow = 0.0;  // N-
  double outflow = 0.0;   // N+
  double ratio = 0.0;     // N- / N+, 0 when nothing flowed out
  MonotoneSegments segments;
  double t_max = 0.0;
  std::size_t n_samples = 0;
  double initial_magnitude = 1.0;
  double final_magnitude = 1.0;
};

/// Maximal strictly monotone runs of the sequence.
MonotoneSegments segment_monotone(std::span<const double> magnitude);
MonotoneSegments segment_monotone(const DecoherenceSeries& series);

/// Sums of per-sample rises and falls (plateaus excluded).
BackflowReport backflow_report(std::span<const double> magnitude);
BackflowReport backflow_report(const DecoherenceSeries& series);

struct FlowSums {
  double backflow = 0.0;
  double outflow = 0.0;
};
/// Same flows accumulated as endpoint differences over each monotone interval.
FlowSums interval_flows(std::span<const double> magnitude, const MonotoneSegments& segments);

struct RefinementResult {
  BackflowReport report;  // finest grid evaluated
  bool converged = false;
  int doublings = 0;
  std::vector<double> ratios;  // one per grid in the ladder
  std::vector<int> samples;
};

inline constexpr int kMaxDoublings = 3;

/// Halves the grid spacing until consecutive ratios agree to
/// rel_tol * max(R_fine, 1e-6), at most kMaxDoublings times.
RefinementResult refine_until_stable(const EchoProblem& problem, const TimeGrid& initial,
                                     double rel_tol, const EvaluationOptions& options = {});
RefinementResult refine_until_stable(const LatticeConfig& config, const TimeGrid& initial,
                                     double rel_tol, const EvaluationOptions& options = {});

}  // namespace aafermi
