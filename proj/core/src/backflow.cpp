#include "aafermi/backflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aafermi {

namespace {

int step_sign(double d) {
  if (std::abs(d) <= kPlateauThreshold) return 0;
  return d > 0 ? 1 : -1;
}

// Neumaier summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

MonotoneSegments segment_monotone(std::span<const double> magnitude) {
  MonotoneSegments out;
  if (magnitude.size() < 2) return out;

  int run_sign = 0;
  std::size_t run_start = 0;
  auto close_run = [&](std::size_t end) {
    if (run_sign > 0) out.rising.push_back({run_start, end});
    if (run_sign < 0) out.falling.push_back({run_start, end});
  };
  for (std::size_t k = 0; k + 1 < magnitude.size(); ++k) {
    const int s = step_sign(magnitude[k + 1] - magnitude[k]);
    if (s != run_sign) {
      close_run(k);
      run_sign = s;
      run_start = k;
    }
  }
  close_run(magnitude.size() - 1);
  return out;
}

MonotoneSegments segment_monotone(const DecoherenceSeries& series) {
  return segment_monotone(series.magnitude);
}

BackflowReport backflow_report(std::span<const double> magnitude) {
  BackflowReport report;
  report.n_samples = magnitude.size();
  if (magnitude.empty()) return report;
  report.initial_magnitude = magnitude.front();
  report.final_magnitude = magnitude.back();
  CompensatedSum rise, fall;
  for (std::size_t k = 0; k + 1 < magnitude.size(); ++k) {
    const double d = magnitude[k + 1] - magnitude[k];
    switch (step_sign(d)) {
      case 1: rise.add(d); break;
      case -1: fall.add(-d); break;
      default: break;
    }
  }
  report.backflow = rise.value();
  report.outflow = fall.value();
  report.ratio = report.outflow > kOutflowFloor ? report.backflow / report.outflow : 0.0;
  report.segments = segment_monotone(magnitude);
  return report;
}

BackflowReport backflow_report(const DecoherenceSeries& series) {
  BackflowReport report = backflow_report(series.magnitude);
  report.t_max = series.t_max;
  return report;
}

FlowSums interval_flows(std::span<const double> magnitude, const MonotoneSegments& segments) {
  FlowSums sums;
  for (const auto& iv : segments.rising) sums.backflow += magnitude[iv.last] - magnitude[iv.first];
  for (const auto& iv : segments.falling) sums.outflow += magnitude[iv.first] - magnitude[iv.last];
  return sums;
}

RefinementResult refine_until_stable(const EchoProblem& problem, const TimeGrid& initial,
                                     double rel_tol, const EvaluationOptions& options) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  RefinementResult result;
  TimeGrid grid = initial;
  result.report = backflow_report(decoherence_series(problem, grid, options));
  result.ratios.push_back(result.report.ratio);
  result.samples.push_back(grid.n_samples());

  while (result.doublings < kMaxDoublings) {
    grid = grid.refined();
    BackflowReport fine = backflow_report(decoherence_series(problem, grid, options));
    ++result.doublings;
    const double previous = result.report.ratio;
    result.report = std::move(fine);
    result.ratios.push_back(result.report.ratio);
    result.samples.push_back(grid.n_samples());
    if (std::abs(result.report.ratio - previous) <=
        rel_tol * std::max(result.report.ratio, 1e-6)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

RefinementResult refine_until_stable(const LatticeConfig& config, const TimeGrid& initial,
                                     double rel_tol, const EvaluationOptions& options) {
  return refine_until_stable(EchoProblem::charge_density_wave(config), initial, rel_tol, options);
}

}  // namespace aafermi
