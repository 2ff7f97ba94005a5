#include "aafermi/sweep.hpp"

#include <charconv>
#include <filesystem>
#include <stdexcept>

namespace aafermi {

namespace {

// Shortest round-trip form, for file names.
std::string short_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<std::string> emit_echo_series(const std::vector<LatticeConfig>& configs,
                                          const TimeGrid& grid, const std::string& prefix,
                                          const EvaluationOptions& options) {
  std::vector<std::string> paths;
  const auto parent = std::filesystem::path(prefix).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  for (const auto& config : configs) {
    const std::string path = prefix + "_L" + std::to_string(config.length) + "_delta" +
                             short_number(config.potential_strength / config.hopping) + "_eps" +
                             short_number(config.impurity_coupling / config.hopping) + "_phi" +
                             short_number(canonical_phase(config.phase)) + ".csv";
    write_echo_series_file(path, decoherence_series(config, grid, options));
    paths.push_back(path);
  }
  return paths;
}

std::vector<RunRecord> emit_r_curve(SweepSpec spec, const std::string& path,
                                    const SweepOptions& options) {
  if (spec.phase_draw || spec.phases.size() != 1) {
    throw std::invalid_argument("R curve: expected exactly one explicit phase");
  }
  spec.output_path = path;
  return run_sweep(spec, options);
}

std::vector<RunRecord> emit_phase_scan(SweepSpec spec, const std::string& path,
                                       const SweepOptions& options) {
  if (spec.lengths.size() != 1 || spec.epsilon_over_j.size() != 1) {
    throw std::invalid_argument("phase scan: expected a single length and a single epsilon/J");
  }
  spec.output_path = path;
  return run_sweep(spec, options);
}

}  // namespace aafermi
