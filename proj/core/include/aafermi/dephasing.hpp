#pragma once

// Impurity decoherence function chi(t) for a Slater-determinant Fermi sea,
// evaluated as a determinant in single-particle space.

#include "aafermi/determinant.hpp"
#include "aafermi/lattice.hpp"
#include "aafermi/spectral.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace aafermi {

/// Uniform grid t_k = k * t_max / (n_samples - 1), k = 0 .. n_samples - 1.
class TimeGrid {
 public:
  TimeGrid(double t_max, int n_samples);

  double t_max() const { return t_max_; }
  int n_samples() const { return n_samples_; }
  double at(int k) const;
  std::vector<double> samples() const;

  /// Same horizon, spacing halved: 2 * (n - 1) + 1 samples. Every old sample
  /// is also a sample of the refined grid.
  TimeGrid refined() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_max_;
  int n_samples_;
};

/// Default horizon t_max = 50 / epsilon (50 / J when epsilon = 0).
inline constexpr double kDefaultHorizon = 50.0;
inline constexpr int kDefaultSamples = 5001;
double default_t_max(const LatticeConfig& config);
TimeGrid default_time_grid(const LatticeConfig& config);

struct DecoherenceSeries {
  std::vector<double> times;
  std::vector<std::complex<double>> chi;
  std::vector<double> magnitude;        // |chi|
  std::vector<double> log10_magnitude;  // from the log-determinant, finite even when |chi| underflows
  LatticeConfig config;
  double t_max = 0.0;

  std::size_t size() const { return chi.size(); }
};

/// Orthonormal occupied orbitals of a Slater determinant, stored as the
/// columns of an L x M real matrix.
class OccupiedOrbitals {
 public:
  explicit OccupiedOrbitals(Eigen::MatrixXd columns);
  /// Site-localized orbitals on the given rows (a Fock basis state).
  static OccupiedOrbitals from_sites(int length, std::span<const int> rows);
  /// Odd-label charge-density-wave filling.
  static OccupiedOrbitals charge_density_wave(const LatticeConfig& config);

  const Eigen::MatrixXd& columns() const { return columns_; }
  int length() const { return static_cast<int>(columns_.rows()); }
  int particles() const { return static_cast<int>(columns_.cols()); }

 private:
  Eigen::MatrixXd columns_;
};

/// Precomputed spectral data for U(t) = exp(-i h_e t) exp(i h_g t) projected
/// onto the occupied orbitals Phi:
///
///   Phi^T U(t) Phi = P_e diag(exp(-i lambda_e t)) A diag(exp(i lambda_g t)) P_g^T
///
/// with P = Phi^T V and the cross-basis overlap A = V_e^T V_g formed once.
/// Immutable after construction; evaluate() may be called concurrently.
class EchoPropagator {
 public:
  EchoPropagator(const SpectralDecomposition& excited, const SpectralDecomposition& ground,
                 const OccupiedOrbitals& occupied);

  int length() const { return static_cast<int>(energies_e_.size()); }
  int particles() const { return static_cast<int>(proj_e_.rows()); }

  /// M x M block Phi^T U(t) Phi.
  Eigen::MatrixXcd evolution_block(double t) const;
  /// det of the block. Exactly 1 at t == 0 or when h_e == h_g.
  LogDeterminant overlap(double t) const;

 private:
  Eigen::VectorXd energies_e_;
  Eigen::VectorXd energies_g_;
  Eigen::MatrixXd proj_e_;  // M x L
  Eigen::MatrixXd proj_g_;  // M x L
  Eigen::MatrixXd cross_;   // L x L, V_e^T V_g
  bool trivial_ = false;
};

/// Single-particle data shared by every time sample of one configuration.
struct EchoProblem {
  LatticeConfig config;
  SpectralDecomposition ground;   // h_g
  SpectralDecomposition excited;  // h_e
  EchoPropagator propagator;

  static EchoProblem charge_density_wave(const LatticeConfig& config);
  static EchoProblem with_orbitals(const LatticeConfig& config, const OccupiedOrbitals& occupied);
};

struct EvaluationOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// rows/cols `occupied` of V_e e^{-i lambda_e t} V_e^T V_g e^{i lambda_g t} V_g^T.
Eigen::MatrixXcd evolution_block(const SpectralDecomposition& excited,
                                 const SpectralDecomposition& ground, std::span<const int> occupied,
                                 double t);

/// chi(t_k) on every grid sample. Samples are evaluated in parallel and
/// assembled in grid order, so the result does not depend on `threads`.
DecoherenceSeries decoherence_series(const EchoProblem& problem, const TimeGrid& grid,
                                     const EvaluationOptions& options = {});
DecoherenceSeries decoherence_series(const LatticeConfig& config, const TimeGrid& grid,
                                     const EvaluationOptions& options = {});

}  // namespace aafermi
