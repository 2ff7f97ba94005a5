#pragma once

// Test-only reference computations. Nothing here goes through the spectral
// propagator, so they can certify it.

#include "aafermi/lattice.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace aafermi::testing {

/// exp(i * s * h) for real symmetric h by scaling and squaring of a Taylor series.
inline Eigen::MatrixXcd expm_i(const Eigen::MatrixXd& h, double s) {
  const Eigen::MatrixXcd a = std::complex<double>(0.0, s) * h.cast<std::complex<double>>();
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd scaled = a * scale;
  const auto n = h.rows();
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

/// U(t) = exp(-i h_e t) exp(i h_g t) from matrix exponentials.
inline Eigen::MatrixXcd echo_unitary(const Eigen::MatrixXd& h_e, const Eigen::MatrixXd& h_g, double t) {
  return expm_i(h_e, -t) * expm_i(h_g, t);
}

/// Full L x L form det(1 - n + n U(t)) with n the projector on `rows`.
inline std::complex<double> full_determinant_chi(const Eigen::MatrixXd& h_e,
                                                 const Eigen::MatrixXd& h_g,
                                                 const std::vector<int>& rows, double t) {
  const auto l = h_e.rows();
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(l, l);
  for (int r : rows) proj(r, r) = 1.0;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(l, l);
  const Eigen::MatrixXcd m = id - proj + proj * echo_unitary(h_e, h_g, t);
  return m.fullPivLu().determinant();
}

/// Deterministic uniform doubles for randomized property tests.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

inline LatticeConfig random_config(Draws& d, int length, Boundary boundary = Boundary::periodic) {
  LatticeConfig c;
  c.length = length;
  c.hopping = 1.0;
  c.potential_strength = d.uniform(0.0, 3.0);
  c.impurity_coupling = d.log_uniform(1e-3, 1.0);
  c.phase = d.uniform(0.0, kTwoPi);
  c.boundary = boundary;
  return c;
}

}  // namespace aafermi::testing
