#include "aafermi/qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aafermi {

namespace {

struct HermitianEigen {
  double lo;
  double hi;
};

HermitianEigen eigenvalues(std::complex<double> a, std::complex<double> b, std::complex<double> d) {
  const double mean = 0.5 * (a.real() + d.real());
  const double half_gap = 0.5 * (a.real() - d.real());
  const double radius = std::hypot(half_gap, std::abs(b));
  return {mean - radius, mean + radius};
}

}  // namespace

bool QubitState::is_valid(double tolerance) const {
  if (std::abs(gg.imag()) > tolerance || std::abs(ee.imag()) > tolerance) return false;
  if (std::abs(ge - std::conj(eg)) > tolerance) return false;
  if (std::abs(gg.real() + ee.real() - 1.0) > tolerance) return false;
  return min_eigenvalue() >= -tolerance;
}

double QubitState::min_eigenvalue() const { return eigenvalues(gg, ge, ee).lo; }

QubitState QubitState::ground() { return {1.0, 0.0, 0.0, 0.0}; }
QubitState QubitState::excited() { return {0.0, 0.0, 0.0, 1.0}; }
QubitState QubitState::ramsey(int sign) {
  const double s = sign >= 0 ? 0.5 : -0.5;
  return {0.5, s, s, 0.5};
}

QubitState apply_dephasing_map(const QubitState& rho0, std::complex<double> chi) {
  if (!rho0.is_valid()) throw std::invalid_argument("dephasing map: input is not a density matrix");
  if (std::abs(chi) > 1.0 + 1e-9) throw std::invalid_argument("dephasing map: |chi| exceeds 1");
  return {rho0.gg, std::conj(chi) * rho0.ge, chi * rho0.eg, rho0.ee};
}

double trace_distance(const QubitState& a, const QubitState& b) {
  const auto ev = eigenvalues(a.gg - b.gg, a.ge - b.ge, a.ee - b.ee);
  return 0.5 * (std::abs(ev.lo) + std::abs(ev.hi));
}

}  // namespace aafermi
