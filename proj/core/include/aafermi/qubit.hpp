#pragma once

#include <complex>

namespace aafermi {

/// 2x2 density matrix of the impurity in the {g, e} basis.
struct QubitState {
  std::complex<double> gg;
  std::complex<double> ge;
  std::complex<double> eg;
  std::complex<double> ee;

  /// Hermitian, unit trace and eigenvalues >= -tolerance.
  bool is_valid(double tolerance = 1e-12) const;
  /// Smaller eigenvalue (the state is Hermitian).
  double min_eigenvalue() const;

  static QubitState ground();
  static QubitState excited();
  /// |+> = (|g> + |e>)/sqrt(2) for sign = +1, |-> for sign = -1.
  static QubitState ramsey(int sign = +1);
};

/// Pure dephasing: populations fixed, rho_eg -> chi rho_eg, rho_ge -> chi* rho_ge.
/// Throws std::invalid_argument for an invalid input state or |chi| > 1 + 1e-9.
QubitState apply_dephasing_map(const QubitState& rho0, std::complex<double> chi);

/// (1/2) * sum of |eigenvalues| of a - b.
double trace_distance(const QubitState& a, const QubitState& b);

}  // namespace aafermi
