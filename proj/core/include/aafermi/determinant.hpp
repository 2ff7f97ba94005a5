#pragma once

#include <Eigen/Dense>

#include <complex>

namespace aafermi {

/// det = exp(log_abs) * exp(i * phase). log_abs is -inf for a singular matrix.
struct LogDeterminant {
  double log_abs = 0.0;
  double phase = 0.0;

  std::complex<double> value() const;
  double log10_abs() const;
};

/// Partial-pivoting LU; the diagonal product is accumulated as a sum of logs so
/// that determinants far below the double range stay representable.
LogDeterminant log_determinant(const Eigen::MatrixXcd& m);

}  // namespace aafermi
