#include "aafermi/determinant.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aafermi {

std::complex<double> LogDeterminant::value() const {
  if (std::isinf(log_abs) && log_abs < 0) return {0.0, 0.0};
  return std::polar(std::exp(log_abs), phase);
}

double LogDeterminant::log10_abs() const { return log_abs / std::numbers::ln10; }

LogDeterminant log_determinant(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("log_determinant: matrix is not square");
  if (m.rows() == 0) return {};

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const Eigen::MatrixXcd& packed = lu.matrixLU();

  LogDeterminant out;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const std::complex<double> u = packed(i, i);
    const double mag = std::abs(u);
    if (mag == 0.0) {
      return {-std::numeric_limits<double>::infinity(), 0.0};
    }
    out.log_abs += std::log(mag);
    out.phase += std::arg(u);
  }
  if (lu.permutationP().determinant() < 0) out.phase += std::numbers::pi;
  out.phase = std::remainder(out.phase, 2.0 * std::numbers::pi);
  return out;
}

}  // namespace aafermi
