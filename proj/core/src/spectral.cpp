#include "aafermi/spectral.hpp"

#include <stdexcept>

namespace aafermi {

SpectralDecomposition diagonalize(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("diagonalize: matrix is not square");
  if (h != h.transpose()) throw std::invalid_argument("diagonalize: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("diagonalize: symmetric eigensolver did not converge (n = " +
                             std::to_string(h.rows()) + ")");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

SpectralDecomposition diagonalize(const SingleParticleHamiltonian& h) { return diagonalize(h.matrix); }

double reconstruction_residual(const SpectralDecomposition& s, const Eigen::MatrixXd& h) {
  const Eigen::MatrixXd rebuilt = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
  return (rebuilt - h).cwiseAbs().maxCoeff();
}

double orthonormality_residual(const SpectralDecomposition& s) {
  const auto n = s.eigenvectors.cols();
  return (s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace aafermi
