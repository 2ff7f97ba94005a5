#pragma once

#include "aafermi/lattice.hpp"

#include <Eigen/Dense>

namespace aafermi {

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
};

/// Dense symmetric eigensolve. Throws std::runtime_error if the solver does
/// not converge and std::invalid_argument if the matrix is not symmetric.
SpectralDecomposition diagonalize(const Eigen::MatrixXd& h);
SpectralDecomposition diagonalize(const SingleParticleHamiltonian& h);

/// max |V diag(lambda) V^T - H|
double reconstruction_residual(const SpectralDecomposition& s, const Eigen::MatrixXd& h);
/// max |V^T V - I|
double orthonormality_residual(const SpectralDecomposition& s);

}  // namespace aafermi
