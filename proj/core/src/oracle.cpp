#include "aafermi/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aafermi {

FockSector::FockSector(int length, int particles) : length_(length), particles_(particles) {
  if (length < 1 || length > kOracleMaxLength) {
    throw std::invalid_argument("Fock sector length must be in [1, " +
                                std::to_string(kOracleMaxLength) + "], got " +
                                std::to_string(length));
  }
  if (particles < 0 || particles > length) throw std::invalid_argument("bad particle number");
  const std::uint32_t limit = 1u << length;
  lookup_.assign(limit, -1);
  for (std::uint32_t s = 0; s < limit; ++s) {
    if (std::popcount(s) == particles) {
      lookup_[s] = static_cast<std::int32_t>(states_.size());
      states_.push_back(s);
    }
  }
}

std::size_t FockSector::index_of(std::uint32_t state) const {
  if (state >= lookup_.size() || lookup_[state] < 0) {
    throw std::out_of_range("state outside the Fock sector");
  }
  return static_cast<std::size_t>(lookup_[state]);
}

Eigen::MatrixXd FockSector::second_quantize(const Eigen::MatrixXd& h) const {
  if (h.rows() != length_ || h.cols() != length_) {
    throw std::invalid_argument("second_quantize: single-particle matrix has wrong size");
  }
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const std::uint32_t s = states_[static_cast<std::size_t>(col)];
    for (int j = 0; j < length_; ++j) {
      if (!(s >> j & 1u)) continue;
      big(col, col) += h(j, j);
      for (int i = 0; i < length_; ++i) {
        if (i == j || h(i, j) == 0.0 || (s >> i & 1u)) continue;
        // c_i^dag c_j |s>: sign from occupied modes strictly between i and j.
        const int lo = std::min(i, j);
        const int hi = std::max(i, j);
        const std::uint32_t between = s & (((1u << hi) - 1u) & ~((1u << (lo + 1)) - 1u));
        const double sign = (std::popcount(between) % 2 == 0) ? 1.0 : -1.0;
        const std::uint32_t target = (s & ~(1u << j)) | (1u << i);
        big(static_cast<Eigen::Index>(index_of(target)), col) += sign * h(i, j);
      }
    }
  }
  return big;
}

DecoherenceSeries many_body_overlap(const Eigen::MatrixXd& h_e, const Eigen::MatrixXd& h_g,
                                    std::span<const int> rows, const TimeGrid& grid) {
  const int length = static_cast<int>(h_g.rows());
  const FockSector sector(length, static_cast<int>(rows.size()));

  std::uint32_t phi = 0;
  for (int r : rows) {
    if (r < 0 || r >= length) throw std::out_of_range("occupied row out of range");
    phi |= 1u << r;
  }
  const auto phi_index = static_cast<Eigen::Index>(sector.index_of(phi));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_g(sector.second_quantize(h_g));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_e(sector.second_quantize(h_e));
  if (solve_g.info() != Eigen::Success || solve_e.info() != Eigen::Success) {
    throw std::runtime_error("many-body eigensolver did not converge");
  }
  const Eigen::VectorXd amp_e = solve_e.eigenvectors().row(phi_index).transpose();
  const Eigen::VectorXd amp_g = solve_g.eigenvectors().row(phi_index).transpose();
  const Eigen::MatrixXd overlap = solve_e.eigenvectors().transpose() * solve_g.eigenvectors();

  DecoherenceSeries series;
  series.times = grid.samples();
  series.t_max = grid.t_max();
  for (double t : series.times) {
    const Eigen::VectorXcd right =
        (amp_g.cast<std::complex<double>>().array() *
         (std::complex<double>(0.0, t) * solve_g.eigenvalues().array()).exp())
            .matrix();
    const Eigen::VectorXcd left =
        (amp_e.cast<std::complex<double>>().array() *
         (std::complex<double>(0.0, -t) * solve_e.eigenvalues().array()).exp())
            .matrix();
    const Eigen::VectorXd mixed_re = overlap * right.real();
    const Eigen::VectorXd mixed_im = overlap * right.imag();
    const std::complex<double> value =
        (left.transpose() * (mixed_re.cast<std::complex<double>>() +
                             std::complex<double>(0.0, 1.0) * mixed_im.cast<std::complex<double>>()))
            .value();
    series.chi.push_back(value);
    series.magnitude.push_back(std::abs(value));
    series.log10_magnitude.push_back(std::log10(std::abs(value)));
  }
  return series;
}

DecoherenceSeries many_body_oracle(const LatticeConfig& config, const TimeGrid& grid) {
  validate(config);
  if (config.length > kOracleMaxLength) {
    throw std::invalid_argument("many-body oracle supports L <= " +
                                std::to_string(kOracleMaxLength) + ", got " +
                                std::to_string(config.length));
  }
  const auto h_g = build_hamiltonian(config, ImpurityMode::without_impurity);
  const auto h_e = build_hamiltonian(config, ImpurityMode::with_impurity);
  const auto rows = cdw_occupied_sites(config);
  DecoherenceSeries series = many_body_overlap(h_e.matrix, h_g.matrix, rows, grid);
  series.config = h_g.config;
  return series;
}

}  // namespace aafermi
