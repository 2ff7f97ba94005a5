#include "aafermi/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace aafermi {

TimeGrid::TimeGrid(double t_max, int n_samples) : t_max_(t_max), n_samples_(n_samples) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be > 0");
  if (n_samples < 2) throw std::invalid_argument("a time grid needs at least 2 samples");
}

double TimeGrid::at(int k) const {
  if (k == n_samples_ - 1) return t_max_;
  return static_cast<double>(k) * t_max_ / static_cast<double>(n_samples_ - 1);
}

std::vector<double> TimeGrid::samples() const {
  std::vector<double> out(static_cast<std::size_t>(n_samples_));
  for (int k = 0; k < n_samples_; ++k) out[static_cast<std::size_t>(k)] = at(k);
  return out;
}

TimeGrid TimeGrid::refined() const { return TimeGrid(t_max_, 2 * (n_samples_ - 1) + 1); }

double default_t_max(const LatticeConfig& config) {
  const double scale = config.impurity_coupling > 0.0 ? config.impurity_coupling : config.hopping;
  return kDefaultHorizon / scale;
}

TimeGrid default_time_grid(const LatticeConfig& config) {
  return TimeGrid(default_t_max(config), kDefaultSamples);
}

OccupiedOrbitals::OccupiedOrbitals(Eigen::MatrixXd columns) : columns_(std::move(columns)) {
  if (columns_.cols() == 0) throw std::invalid_argument("occupied orbital set is empty");
  if (columns_.cols() > columns_.rows()) {
    throw std::invalid_argument("more occupied orbitals than lattice sites");
  }
  const auto m = columns_.cols();
  const double err =
      (columns_.transpose() * columns_ - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw std::invalid_argument("occupied orbitals are not orthonormal");
}

OccupiedOrbitals OccupiedOrbitals::from_sites(int length, std::span<const int> rows) {
  if (rows.empty()) throw std::invalid_argument("occupied site list is empty");
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(length, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (rows[c] < 0 || rows[c] >= length) throw std::out_of_range("occupied row out of range");
    cols(rows[c], static_cast<Eigen::Index>(c)) = 1.0;
  }
  return OccupiedOrbitals(std::move(cols));
}

OccupiedOrbitals OccupiedOrbitals::charge_density_wave(const LatticeConfig& config) {
  const auto rows = cdw_occupied_sites(config);
  return from_sites(config.length, rows);
}

EchoPropagator::EchoPropagator(const SpectralDecomposition& excited,
                               const SpectralDecomposition& ground,
                               const OccupiedOrbitals& occupied)
    : energies_e_(excited.eigenvalues), energies_g_(ground.eigenvalues) {
  const auto n = excited.eigenvectors.rows();
  if (ground.eigenvectors.rows() != n || occupied.length() != n ||
      excited.eigenvalues.size() != n || ground.eigenvalues.size() != n) {
    throw std::invalid_argument("EchoPropagator: dimension mismatch between decompositions");
  }
  proj_e_ = occupied.columns().transpose() * excited.eigenvectors;
  proj_g_ = occupied.columns().transpose() * ground.eigenvectors;
  cross_ = excited.eigenvectors.transpose() * ground.eigenvectors;
  // Identical decompositions mean h_e == h_g, so U(t) is the identity.
  trivial_ = excited.eigenvalues == ground.eigenvalues &&
             excited.eigenvectors == ground.eigenvectors;
}

Eigen::MatrixXcd EchoPropagator::evolution_block(double t) const {
  const Eigen::Index n = energies_e_.size();
  const Eigen::Index m = proj_e_.rows();
  if (t == 0.0 || trivial_) return Eigen::MatrixXcd::Identity(m, m);

  // Real and imaginary halves are stacked so each step is one real product.
  const Eigen::ArrayXd phase_e = energies_e_.array() * t;
  const Eigen::ArrayXd phase_g = energies_g_.array() * t;
  const Eigen::RowVectorXd cos_e = phase_e.cos().matrix().transpose();
  const Eigen::RowVectorXd sin_e = phase_e.sin().matrix().transpose();
  const Eigen::RowVectorXd cos_g = phase_g.cos().matrix().transpose();
  const Eigen::RowVectorXd sin_g = phase_g.sin().matrix().transpose();

  // P_e diag(exp(-i lambda_e t)) = left_re + i left_im
  Eigen::MatrixXd left(2 * m, n);
  left.topRows(m) = proj_e_.array().rowwise() * cos_e.array();
  left.bottomRows(m) = -(proj_e_.array().rowwise() * sin_e.array());

  Eigen::MatrixXd x(2 * m, n);
  x.noalias() = left * cross_;

  // X diag(exp(i lambda_g t))
  Eigen::MatrixXd z(2 * m, n);
  z.topRows(m) = x.topRows(m).array().rowwise() * cos_g.array() -
                 x.bottomRows(m).array().rowwise() * sin_g.array();
  z.bottomRows(m) = x.topRows(m).array().rowwise() * sin_g.array() +
                    x.bottomRows(m).array().rowwise() * cos_g.array();

  Eigen::MatrixXd y(2 * m, m);
  y.noalias() = z * proj_g_.transpose();

  Eigen::MatrixXcd block(m, m);
  block.real() = y.topRows(m);
  block.imag() = y.bottomRows(m);
  return block;
}

LogDeterminant EchoPropagator::overlap(double t) const {
  if (t == 0.0 || trivial_) return {};
  return log_determinant(evolution_block(t));
}

EchoProblem EchoProblem::with_orbitals(const LatticeConfig& config, const OccupiedOrbitals& occupied) {
  const auto h_g = build_hamiltonian(config, ImpurityMode::without_impurity);
  const auto h_e = build_hamiltonian(config, ImpurityMode::with_impurity);
  SpectralDecomposition ground = diagonalize(h_g);
  SpectralDecomposition excited = (h_e.matrix == h_g.matrix) ? ground : diagonalize(h_e);
  EchoPropagator propagator(excited, ground, occupied);
  return EchoProblem{h_g.config, std::move(ground), std::move(excited), std::move(propagator)};
}

EchoProblem EchoProblem::charge_density_wave(const LatticeConfig& config) {
  validate(config);
  return with_orbitals(config, OccupiedOrbitals::charge_density_wave(config));
}

Eigen::MatrixXcd evolution_block(const SpectralDecomposition& excited,
                                 const SpectralDecomposition& ground, std::span<const int> occupied,
                                 double t) {
  const auto n = static_cast<int>(excited.eigenvalues.size());
  const EchoPropagator propagator(excited, ground, OccupiedOrbitals::from_sites(n, occupied));
  return propagator.evolution_block(t);
}

namespace {

unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

}  // namespace

DecoherenceSeries decoherence_series(const EchoProblem& problem, const TimeGrid& grid,
                                     const EvaluationOptions& options) {
  const auto n = static_cast<std::size_t>(grid.n_samples());
  DecoherenceSeries series;
  series.times = grid.samples();
  series.chi.resize(n);
  series.magnitude.resize(n);
  series.log10_magnitude.resize(n);
  series.config = problem.config;
  series.t_max = grid.t_max();

  auto evaluate_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < n; k += stride) {
      const LogDeterminant det = problem.propagator.overlap(series.times[k]);
      series.chi[k] = det.value();
      series.magnitude[k] = std::abs(series.chi[k]);
      series.log10_magnitude[k] = det.log10_abs();
    }
  };

  const unsigned threads = resolve_threads(options.threads, n);
  if (threads <= 1) {
    evaluate_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(evaluate_range, w, threads);
  }
  return series;
}

DecoherenceSeries decoherence_series(const LatticeConfig& config, const TimeGrid& grid,
                                     const EvaluationOptions& options) {
  return decoherence_series(EchoProblem::charge_density_wave(config), grid, options);
}

}  // namespace aafermi
