#include "aafermi/dephasing.hpp"
#include "aafermi/oracle.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace aafermi;

namespace {

double max_deviation(const DecoherenceSeries& a, const DecoherenceSeries& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.chi[k] - b.chi[k]));
  return m;
}

}  // namespace

TEST_CASE("time grid layout") {
  const TimeGrid g(5.0, 20);
  const auto t = g.samples();
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 5.0);
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] > t[k - 1]);
  const TimeGrid fine = g.refined();
  CHECK(fine.n_samples() == 39);
  for (int k = 0; k < g.n_samples(); ++k) CHECK(fine.at(2 * k) == doctest::Approx(g.at(k)).epsilon(1e-15));
  CHECK_THROWS(TimeGrid(5.0, 1));
  CHECK_THROWS(TimeGrid(0.0, 10));
}

TEST_CASE("zero coupling gives chi identically one") {
  testing::Draws d(1);
  for (int trial = 0; trial < 5; ++trial) {
    auto c = testing::random_config(d, d.integer(5, 40));
    c.impurity_coupling = 0.0;
    const auto s = decoherence_series(c, TimeGrid(20.0, 50));
    for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(s.chi[k] - 1.0) <= 1e-10);
  }
}

TEST_CASE("chi starts at one and stays inside the unit disc") {
  testing::Draws d(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = testing::random_config(d, d.integer(5, 60));
    const auto s = decoherence_series(c, TimeGrid(30.0, 200));
    CHECK(std::abs(s.chi[0] - 1.0) <= 1e-12);
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(s.magnitude[k] <= 1.0 + 1e-9);
      CHECK(s.magnitude[k] == std::abs(s.chi[k]));
    }
  }
}

TEST_CASE("L=8 reference point agrees with the many-body oracle") {
  LatticeConfig c;
  c.length = 8;
  c.potential_strength = 2.5;
  c.impurity_coupling = 0.1;
  const TimeGrid grid(5.0, 20);
  CHECK(max_deviation(decoherence_series(c, grid), many_body_oracle(c, grid)) <= 1e-10);
}

TEST_CASE("evolution block at t = 0 is the identity") {
  LatticeConfig c;
  c.length = 13;
  c.potential_strength = 1.3;
  c.impurity_coupling = 0.4;
  const auto p = EchoProblem::charge_density_wave(c);
  const auto block = p.propagator.evolution_block(0.0);
  CHECK(block.rows() == 6);
  CHECK(block.isIdentity(0.0));
}

TEST_CASE("full propagator is unitary and matches matrix exponentials") {
  testing::Draws d(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = testing::random_config(d, d.integer(3, 12));
    const auto h_g = build_hamiltonian(c, ImpurityMode::without_impurity).matrix;
    const auto h_e = build_hamiltonian(c, ImpurityMode::with_impurity).matrix;
    std::vector<int> all(static_cast<std::size_t>(c.length));
    for (int r = 0; r < c.length; ++r) all[static_cast<std::size_t>(r)] = r;
    const double t = d.uniform(0.1, 20.0);
    const Eigen::MatrixXcd u = evolution_block(diagonalize(h_e), diagonalize(h_g), all, t);
    const auto n = u.rows();
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((u - testing::echo_unitary(h_e, h_g, t)).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("occupied-block determinant equals the full determinant") {
  testing::Draws d(41);
  for (int length : {5, 8, 13}) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto c = testing::random_config(d, length);
      const auto h_g = build_hamiltonian(c, ImpurityMode::without_impurity).matrix;
      const auto h_e = build_hamiltonian(c, ImpurityMode::with_impurity).matrix;
      const auto rows = cdw_occupied_sites(c);
      const auto p = EchoProblem::charge_density_wave(c);
      for (double t : {0.7, 3.3, 11.0}) {
        const auto full = testing::full_determinant_chi(h_e, h_g, rows, t);
        CHECK(std::abs(p.propagator.overlap(t).value() - full) <= 1e-10);
      }
    }
  }
}

TEST_CASE("single orbital on a three-site open chain") {
  LatticeConfig c;
  c.length = 3;
  c.boundary = Boundary::open;
  c.potential_strength = 0.8;
  c.impurity_site = 0;
  c.impurity_coupling = 0.6;
  const auto h_g = build_hamiltonian(c, ImpurityMode::without_impurity).matrix;
  const auto h_e = build_hamiltonian(c, ImpurityMode::with_impurity).matrix;
  const std::vector<int> rows{1};
  const auto p = EchoProblem::with_orbitals(c, OccupiedOrbitals::from_sites(3, rows));
  const TimeGrid grid(6.0, 13);
  const auto oracle = many_body_overlap(h_e, h_g, rows, grid);
  const auto series = decoherence_series(p, grid);
  for (int k = 0; k < grid.n_samples(); ++k) {
    const auto direct = testing::echo_unitary(h_e, h_g, grid.at(k))(1, 1);
    CHECK(std::abs(series.chi[static_cast<std::size_t>(k)] - direct) <= 1e-12);
    CHECK(std::abs(oracle.chi[static_cast<std::size_t>(k)] - direct) <= 1e-12);
  }
}

TEST_CASE("chi depends only on the occupied subspace") {
  testing::Draws d(43);
  const auto c = testing::random_config(d, 13);
  const auto cdw = OccupiedOrbitals::charge_density_wave(c);
  const int m = cdw.particles();
  Eigen::MatrixXd random = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) random(i, j) = d.uniform(-1, 1);
  }
  const Eigen::MatrixXd rotation = Eigen::HouseholderQR<Eigen::MatrixXd>(random).householderQ();
  const OccupiedOrbitals rotated(cdw.columns() * rotation);
  const TimeGrid grid(10.0, 25);
  const auto a = decoherence_series(EchoProblem::with_orbitals(c, cdw), grid);
  const auto b = decoherence_series(EchoProblem::with_orbitals(c, rotated), grid);
  // det(R^T B R) = det(B) for orthogonal R.
  CHECK(max_deviation(a, b) <= 1e-10);
}

TEST_CASE("non-orthonormal orbitals are rejected") {
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(5, 2);
  cols(0, 0) = 1.0;
  cols(0, 1) = 1.0;
  CHECK_THROWS_AS(OccupiedOrbitals{cols}, std::invalid_argument);
}

TEST_CASE("time reversal: chi(-t) is the conjugate of chi(t)") {
  testing::Draws d(47);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = EchoProblem::charge_density_wave(testing::random_config(d, 8));
    for (double t : {0.5, 2.0, 9.0}) {
      CHECK(std::abs(p.propagator.overlap(-t).value() - std::conj(p.propagator.overlap(t).value())) <= 1e-12);
    }
  }
}

TEST_CASE("vanishing coupling deviates from one by O(epsilon)") {
  LatticeConfig c;
  c.length = 21;
  c.potential_strength = 1.7;
  const TimeGrid grid(40.0, 200);
  auto deviation = [&](double eps) {
    c.impurity_coupling = eps;
    const auto s = decoherence_series(c, grid);
    double m = 0.0;
    for (double v : s.magnitude) m = std::max(m, std::abs(1.0 - v));
    return m;
  };
  const double small = deviation(1e-6);
  CHECK(small <= 1e-6 * grid.t_max());
  // No jump at the origin: ten times the coupling cannot shrink the deviation.
  CHECK(deviation(1e-5) >= small);
}

TEST_CASE("parallel evaluation is bitwise identical to serial") {
  LatticeConfig c;
  c.length = 34;
  c.potential_strength = 2.2;
  c.impurity_coupling = 0.05;
  const auto p = EchoProblem::charge_density_wave(c);
  const TimeGrid grid(25.0, 101);
  const auto serial = decoherence_series(p, grid, {1});
  const auto parallel = decoherence_series(p, grid, {4});
  CHECK(serial.chi == parallel.chi);
}

TEST_CASE("log determinant survives underflow") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 1) = std::complex<double>(1e-200, 0.0);
  m(1, 0) = std::complex<double>(0.0, 1e-200);
  m(2, 2) = 1e-100;
  const auto det = log_determinant(m);
  CHECK(det.log10_abs() == doctest::Approx(-500.0).epsilon(1e-12));
  CHECK(det.value() == std::complex<double>(0.0, 0.0));
  // det = -(1e-200 * i * 1e-200) * 1e-100 -> phase -pi/2
  CHECK(std::remainder(det.phase + 0.5 * std::numbers::pi, kTwoPi) == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::MatrixXcd small(2, 2);
  small << std::complex<double>(1, 2), std::complex<double>(0, 1), std::complex<double>(3, 0),
      std::complex<double>(-1, 1);
  CHECK(std::abs(log_determinant(small).value() - small.determinant()) <= 1e-14);
}

TEST_CASE("default horizon follows the impurity coupling") {
  LatticeConfig c;
  c.impurity_coupling = 0.01;
  CHECK(default_time_grid(c).t_max() == doctest::Approx(5000.0).epsilon(1e-15));
  CHECK(default_time_grid(c).n_samples() == kDefaultSamples);
  c.impurity_coupling = 0.0;
  c.hopping = 2.0;
  CHECK(default_time_grid(c).t_max() == 25.0);
}
