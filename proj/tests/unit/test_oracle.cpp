#include "aafermi/oracle.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <cmath>

using namespace aafermi;

TEST_CASE("fock sector dimensions are binomial") {
  CHECK(FockSector(5, 2).dimension() == 10);
  CHECK(FockSector(8, 4).dimension() == 70);
  CHECK(FockSector(14, 7).dimension() == 3432);
  CHECK_THROWS_AS(FockSector(15, 7), std::invalid_argument);
}

TEST_CASE("one-particle sector reproduces the single-particle matrix") {
  testing::Draws d(3);
  const auto c = testing::random_config(d, 7);
  const auto h = build_hamiltonian(c, ImpurityMode::with_impurity).matrix;
  const FockSector sector(7, 1);
  const Eigen::MatrixXd big = sector.second_quantize(h);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      CHECK(big(static_cast<Eigen::Index>(sector.index_of(1u << i)),
                static_cast<Eigen::Index>(sector.index_of(1u << j))) == h(i, j));
    }
  }
}

TEST_CASE("wrap-around hopping picks up the fermionic sign") {
  // Two particles on a 4-site ring: moving the particle at row 3 to row 0
  // passes the one at row 1, so the amplitude is +J instead of -J.
  LatticeConfig c;
  c.length = 4;
  const auto h = build_hamiltonian(c, ImpurityMode::without_impurity).matrix;
  const FockSector sector(4, 2);
  const Eigen::MatrixXd big = sector.second_quantize(h);
  CHECK(big == big.transpose());
  const auto from = static_cast<Eigen::Index>(sector.index_of(0b1010));
  const auto to = static_cast<Eigen::Index>(sector.index_of(0b0011));
  CHECK(big(to, from) == 1.0);
  const auto near = static_cast<Eigen::Index>(sector.index_of(0b0110));
  CHECK(big(near, from) == -1.0);
}

TEST_CASE("oracle is identically one without coupling") {
  LatticeConfig c;
  c.length = 8;
  c.potential_strength = 1.1;
  const auto s = many_body_oracle(c, TimeGrid(5.0, 20));
  for (const auto& v : s.chi) CHECK(std::abs(v - 1.0) <= 1e-10);
}

TEST_CASE("determinant pipeline agrees with the oracle on L = 5") {
  testing::Draws d(101);
  const TimeGrid grid(5.0, 20);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = testing::random_config(d, 5, trial % 3 == 0 ? Boundary::open : Boundary::periodic);
    const auto a = decoherence_series(c, grid);
    const auto b = many_body_oracle(c, grid);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a.chi[k] - b.chi[k]) <= 1e-10);
  }
}

TEST_CASE("oracle rejects large lattices") {
  LatticeConfig c;
  c.length = 15;
  CHECK_THROWS_AS(many_body_oracle(c, TimeGrid(1.0, 2)), std::invalid_argument);
}
