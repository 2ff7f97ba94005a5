#include "aafermi/qubit.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace aafermi;
using cplx = std::complex<double>;

TEST_CASE("identity channel at chi = 1") {
  const QubitState rho{0.3, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.7};
  const auto out = apply_dephasing_map(rho, 1.0);
  CHECK(out.gg == rho.gg);
  CHECK(out.ge == rho.ge);
  CHECK(out.eg == rho.eg);
  CHECK(out.ee == rho.ee);
}

TEST_CASE("full dephasing of the Ramsey state") {
  const auto out = apply_dephasing_map(QubitState::ramsey(), 0.0);
  CHECK(out.gg.real() == 0.5);
  CHECK(out.ee.real() == 0.5);
  CHECK(std::abs(out.ge) == 0.0);
  CHECK(std::abs(out.eg) == 0.0);
}

TEST_CASE("map keeps states positive and scales coherences") {
  testing::Draws d(99);
  for (int trial = 0; trial < 200; ++trial) {
    // Random Bloch vector inside the ball.
    const double r = std::cbrt(d.uniform(0, 1));
    const double th = std::acos(d.uniform(-1, 1));
    const double ph = d.uniform(0, kTwoPi);
    const double x = r * std::sin(th) * std::cos(ph), y = r * std::sin(th) * std::sin(ph), z = r * std::cos(th);
    const QubitState rho{0.5 * (1 + z), 0.5 * cplx(x, -y), 0.5 * cplx(x, y), 0.5 * (1 - z)};
    REQUIRE(rho.is_valid());
    const cplx chi = std::polar(d.uniform(0, 1), d.uniform(0, kTwoPi));
    const auto out = apply_dephasing_map(rho, chi);
    CHECK(out.is_valid());
    CHECK(out.gg == rho.gg);
    CHECK(out.ee == rho.ee);
    CHECK(std::abs(out.eg - chi * rho.eg) <= 1e-15);
    CHECK(std::abs(out.ge - std::conj(chi) * rho.ge) <= 1e-15);
  }
}

TEST_CASE("invalid inputs are rejected") {
  const QubitState negative{1.2, 0.0, 0.0, -0.2};
  CHECK_THROWS_AS(apply_dephasing_map(negative, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(apply_dephasing_map(QubitState::ramsey(), 1.1), std::invalid_argument);
}

TEST_CASE("trace distance basics") {
  CHECK(trace_distance(QubitState::ramsey(), QubitState::ramsey()) == 0.0);
  CHECK(trace_distance(QubitState::ground(), QubitState::excited()) == doctest::Approx(1.0));
  CHECK(trace_distance(QubitState::ramsey(+1), QubitState::ramsey(-1)) == doctest::Approx(1.0));
}

TEST_CASE("optimal pair distance equals |chi|") {
  testing::Draws d(5);
  for (int trial = 0; trial < 100; ++trial) {
    const cplx chi = std::polar(d.uniform(0, 1), d.uniform(0, kTwoPi));
    const double dist = trace_distance(apply_dephasing_map(QubitState::ramsey(+1), chi),
                                       apply_dephasing_map(QubitState::ramsey(-1), chi));
    CHECK(std::abs(dist - std::abs(chi)) <= 1e-12);
  }
}
