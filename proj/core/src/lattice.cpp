#include "aafermi/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace aafermi {

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

Boundary boundary_from_string(const std::string& name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "open") return Boundary::open;
  throw std::invalid_argument("unknown boundary '" + name + "' (expected periodic or open)");
}

double canonical_phase(double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("phase must be finite");
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below 0 can round back up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

void validate(const LatticeConfig& config) {
  if (config.length < 3) {
    throw std::invalid_argument("lattice length must be >= 3, got " + std::to_string(config.length));
  }
  if (!(config.hopping > 0.0) || !std::isfinite(config.hopping)) {
    throw std::invalid_argument("hopping J must be a positive finite number");
  }
  if (!(config.potential_strength >= 0.0) || !std::isfinite(config.potential_strength)) {
    throw std::invalid_argument("potential strength Delta must be >= 0");
  }
  if (!(config.incommensuration > 0.0) || !std::isfinite(config.incommensuration)) {
    throw std::invalid_argument("incommensuration beta must be > 0");
  }
  if (!(config.impurity_coupling >= 0.0) || !std::isfinite(config.impurity_coupling)) {
    throw std::invalid_argument("impurity coupling epsilon must be >= 0");
  }
  if (!std::isfinite(config.phase)) throw std::invalid_argument("phase must be finite");
  const SiteIndexMap sites(config.length);
  if (!sites.contains(config.impurity_site)) {
    throw std::invalid_argument("impurity site " + std::to_string(config.impurity_site) +
                                " outside label range [" + std::to_string(sites.first_label()) +
                                ", " + std::to_string(sites.last_label()) + "]");
  }
}

bool is_fibonacci(std::int64_t n) {
  std::int64_t a = 1, b = 2;
  if (n == 1) return true;
  while (b < n) {
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return b == n;
}

std::vector<std::string> lattice_warnings(const LatticeConfig& config) {
  std::vector<std::string> out;
  if (config.boundary == Boundary::periodic && !is_fibonacci(config.length)) {
    out.push_back("length " + std::to_string(config.length) +
                  " is not a Fibonacci number; the periodic seam will break the quasi-periodic "
                  "potential noticeably");
  }
  return out;
}

SiteIndexMap::SiteIndexMap(int length) : length_(length), first_label_(-(length / 2)) {
  if (length < 1) throw std::invalid_argument("SiteIndexMap needs a positive length");
}

int SiteIndexMap::row(int label) const {
  if (!contains(label)) throw std::out_of_range("site label out of range");
  return label - first_label_;
}

int SiteIndexMap::label(int row) const {
  if (row < 0 || row >= length_) throw std::out_of_range("row out of range");
  return row + first_label_;
}

SingleParticleHamiltonian build_hamiltonian(const LatticeConfig& config, ImpurityMode mode) {
  validate(config);
  LatticeConfig canon = config;
  canon.phase = canonical_phase(config.phase);

  const int n = canon.length;
  const SiteIndexMap sites(n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);

  for (int r = 0; r + 1 < n; ++r) {
    h(r, r + 1) = -canon.hopping;
    h(r + 1, r) = -canon.hopping;
  }
  if (canon.boundary == Boundary::periodic) {
    h(0, n - 1) = -canon.hopping;
    h(n - 1, 0) = -canon.hopping;
  }
  for (int r = 0; r < n; ++r) {
    const double i = sites.label(r);
    h(r, r) = canon.potential_strength * std::cos(kTwoPi * canon.incommensuration * i + canon.phase);
  }
  if (mode == ImpurityMode::with_impurity) {
    h(sites.row(canon.impurity_site), sites.row(canon.impurity_site)) += canon.impurity_coupling;
  }
  return SingleParticleHamiltonian{std::move(h), canon, mode};
}

std::vector<int> cdw_occupied_sites(const LatticeConfig& config) {
  const SiteIndexMap sites(config.length);
  std::vector<int> rows;
  for (int label = sites.first_label(); label <= sites.last_label(); ++label) {
    if (label % 2 != 0) rows.push_back(sites.row(label));
  }
  return rows;
}

}  // namespace aafermi
