#pragma once

// Aubry-Andre tight-binding chain with an optional single-site impurity shift.

#include <Eigen/Dense>

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace aafermi {

inline constexpr double kGoldenRatio = std::numbers::phi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Boundary { periodic, open };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& name);

// All energies share the unit of `hopping`.
struct LatticeConfig {
  int length = 233;
  double hopping = 1.0;
  double potential_strength = 0.0;
  double incommensuration = kGoldenRatio;
  double phase = 0.0;
  double impurity_coupling = 0.0;
  int impurity_site = 1;  // physical label, not a matrix row
  Boundary boundary = Boundary::periodic;

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

/// Maps phi into [0, 2pi).
double canonical_phase(double phi);

/// Throws std::invalid_argument when the config violates a structural
/// invariant (length < 3, impurity outside the label range, J <= 0, ...).
void validate(const LatticeConfig& config);

/// Non-fatal diagnostics, currently only the non-Fibonacci periodic ring.
std::vector<std::string> lattice_warnings(const LatticeConfig& config);

bool is_fibonacci(std::int64_t n);

/// Bijection between physical site labels and matrix rows.
///
/// Labels run over the symmetric range -(L-1)/2 .. (L-1)/2 for odd L. For even
/// L the range is -L/2 .. L/2 - 1, so label 0 and label 1 always exist.
class SiteIndexMap {
 public:
  explicit SiteIndexMap(int length);

  int length() const { return length_; }
  int first_label() const { return first_label_; }
  int last_label() const { return first_label_ + length_ - 1; }

  bool contains(int label) const { return label >= first_label() && label <= last_label(); }
  int row(int label) const;
  int label(int row) const;

 private:
  int length_;
  int first_label_;
};

enum class ImpurityMode { without_impurity, with_impurity };

struct SingleParticleHamiltonian {
  Eigen::MatrixXd matrix;
  LatticeConfig config;
  ImpurityMode mode = ImpurityMode::without_impurity;
};

/// h_g (without) or h_e (with): -J on neighbours (plus the wrap pair when
/// periodic), Delta*cos(2*pi*beta*i + phi) on site label i, +epsilon at the
/// impurity when `mode` is with_impurity.
SingleParticleHamiltonian build_hamiltonian(const LatticeConfig& config, ImpurityMode mode);

/// Rows of the odd-label sites, ascending. The count is the particle number.
std::vector<int> cdw_occupied_sites(const LatticeConfig& config);

}  // namespace aafermi
