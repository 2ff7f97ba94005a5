#pragma once

// Brute-force reference for chi(t): exact propagation in the fixed-particle-
// number sector of Fock space. Exponential in L; used for cross-validation.

#include "aafermi/dephasing.hpp"
#include "aafermi/lattice.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace aafermi {

inline constexpr int kOracleMaxLength = 14;

/// Occupation-number basis with a fixed particle count. Bit r of a state is
/// the occupation of matrix row r.
class FockSector {
 public:
  FockSector(int length, int particles);

  int length() const { return length_; }
  int particles() const { return particles_; }
  std::size_t dimension() const { return states_.size(); }
  std::uint32_t state(std::size_t index) const { return states_[index]; }
  /// Index of a basis state; throws if the state is not in the sector.
  std::size_t index_of(std::uint32_t state) const;

  /// Matrix of sum_ij h_ij c_i^dag c_j restricted to the sector, with the
  /// fermionic sign from the occupied modes strictly between i and j.
  Eigen::MatrixXd second_quantize(const Eigen::MatrixXd& h) const;

 private:
  int length_;
  int particles_;
  std::vector<std::uint32_t> states_;
  std::vector<std::int32_t> lookup_;
};

/// <Phi| exp(-i H_e t) exp(i H_g t) |Phi> for the Fock state occupying `rows`.
DecoherenceSeries many_body_overlap(const Eigen::MatrixXd& h_e, const Eigen::MatrixXd& h_g,
                                    std::span<const int> rows, const TimeGrid& grid);

/// CDW reference series for `config`. Rejects L > kOracleMaxLength.
DecoherenceSeries many_body_oracle(const LatticeConfig& config, const TimeGrid& grid);

}  // namespace aafermi
