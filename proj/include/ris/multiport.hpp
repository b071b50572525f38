// SPDX-License-Identifier: Apache-2.0
//
// Impedance-parameter (Z) description of a multi-RIS MIMO link as one N-port
// network, with N = n_t + l·n_i + n_r. Port order is transmitter, RIS 0 ..
// RIS l-1, receiver. RIS indices are zero-based throughout.
#pragma once

#include <cstddef>
#include <vector>

#include "ris/linalg.hpp"

namespace ris {

inline constexpr double kDefaultZ0 = 50.0;

struct Dimensions {
  int n_t = 2;
  int n_r = 2;
  int n_i = 1;
  int l = 1;

  int total_ports() const { return n_t + l * n_i + n_r; }
  /// Throws DimensionMismatch unless every count is ≥ 1.
  void validate() const;
};

/// Modelling assumptions asserted for a network. Each asserted flag is checked
/// against the blocks at construction; a violated flag is an error.
struct AssumptionFlags {
  bool terminal_unilateral = false;  // Z_TI = Z_TR = Z_IR = 0
  bool ris_unilateral = false;       // Z_{i,j} = 0 for i < j
  bool cascade_obstruction = false;  // Z_{i,j} = 0 for i − j ≥ 2
  bool matched_terminals = false;    // Z_TT = Z_RR = Z0·I
  bool matched_ris = false;          // Z_{II,ℓ} = Z0·I
  bool pure_cascade = false;         // Z_RT = 0, Z_IT,ℓ = 0 (ℓ>0), Z_RI,ℓ = 0 (ℓ<l−1)

  static AssumptionFlags through_cascade() { return {true, true, true, false, false, false}; }
  static AssumptionFlags through_matched() { return {true, true, true, true, true, false}; }
  static AssumptionFlags all() { return {true, true, true, true, true, true}; }
};

class MultiportNetwork {
 public:
  /// `z` is the full N×N impedance matrix in the port order above.
  MultiportNetwork(Dimensions dims, double z0, CMat z, AssumptionFlags flags);

  const Dimensions& dims() const { return dims_; }
  double z0() const { return z0_; }
  const AssumptionFlags& flags() const { return flags_; }
  const CMat& full() const { return z_; }

  // The nine partitions.
  CMat z_tt() const;
  CMat z_ti() const;
  CMat z_tr() const;
  CMat z_it() const;
  CMat z_ii() const;
  CMat z_ir() const;
  CMat z_rt() const;
  CMat z_ri() const;
  CMat z_rr() const;

  /// Antenna-array impedance of RIS `l` (Z_{II,ℓ}).
  CMat z_ii_block(int l) const;
  /// Transmission impedance from RIS `from` to RIS `to` (Z_{to,from}).
  CMat z_inter(int to, int from) const;
  CMat z_it_block(int l) const;
  CMat z_ri_block(int l) const;

 private:
  int ris_offset(int l) const { return dims_.n_t + l * dims_.n_i; }
  int rx_offset() const { return dims_.n_t + dims_.l * dims_.n_i; }
  void check_assumptions() const;

  Dimensions dims_;
  double z0_;
  CMat z_;
  AssumptionFlags flags_;
};

/// Reconfigurable impedance networks Z_{I,ℓ}, one n_i×n_i matrix per RIS.
struct RisLoadStack {
  std::vector<CMat> loads;

  void validate(const Dimensions& dims) const;
  /// Block-diagonal Z_I.
  CMat block_diagonal() const;
  /// Purely reactive (real part zero) within `tol` relative to the largest entry.
  bool is_lossless(double tol = 1e-12) const;
};

/// Inverse of a block lower-bidiagonal matrix, stored as an L×L grid of blocks.
struct BlockLowerInverse {
  std::vector<std::vector<CMat>> blocks;  // blocks[i][j]

  std::size_t count() const { return blocks.size(); }
  const CMat& at(std::size_t i, std::size_t j) const { return blocks[i][j]; }
  CMat assemble() const;
};

/// Closed-form inverse of the block matrix with `diagonal` blocks D_ℓ and
/// `subdiagonal` blocks S_{ℓ+1,ℓ} (subdiagonal[ℓ] sits below diagonal[ℓ]).
/// Blocks above the diagonal are exact zeros; products run over decreasing
/// index without reassociation.
BlockLowerInverse block_subdiagonal_inverse(const std::vector<CMat>& diagonal,
                                            const std::vector<CMat>& subdiagonal);

/// Channel under the terminal unilateral approximation only, by direct
/// inversion of Z_I + Z_II.
CMat channel_z_general(const MultiportNetwork& net, const RisLoadStack& loads);

/// Channel as an explicit sum of per-RIS and multi-hop terms (requires the
/// cascade shape of Z_II); uses block_subdiagonal_inverse.
CMat channel_z_cascade(const MultiportNetwork& net, const RisLoadStack& loads);

/// Channel under perfect matching and no mutual coupling.
CMat channel_z_matched(const MultiportNetwork& net, const RisLoadStack& loads);

/// Channel when only the transmitter→RIS 0→…→RIS l−1→receiver chain survives.
CMat channel_z_pure_cascade(const MultiportNetwork& net, const RisLoadStack& loads);

/// Θ = (Z + Z0·I)⁻¹(Z − Z0·I).
CMat z_to_scattering(const CMat& z_load, double z0);

/// Z = Z0(I + Θ)(I − Θ)⁻¹. Throws OpenCircuitSingularity when I − Θ is singular.
CMat scattering_to_z(const CMat& theta, double z0);

/// Z-block normalised to its channel counterpart, Z / (2·Z0).
CMat normalize_z_to_channel(const CMat& z_block, double z0);

}  // namespace ris
