// SPDX-License-Identifier: Apache-2.0
//
// Scattering-parameter (S) channel models assembled from normalised channel
// blocks H = Z / (2·Z0) and RIS scattering matrices Θ_ℓ.
#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ris/linalg.hpp"
#include "ris/multiport.hpp"

namespace ris {

/// Links that skip part of the cascade; present only for the full model.
struct SideLinks {
  CMat h_rt;               // n_r × n_t direct link
  std::vector<CMat> h_ri;  // RIS ℓ → receiver, for ℓ = 0 .. l−2
  std::vector<CMat> h_it;  // transmitter → RIS ℓ, for ℓ = 1 .. l−1 (h_it[0] is RIS 1)
};

struct CascadeChannels {
  CMat h_it_1;             // transmitter → RIS 0
  std::vector<CMat> inter; // inter[ℓ]: RIS ℓ → RIS ℓ+1, ℓ = 0 .. l−2
  CMat h_ri_l;             // RIS l−1 → receiver
  std::optional<SideLinks> side;

  int l() const { return static_cast<int>(inter.size()) + 1; }
  int n_t() const { return static_cast<int>(h_it_1.cols()); }
  int n_r() const { return static_cast<int>(h_ri_l.rows()); }
  bool full_model() const { return side.has_value(); }

  /// Element count of RIS `l` as implied by the chain.
  int ris_size(int l) const;

  /// RIS ℓ → receiver, falling back to the cascade tail for ℓ = l−1.
  const CMat& h_ri(int l) const;
  /// Transmitter → RIS ℓ, falling back to the cascade head for ℓ = 0.
  const CMat& h_it(int l) const;

  /// Chain dimensions agree and the side set (if any) has the right shape.
  void validate() const;
};

enum class Architecture { kDiagonal, kUnitary };

std::string_view to_string(Architecture arch);
Architecture architecture_from_string(std::string_view name);

struct ScatteringStack {
  Architecture architecture = Architecture::kDiagonal;
  std::vector<CMat> thetas;

  int l() const { return static_cast<int>(thetas.size()); }

  /// Diagonal stack with Θ_ℓ = diag(e^{jθ_{ℓ,n}}).
  static ScatteringStack from_phases(const std::vector<std::vector<double>>& phases);
  static ScatteringStack identity(int l, int n_i, Architecture arch = Architecture::kDiagonal);

  /// Throws AssumptionViolated if an entry breaks its architecture constraint
  /// (unit-modulus diagonal within 1e-12, or ΘᴴΘ = I within 1e-10).
  void validate() const;
  bool satisfies_constraint() const;
};

/// One multi-sector RIS: `sectors` faces, signal arrives on sector `arrival`
/// and departs from sector `departure` (zero-based).
struct SectorConfig {
  int sectors = 1;
  int arrival = 0;
  int departure = 0;

  bool reflective() const { return arrival == departure; }
};

struct MultiSectorSpec {
  std::vector<SectorConfig> ris;

  /// Elements per sector of RIS `l` for a surface of `n_i` elements.
  int sector_size(int l, int n_i) const { return n_i / ris[static_cast<std::size_t>(l)].sectors; }
  void validate(int n_i) const;
};

/// H_RI,L(Θ_L − o_L I) ∏_{ℓ=L−1..1}(H_{ℓ+1,ℓ}(Θ_ℓ − o_ℓ I)) H_IT,1 with one
/// structural offset o_ℓ per RIS. The named models below are special cases.
CMat assemble_with_offsets(const CascadeChannels& ch, const ScatteringStack& stack, std::span<const double> offsets);

/// H = H_RI,L(Θ_L − I) ∏_{ℓ=L−1..1}(H_{ℓ+1,ℓ}(Θ_ℓ − I)) H_IT,1.
CMat assemble_physics_channel(const CascadeChannels& ch, const ScatteringStack& stack);

/// H′ = H_RI,L Θ_L ∏_{ℓ=L−1..1}(H_{ℓ+1,ℓ} Θ_ℓ) H_IT,1 (no structural scattering).
CMat assemble_widely_used(const CascadeChannels& ch, const ScatteringStack& stack);

/// Every additive path of the full multi-RIS model: the direct link first, then
/// for each RIS ℓ the single-bounce path followed by the multi-hop paths
/// entering at RIS k < ℓ. There are 1 + L(L+1)/2 of them.
std::vector<CMat> full_physics_path_terms(const CascadeChannels& ch, const ScatteringStack& stack);

/// Sum of full_physics_path_terms. Throws MissingSideLinks without a side set.
CMat assemble_full_physics(const CascadeChannels& ch, const ScatteringStack& stack);

/// Compact multi-sector model on reduced (arrival/departure sector) blocks:
/// each RIS contributes (Θ̄_ℓ − δ_ℓ I), δ_ℓ = 1 iff it is used in reflection.
CMat assemble_multisector(const CascadeChannels& reduced, const ScatteringStack& stack,
                          const MultiSectorSpec& spec);

/// Pure-cascade channel blocks of a network, normalised by 2·Z0. The side set
/// is filled in unless the network asserts the pure-cascade assumption.
CascadeChannels cascade_from_network(const MultiportNetwork& net);

/// Scattering matrices of the RIS loads, Θ_ℓ = (Z_{I,ℓ} + Z0 I)⁻¹(Z_{I,ℓ} − Z0 I).
ScatteringStack stack_from_loads(const RisLoadStack& loads, double z0, Architecture arch);

}  // namespace ris
