// SPDX-License-Identifier: Apache-2.0
//
// Channel-gain maximisation over RIS scattering matrices: closed-form
// solutions for rank-one LoS cascades, alternating optimisation for general
// multipath cascades, and spectral-norm upper bounds for both models.
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ris/linalg.hpp"
#include "ris/scattering.hpp"

namespace ris {

enum class ChannelModel { kPhysics, kWidelyUsed };

std::string_view to_string(ChannelModel model);

enum class InitPolicy { kIdentity, kRandomPhase };

struct OptimizerConfig {
  int max_outer_iters = 100;
  int max_inner_iters = 50;
  double rel_tol = 1e-6;
  InitPolicy init = InitPolicy::kRandomPhase;
  std::uint64_t init_seed = 0;
  Architecture architecture = Architecture::kDiagonal;
  ChannelModel model = ChannelModel::kPhysics;

  void validate() const;
};

struct OptimizationResult {
  ScatteringStack stack;
  double initial_gain = 0.0;
  std::vector<double> gain_trace;  // ‖H‖² after each outer sweep
  bool converged = false;
  int iterations = 0;

  double gain() const { return gain_trace.empty() ? initial_gain : gain_trace.back(); }
};

/// Scalar surrogate |g_rt + g_ri·Θ·g_it|² of one RIS update, built from unit
/// auxiliary vectors u (receive side) and v (transmit side).
struct InnerProblemData {
  cdouble g_rt{0.0, 0.0};
  RowCVec g_ri;
  CVec g_it;
  CVec u;
  CVec v;

  /// Surrogate for ‖A(Θ − o·I)B‖² with o = 1 (physics) or 0 (widely used).
  static InnerProblemData from_equivalent(const CMat& a, const CMat& b, const CVec& u, const CVec& v,
                                          ChannelModel model);
};

/// |g_rt + g_ri·Θ·g_it|².
double inner_objective(const InnerProblemData& data, const CMat& theta);

/// Phase alignment θ_n = arg g_rt − arg g_ri,n − arg g_it,n (zero entries take
/// phase 0). Attains (|g_rt| + Σ|g_ri,n||g_it,n|)².
CMat inner_solve_diagonal(const InnerProblemData& data);

/// Unitary Θ mapping g_it/‖g_it‖ onto e^{j·arg g_rt}·g_riᴴ/‖g_ri‖, completed to
/// a full unitary. Attains (|g_rt| + ‖g_ri‖‖g_it‖)². Throws ZeroVector.
CMat inner_solve_unitary(const InnerProblemData& data);

/// Squared spectral norm.
double channel_gain(const CMat& h);

/// Global optimum of the physics model on a rank-one LoS cascade: every RIS
/// aligns bᵀΘa against bᵀa so |K_ℓ| = |bᵀa| + Σ|b_n a_n|. Throws NotRankOne.
ScatteringStack los_optimal_phases_physics(const CascadeChannels& ch);

/// Global optimum of the widely used model on a rank-one LoS cascade.
ScatteringStack los_optimal_phases_widely(const CascadeChannels& ch);

/// Alternating optimisation over RISs 0 .. l−1, each update solved through the
/// (u, v) surrogate until the per-RIS objective settles.
OptimizationResult alg1_optimize(const CascadeChannels& ch, const OptimizerConfig& cfg);

inline constexpr int kDefaultMaxBoundCascade = 16;

/// Triangle-inequality bound over the 2^L expansion terms of the physics
/// model, each term bounded by products of spectral norms of the contiguous
/// channel runs between selected RISs. Throws CascadeTooLong past `max_l`.
double upper_bound_physics(const CascadeChannels& ch, int max_l = kDefaultMaxBoundCascade);

/// ‖H_RI,L‖² ∏‖H_{ℓ+1,ℓ}‖² ‖H_IT,1‖².
double upper_bound_widely(const CascadeChannels& ch);

/// Gain of `stack` evaluated under `model`.
double model_gain(const CascadeChannels& ch, const ScatteringStack& stack, ChannelModel model);

}  // namespace ris
