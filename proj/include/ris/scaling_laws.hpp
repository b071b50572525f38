// SPDX-License-Identifier: Apache-2.0
//
// Closed-form LoS gain scaling laws, Monte Carlo discrepancy metrics between
// the physics-compliant and widely used models, and the structural-scattering
// strength of an inter-RIS link.
#pragma once

#include <span>

#include "ris/linalg.hpp"

namespace ris {

struct ScalingInputs {
  int n_i = 1;
  int l = 1;
  int n_t = 2;
  int n_r = 2;
  double path_gain = 1.0;
};

struct GainMetrics {
  double eta = 0.0;  // relative difference of mean gains
  double rho = 1.0;  // normalised gain of the cross-evaluated solution
  double s = 1.0;    // structural scattering strength
};

/// Λ²(N_I² + √(πN_I)·N_I + N_I)^L·N_R·N_T, the mean optimised physics gain.
double expected_gain_physics_los(const ScalingInputs& in);

/// Λ²·N_I^{2L}·N_R·N_T, exact for every realisation.
double gain_widely_los(const ScalingInputs& in);

/// Λ²(N_I² + N_I)^L·N_R·N_T: widely-used phases evaluated in the physics model.
double expected_gain_suboptimal_los(const ScalingInputs& in);

/// ((N_I + √(πN_I) + 1)^L − N_I^L) / N_I^L.
double relative_difference_los(int n_i, int l);

/// ((N_I + 1) / (N_I + √(πN_I) + 1))^L.
double normalized_gain_los(int n_i, int l);

/// (mean(physics) − mean(widely)) / mean(widely).
double mc_relative_difference(std::span<const double> physics_gains, std::span<const double> widely_gains);

/// mean(suboptimal) / mean(optimal).
double mc_normalized_gain(std::span<const double> suboptimal_gains, std::span<const double> optimal_gains);

/// s = (1 + Σ_{n≥2} λ̄_n / λ̄_1) / N_I² for nonincreasing mean squared singular
/// values λ̄ (length N_I).
double structural_scattering_strength(std::span<const double> mean_sq_singular_values);

/// Mean squared singular values of `draws` equally-sized matrices, sorted
/// nonincreasing.
Eigen::VectorXd mean_sq_singular_values(std::span<const CMat> draws);

}  // namespace ris
