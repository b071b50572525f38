// SPDX-License-Identifier: Apache-2.0
//
// Reference computations used only by tests. Each one avoids the library code
// path it is checking: full-pivot LU instead of the block recursion, Jacobi
// SVD instead of power iteration, exhaustive grids instead of alternating optimisation.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ris/error.hpp"
#include "ris/linalg.hpp"

namespace oracle {

using ris::CMat;
using ris::cdouble;

// Checks that `fn` throws ris::Error of the given kind.
template <typename Fn>
bool throws_kind(Fn&& fn, ris::ErrorKind kind) {
  try {
    fn();
  } catch (const ris::Error& e) {
    return e.kind() == kind;
  }
  return false;
}

inline CMat random_cn(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = {g(rng), g(rng)};
  return m;
}

inline CMat dense_inverse(const CMat& m) { return m.fullPivLu().inverse(); }

inline double svd_norm_sq(const CMat& m) {
  const double s = Eigen::JacobiSVD<CMat>(m).singularValues()(0);
  return s * s;
}

inline Eigen::VectorXd singular_values(const CMat& m) { return Eigen::JacobiSVD<CMat>(m).singularValues(); }

// Squared spectral norm of a 2x2 matrix from its Frobenius norm and determinant.
inline double norm_sq_2x2(cdouble a, cdouble b, cdouble c, cdouble d) {
  const double f = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  const double det = std::norm(a * d - b * c);
  return 0.5 * (f + std::sqrt(std::max(f * f - 4.0 * det, 0.0)));
}

// Exhaustive optimum of ‖H_RI(Θ2 − I)H_21(Θ1 − I)H_IT‖² over `levels` phases
// per element, for n_t = n_r = N_I = 2 and two RISs.
inline double grid_optimum_physics_2x2(const CMat& h_it, const CMat& h_21, const CMat& h_ri, int levels) {
  std::vector<cdouble> shifted(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k)
    shifted[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / levels) - 1.0;
  double best = 0.0;
  for (cdouble p0 : shifted)
    for (cdouble p1 : shifted) {
      // M = H_21 (Θ1 − I) H_IT
      Eigen::Matrix2cd d1 = Eigen::Matrix2cd::Zero();
      d1(0, 0) = p0;
      d1(1, 1) = p1;
      const Eigen::Matrix2cd m = h_21 * d1 * h_it;
      for (cdouble q0 : shifted) {
        // Rows of (Θ2 − I)M scale independently.
        const cdouble r00 = q0 * m(0, 0);
        const cdouble r01 = q0 * m(0, 1);
        for (cdouble q1 : shifted) {
          const cdouble r10 = q1 * m(1, 0);
          const cdouble r11 = q1 * m(1, 1);
          const cdouble a = h_ri(0, 0) * r00 + h_ri(0, 1) * r10;
          const cdouble b = h_ri(0, 0) * r01 + h_ri(0, 1) * r11;
          const cdouble c = h_ri(1, 0) * r00 + h_ri(1, 1) * r10;
          const cdouble d = h_ri(1, 0) * r01 + h_ri(1, 1) * r11;
          best = std::max(best, norm_sq_2x2(a, b, c, d));
        }
      }
    }
  return best;
}

// Closed-form LoS relative difference and normalised gain, in long double.
inline double eta_los(int n_i, int l) {
  const long double n = n_i;
  const long double base = n + std::sqrt(std::numbers::pi_v<long double> * n) + 1.0L;
  return static_cast<double>((std::pow(base, l) - std::pow(n, l)) / std::pow(n, l));
}

inline double rho_los(int n_i, int l) {
  const long double n = n_i;
  const long double base = n + std::sqrt(std::numbers::pi_v<long double> * n) + 1.0L;
  return static_cast<double>(std::pow((n + 1.0L) / base, l));
}

inline double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

}  // namespace oracle
