// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear-algebra helpers shared by every module.
#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace ris {

using cdouble = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RowCVec = Eigen::RowVectorXcd;

/// Matrices whose reciprocal condition estimate falls below this are rejected.
inline constexpr double kMaxConditionNumber = 1e12;

/// Relative Frobenius distance ‖a − b‖ / max(‖b‖, tiny). Dimensions must match.
double rel_frobenius_error(const CMat& a, const CMat& b);

/// Inverse via partial-pivot LU, guarded by the condition cap. `what` names the
/// factor in the error message.
CMat checked_inverse(const CMat& m, std::string_view what);

/// Solve m·x = rhs under the same guard as checked_inverse.
CMat checked_solve(const CMat& m, const CMat& rhs, std::string_view what);

struct SingularPair {
  double sigma = 0.0;
  CVec left;   // unit-norm u with H v = σ u
  CVec right;  // unit-norm v
};

/// Dominant singular triplet by power iteration on the smaller Gram matrix.
/// Start vector and phase normalisation are deterministic: the largest-magnitude
/// entry of `right` is real positive.
SingularPair dominant_singular_pair(const CMat& h, double rel_tol = 1e-10, int max_iters = 5000);

/// Squared spectral norm ‖h‖² (largest eigenvalue of the smaller Gram matrix).
double spectral_norm_sq(const CMat& h);

inline double spectral_norm(const CMat& h) { return std::sqrt(spectral_norm_sq(h)); }

/// Unitary Q (n×n) whose first column is exactly the unit vector x.
CMat unitary_with_first_column(const CVec& x);

}  // namespace ris
