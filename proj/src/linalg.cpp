// SPDX-License-Identifier: Apache-2.0
#include "ris/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ris/error.hpp"

namespace ris {

double rel_frobenius_error(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "rel_frobenius_error operands differ in shape");
  }
  const double denom = std::max(b.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / denom;
}

namespace {

Eigen::PartialPivLU<CMat> guarded_lu(const CMat& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + " is not square");
  }
  Eigen::PartialPivLU<CMat> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxConditionNumber >= 1.0)) {
    throw Error(ErrorKind::kSingularMatrix,
                std::string(what) + " is singular or ill-conditioned (rcond " + std::to_string(rcond) + ")");
  }
  return lu;
}

// Index of the largest-magnitude entry.
Eigen::Index argmax_abs(const CVec& x) {
  Eigen::Index idx = 0;
  x.cwiseAbs().maxCoeff(&idx);
  return idx;
}

CVec deterministic_start(Eigen::Index n) {
  CVec v = CVec::Zero(n);
  v(0) = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = static_cast<double>(k + 1);
    v(k) += 1e-2 * std::polar(1.0 / t, 0.7 * t);
  }
  return v.normalized();
}

}  // namespace

CMat checked_inverse(const CMat& m, std::string_view what) {
  return guarded_lu(m, what).inverse();
}

CMat checked_solve(const CMat& m, const CMat& rhs, std::string_view what) {
  if (m.rows() != rhs.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + " solve: rhs row count differs");
  }
  return guarded_lu(m, what).solve(rhs);
}

SingularPair dominant_singular_pair(const CMat& h, double rel_tol, int max_iters) {
  const bool iterate_right = h.cols() <= h.rows();
  const CMat gram = iterate_right ? CMat(h.adjoint() * h) : CMat(h * h.adjoint());
  const Eigen::Index n = gram.rows();

  SingularPair out;
  if (h.size() == 0 || gram.norm() == 0.0) {
    out.left = CVec::Unit(h.rows(), 0);
    out.right = CVec::Unit(h.cols(), 0);
    return out;
  }

  CVec x = deterministic_start(n);
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    CVec y = gram * x;
    const double ny = y.norm();
    if (ny == 0.0) {
      // Start vector was orthogonal to the range; restart from a dense vector.
      x = CVec::Constant(n, cdouble(1.0, 0.0)).normalized();
      continue;
    }
    lambda = x.dot(y).real();
    const double residual = (y - lambda * x).norm();
    x = y / ny;
    if (residual <= rel_tol * std::abs(lambda)) {
      lambda = x.dot(gram * x).real();
      break;
    }
  }

  out.sigma = std::sqrt(std::max(lambda, 0.0));
  if (iterate_right) {
    out.right = x;
    out.left = (h * x) / out.sigma;
  } else {
    out.left = x;
    out.right = (h.adjoint() * x) / out.sigma;
  }
  out.left.normalize();
  out.right.normalize();

  // Fix the phase ambiguity: largest entry of v real positive.
  const cdouble pivot = out.right(argmax_abs(out.right));
  const cdouble phase = std::conj(pivot) / std::abs(pivot);
  out.right *= phase;
  out.left *= phase;
  return out;
}

double spectral_norm_sq(const CMat& h) {
  if (h.size() == 0) return 0.0;
  const CMat gram = h.cols() <= h.rows() ? CMat(h.adjoint() * h) : CMat(h * h.adjoint());
  if (gram.rows() == 1) return gram(0, 0).real();
  Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
  return std::max(es.eigenvalues().maxCoeff(), 0.0);
}

CMat unitary_with_first_column(const CVec& x) {
  const Eigen::Index n = x.size();
  const CMat column = x;
  Eigen::HouseholderQR<CMat> qr(column);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  // q.col(0) equals x up to a unit-modulus factor; the remaining columns span
  // the orthogonal complement, so overwriting the first column keeps q unitary.
  q.col(0) = x;
  return q;
}

}  // namespace ris
