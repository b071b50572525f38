// SPDX-License-Identifier: Apache-2.0
#include "ris/scaling_laws.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ris/error.hpp"

namespace ris {

namespace {

// base^l with an explicit overflow check.
double guarded_pow(double base, int l) {
  const double value = std::pow(base, l);
  if (!std::isfinite(value)) throw Error(ErrorKind::kRangeExceeded, "closed form overflows double precision");
  return value;
}

void check_counts(const ScalingInputs& in) {
  if (in.n_i < 1 || in.n_t < 1 || in.n_r < 1 || in.l < 0)
    throw Error(ErrorKind::kDimensionMismatch, "scaling inputs need positive counts");
  // (N_I²)^L must be representable.
  guarded_pow(static_cast<double>(in.n_i) * in.n_i, in.l);
}

double terminals(const ScalingInputs& in) {
  return in.path_gain * in.path_gain * static_cast<double>(in.n_r) * static_cast<double>(in.n_t);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorKind::kEmptySample, "sample set is empty");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

double expected_gain_physics_los(const ScalingInputs& in) {
  check_counts(in);
  const double n = in.n_i;
  return terminals(in) * guarded_pow(n * n + std::sqrt(std::numbers::pi * n) * n + n, in.l);
}

double gain_widely_los(const ScalingInputs& in) {
  check_counts(in);
  const double n = in.n_i;
  return terminals(in) * guarded_pow(n, 2 * in.l);
}

double expected_gain_suboptimal_los(const ScalingInputs& in) {
  check_counts(in);
  const double n = in.n_i;
  return terminals(in) * guarded_pow(n * n + n, in.l);
}

double relative_difference_los(int n_i, int l) {
  check_counts({n_i, l, 1, 1, 1.0});
  const double n = n_i;
  const double base = guarded_pow(n, l);
  return (guarded_pow(n + std::sqrt(std::numbers::pi * n) + 1.0, l) - base) / base;
}

double normalized_gain_los(int n_i, int l) {
  check_counts({n_i, l, 1, 1, 1.0});
  const double n = n_i;
  return std::pow((n + 1.0) / (n + std::sqrt(std::numbers::pi * n) + 1.0), l);
}

double mc_relative_difference(std::span<const double> physics_gains, std::span<const double> widely_gains) {
  const double p = mean(physics_gains);
  const double w = mean(widely_gains);
  if (!(w > 0.0)) throw Error(ErrorKind::kDegenerateDenominator, "mean widely-used gain must be positive");
  return (p - w) / w;
}

double mc_normalized_gain(std::span<const double> suboptimal_gains, std::span<const double> optimal_gains) {
  const double s = mean(suboptimal_gains);
  const double o = mean(optimal_gains);
  if (!(o > 0.0)) throw Error(ErrorKind::kDegenerateDenominator, "mean optimal gain must be positive");
  return s / o;
}

double structural_scattering_strength(std::span<const double> mean_sq_singular_values) {
  if (mean_sq_singular_values.empty()) throw Error(ErrorKind::kEmptySequence, "no singular values given");
  const double lead = mean_sq_singular_values.front();
  if (!(lead > 0.0)) throw Error(ErrorKind::kDegenerateDenominator, "leading singular value must be positive");
  const double n = static_cast<double>(mean_sq_singular_values.size());
  double ratio_sum = 1.0;
  for (std::size_t k = 1; k < mean_sq_singular_values.size(); ++k) ratio_sum += mean_sq_singular_values[k] / lead;
  return ratio_sum / (n * n);
}

Eigen::VectorXd mean_sq_singular_values(std::span<const CMat> draws) {
  if (draws.empty()) throw Error(ErrorKind::kEmptySample, "no matrices given");
  const Eigen::Index k = std::min(draws.front().rows(), draws.front().cols());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(k);
  for (const auto& m : draws) {
    if (m.rows() != draws.front().rows() || m.cols() != draws.front().cols())
      throw Error(ErrorKind::kDimensionMismatch, "draws differ in shape");
    const CMat gram = m.cols() <= m.rows() ? CMat(m.adjoint() * m) : CMat(m * m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
    // Ascending eigenvalues of the Gram matrix are σ² in reverse order.
    acc += es.eigenvalues().reverse().cwiseMax(0.0);
  }
  return acc / static_cast<double>(draws.size());
}

}  // namespace ris
