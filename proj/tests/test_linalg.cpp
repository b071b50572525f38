// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ris/error.hpp"
#include "ris/linalg.hpp"

using namespace ris;

TEST_CASE("spectral norm of a rank-one matrix is ||a||^2 ||b||^2") {
  std::mt19937_64 rng(3);
  const CMat a = oracle::random_cn(5, 1, rng);
  const CMat b = oracle::random_cn(3, 1, rng);
  const CMat m = 1.5 * a * b.transpose();
  CHECK(spectral_norm_sq(m) == doctest::Approx(2.25 * a.squaredNorm() * b.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("spectral norm of the identity is one") {
  CHECK(spectral_norm_sq(CMat::Identity(6, 6)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spectral norm and dominant pair agree with the SVD oracle") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const int rows = 1 + static_cast<int>(rng() % 9);
    const int cols = 1 + static_cast<int>(rng() % 9);
    const CMat m = oracle::random_cn(rows, cols, rng);
    const double ref = oracle::svd_norm_sq(m);
    CHECK(std::abs(spectral_norm_sq(m) - ref) / ref < 1e-10);

    const auto sp = dominant_singular_pair(m);
    CHECK(std::abs(sp.sigma * sp.sigma - ref) / ref < 1e-8);
    CHECK((m * sp.right - sp.sigma * sp.left).norm() < 1e-6 * sp.sigma);
    CHECK(sp.left.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sp.right.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("dominant pair is deterministic and phase-normalised") {
  std::mt19937_64 rng(5);
  const CMat m = oracle::random_cn(4, 6, rng);
  const auto p = dominant_singular_pair(m);
  const auto q = dominant_singular_pair(m);
  CHECK(p.right == q.right);
  Eigen::Index k = 0;
  p.right.cwiseAbs().maxCoeff(&k);
  CHECK(std::abs(p.right(k).imag()) < 1e-14);
  CHECK(p.right(k).real() > 0.0);
}

TEST_CASE("checked inverse rejects singular matrices") {
  CMat m = CMat::Ones(3, 3);
  CHECK(oracle::throws_kind([&] { (void)checked_inverse(m, "ones"); }, ErrorKind::kSingularMatrix));
  std::mt19937_64 rng(1);
  const CMat r = oracle::random_cn(4, 4, rng);
  CHECK(rel_frobenius_error(checked_inverse(r, "r"), oracle::dense_inverse(r)) < 1e-12);
}

TEST_CASE("unitary completion keeps the requested first column") {
  std::mt19937_64 rng(9);
  for (int n : {1, 2, 5, 8}) {
    CVec x = oracle::random_cn(n, 1, rng);
    x.normalize();
    const CMat q = unitary_with_first_column(x);
    CHECK((q.col(0) - x).norm() == 0.0);
    CHECK((q.adjoint() * q - CMat::Identity(n, n)).norm() < 1e-12);
  }
}
