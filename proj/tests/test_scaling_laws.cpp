// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "ris/channel_gen.hpp"
#include "ris/error.hpp"
#include "ris/optimizer.hpp"
#include "ris/scaling_laws.hpp"

using namespace ris;

TEST_CASE("closed-form gains") {
  const double sp = std::sqrt(std::numbers::pi);
  CHECK(expected_gain_physics_los({1, 2, 2, 2, 1.0}) == doctest::Approx(std::pow(2.0 + sp, 2) * 4.0).epsilon(1e-14));
  CHECK(expected_gain_physics_los({1, 2, 2, 2, 0.0}) == 0.0);
  CHECK(gain_widely_los({16, 2, 2, 2, 1.0}) == doctest::Approx(262144.0).epsilon(1e-15));
  CHECK(gain_widely_los({1, 1, 1, 1, 0.3}) == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(expected_gain_suboptimal_los({16, 4, 2, 2, 1.0}) == doctest::Approx(std::pow(272.0, 4) * 4.0).epsilon(1e-14));
  const double v2 = expected_gain_suboptimal_los({16, 2, 2, 2, 1.0});
  const double v4 = expected_gain_suboptimal_los({16, 4, 2, 2, 1.0});
  CHECK(v2 * v2 / 4.0 == doctest::Approx(v4).epsilon(1e-14));
}

TEST_CASE("relative difference and normalised gain") {
  CHECK(relative_difference_los(16, 4) == doctest::Approx(oracle::eta_los(16, 4)).epsilon(1e-13));
  CHECK(relative_difference_los(128, 4) == doctest::Approx(oracle::eta_los(128, 4)).epsilon(1e-13));
  CHECK(std::abs(relative_difference_los(16, 4) - 4.139) < 5e-3);
  CHECK(std::abs(relative_difference_los(128, 4) - 0.839) < 5e-3);
  CHECK(std::abs(normalized_gain_los(16, 4) - 0.248) < 5e-4);
  CHECK(std::abs(normalized_gain_los(128, 4) - 0.561) < 5e-4);
  CHECK(normalized_gain_los(16, 0) == 1.0);
  for (int l = 1; l <= 5; ++l)
    for (int n : {4, 8, 16, 32, 64, 128, 256}) {
      CHECK(relative_difference_los(2 * n, l) < relative_difference_los(n, l));
      CHECK(relative_difference_los(n, l + 1) > relative_difference_los(n, l));
      const ScalingInputs in{n, l, 2, 2, 1.0};
      CHECK(expected_gain_suboptimal_los(in) / expected_gain_physics_los(in) ==
            doctest::Approx(normalized_gain_los(n, l)).epsilon(1e-12));
    }
  const double n = 1e6;
  CHECK(relative_difference_los(1000000, 2) == doctest::Approx(2.0 * std::sqrt(std::numbers::pi / n)).epsilon(1e-2));
}

TEST_CASE("overflowing closed forms are rejected") {
  CHECK(oracle::throws_kind([] { (void)gain_widely_los({1 << 20, 30, 2, 2, 1.0}); }, ErrorKind::kRangeExceeded));
}

TEST_CASE("Monte Carlo metrics") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{2.0, 4.0, 6.0};
  CHECK(mc_relative_difference(a, a) == 0.0);
  CHECK(mc_relative_difference(b, a) == doctest::Approx(1.0));
  CHECK(mc_normalized_gain(a, a) == 1.0);
  CHECK(oracle::throws_kind([] { (void)mc_normalized_gain(std::vector<double>{}, std::vector<double>{}); },
                            ErrorKind::kEmptySample));
  CHECK(oracle::throws_kind([] { (void)mc_relative_difference(std::vector<double>{1.0}, std::vector<double>{0.0}); },
                            ErrorKind::kDegenerateDenominator));
}

TEST_CASE("Monte Carlo LoS estimates track the closed forms") {
  const int trials = 10000;
  const RandomStream root(1);

  std::vector<double> phys;
  std::vector<double> wide;
  for (int t = 0; t < trials; ++t) {
    const auto ch = gen_cascade({2, 2, 64, 2}, {FadingSpec::los()}, root.child(static_cast<std::uint64_t>(t)));
    phys.push_back(model_gain(ch, los_optimal_phases_physics(ch), ChannelModel::kPhysics));
    wide.push_back(model_gain(ch, los_optimal_phases_widely(ch), ChannelModel::kWidelyUsed));
  }
  const double closed = expected_gain_physics_los({64, 2, 2, 2, 1.0});
  CHECK(std::abs(oracle::mean(phys) - closed) / closed < 0.03);
  CHECK(std::abs(mc_relative_difference(phys, wide) - relative_difference_los(64, 2)) /
            relative_difference_los(64, 2) < 0.05);

  std::vector<double> sub;
  for (int t = 0; t < trials; ++t) {
    const auto ch = gen_cascade({2, 2, 32, 2}, {FadingSpec::los()}, root.child("sub").child(static_cast<std::uint64_t>(t)));
    sub.push_back(model_gain(ch, los_optimal_phases_widely(ch), ChannelModel::kPhysics));
  }
  const double sub_closed = expected_gain_suboptimal_los({32, 2, 2, 2, 1.0});
  CHECK(std::abs(oracle::mean(sub) - sub_closed) / sub_closed < 0.03);

  std::vector<double> opt16;
  std::vector<double> sub16;
  for (int t = 0; t < 2000; ++t) {
    const auto ch = gen_cascade({2, 2, 16, 4}, {FadingSpec::los()}, root.child("rho").child(static_cast<std::uint64_t>(t)));
    opt16.push_back(model_gain(ch, los_optimal_phases_physics(ch), ChannelModel::kPhysics));
    sub16.push_back(model_gain(ch, los_optimal_phases_widely(ch), ChannelModel::kPhysics));
  }
  CHECK(std::abs(mc_normalized_gain(sub16, opt16) - 0.248) / 0.248 < 0.05);
}

TEST_CASE("structural scattering strength") {
  const int n = 16;
  std::vector<double> rank1(n, 0.0);
  rank1[0] = 3.0;
  CHECK(structural_scattering_strength(rank1) == doctest::Approx(1.0 / (n * n)).epsilon(1e-15));
  const std::vector<double> flat(n, 2.0);
  CHECK(structural_scattering_strength(flat) == doctest::Approx(1.0 / n).epsilon(1e-15));
  CHECK(oracle::throws_kind([] { (void)structural_scattering_strength(std::vector<double>{}); },
                            ErrorKind::kEmptySequence));

  const int n_i = 32;
  const RandomStream root(2);
  std::vector<CMat> draws;
  for (int t = 0; t < 10000; ++t) draws.push_back(gen_rayleigh_link(n_i, n_i, 1.0, root.child(static_cast<std::uint64_t>(t))));
  const auto lambda = mean_sq_singular_values(draws);
  const double s = structural_scattering_strength(std::vector<double>(lambda.data(), lambda.data() + n_i));
  CHECK(s > 1.0 / (n_i * n_i));
  CHECK(s < 1.0 / n_i);
}

TEST_CASE("structural strength does not increase with the Rician factor") {
  const int n_i = 16;
  double previous = 1.0;
  for (double k : {0.0, 1.0, 3.0, 10.0, 30.0}) {
    const RandomStream root(3);
    std::vector<CMat> draws;
    for (int t = 0; t < 2000; ++t)
      draws.push_back(gen_rician_link(n_i, n_i, FadingSpec::rician(k), root.child(static_cast<std::uint64_t>(t))));
    const auto lambda = mean_sq_singular_values(draws);
    const double s = structural_scattering_strength(std::vector<double>(lambda.data(), lambda.data() + n_i));
    CHECK(s <= previous);
    previous = s;
  }
}
