// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ris/channel_gen.hpp"
#include "ris/error.hpp"
#include "ris/multiport.hpp"
#include "ris/scattering.hpp"

using namespace ris;

namespace {

CMat scalar(cdouble v) { return CMat::Constant(1, 1, v); }

}  // namespace

TEST_CASE("single-block inverse") {
  const auto inv = block_subdiagonal_inverse({scalar(2.0)}, {});
  CHECK(inv.at(0, 0)(0, 0) == cdouble(0.5));
}

TEST_CASE("two scalar blocks match the hand inverse of [[2,0],[1,4]]") {
  const auto inv = block_subdiagonal_inverse({scalar(2.0), scalar(4.0)}, {scalar(1.0)});
  CHECK(std::abs(inv.at(0, 0)(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(inv.at(1, 1)(0, 0) - 0.25) < 1e-15);
  CHECK(std::abs(inv.at(1, 0)(0, 0) + 0.125) < 1e-15);
  CHECK(inv.at(0, 1)(0, 0) == cdouble(0.0));
}

TEST_CASE("block inverse matches a dense full-pivot inverse") {
  std::mt19937_64 rng(21);
  const int l = 5;
  const int n = 4;
  std::vector<CMat> d;
  std::vector<CMat> s;
  for (int k = 0; k < l; ++k) d.push_back(oracle::random_cn(n, n, rng) + 2.0 * CMat::Identity(n, n));
  for (int k = 0; k + 1 < l; ++k) s.push_back(oracle::random_cn(n, n, rng));
  CMat dense = CMat::Zero(l * n, l * n);
  for (int k = 0; k < l; ++k) dense.block(k * n, k * n, n, n) = d[k];
  for (int k = 0; k + 1 < l; ++k) dense.block((k + 1) * n, k * n, n, n) = s[k];
  CHECK(rel_frobenius_error(block_subdiagonal_inverse(d, s).assemble(), oracle::dense_inverse(dense)) < 1e-10);
}

TEST_CASE("singular diagonal block is reported") {
  CHECK(oracle::throws_kind([] { (void)block_subdiagonal_inverse({scalar(1.0), scalar(0.0)}, {scalar(1.0)}); },
                            ErrorKind::kSingularDiagonalBlock));
}

TEST_CASE("dimensions and assumption flags are validated") {
  CHECK(Dimensions{2, 3, 4, 5}.total_ports() == 25);
  CHECK(oracle::throws_kind([] { Dimensions{0, 1, 1, 1}.validate(); }, ErrorKind::kDimensionMismatch));
  const Dimensions dims{1, 1, 2, 2};
  CMat z = CMat::Identity(dims.total_ports(), dims.total_ports()) * 50.0;
  z(0, dims.total_ports() - 1) = 1.0;  // Z_TR != 0
  CHECK(oracle::throws_kind([&] { MultiportNetwork(dims, 50.0, z, AssumptionFlags::through_cascade()); },
                            ErrorKind::kAssumptionViolated));
  CHECK_NOTHROW(MultiportNetwork(dims, 50.0, z, AssumptionFlags{}));
}

TEST_CASE("direct link only: Z_RT = 2 Z0 J gives H = J") {
  // Z0 (2 Z0)^-1 (2 Z0 J) Z0^-1 = J
  const Dimensions dims{2, 2, 1, 1};
  const double z0 = 50.0;
  CMat z = CMat::Zero(dims.total_ports(), dims.total_ports());
  z.topLeftCorner(2, 2) = z0 * CMat::Identity(2, 2);
  z.bottomRightCorner(2, 2) = z0 * CMat::Identity(2, 2);
  z(2, 2) = z0;
  z.bottomLeftCorner(2, 2) = 2.0 * z0 * CMat::Ones(2, 2);
  const MultiportNetwork net(dims, z0, z, AssumptionFlags::through_matched());
  RisLoadStack loads{{CMat::Constant(1, 1, cdouble(0.0, 30.0))}};
  CHECK(rel_frobenius_error(channel_z_general(net, loads), CMat::Ones(2, 2)) < 1e-15);
}

TEST_CASE("general, cascade and matched forms agree") {
  const RandomStream root(77);
  for (int t = 0; t < 50; ++t) {
    const auto s = root.child(static_cast<std::uint64_t>(t));
    const Dimensions dims{2, 3, 3, 1 + t % 4};
    const auto loads = random_reactive_loads(dims, 50.0, s.child("loads"));
    const auto cascade_net = synthesize_network(dims, 50.0, AssumptionFlags::through_cascade(), s.child("c"));
    CHECK(rel_frobenius_error(channel_z_cascade(cascade_net, loads), channel_z_general(cascade_net, loads)) < 1e-12);
    const auto matched_net = synthesize_network(dims, 50.0, AssumptionFlags::through_matched(), s.child("m"));
    CHECK(rel_frobenius_error(channel_z_matched(matched_net, loads), channel_z_cascade(matched_net, loads)) < 1e-12);
    const auto pure_net = synthesize_network(dims, 50.0, AssumptionFlags::all(), s.child("p"));
    CHECK(rel_frobenius_error(channel_z_pure_cascade(pure_net, loads), channel_z_cascade(pure_net, loads)) < 1e-12);
  }
}

TEST_CASE("two-RIS cascade equals its hand-expanded four terms") {
  const Dimensions dims{2, 2, 3, 2};
  const double z0 = 50.0;
  const RandomStream s(8);
  const auto net = synthesize_network(dims, z0, AssumptionFlags::through_matched(), s.child("n"));
  const auto loads = random_lossy_loads(dims, z0, s.child("l"));
  const CMat eye = CMat::Identity(3, 3);
  const CMat y1 = oracle::dense_inverse(loads.loads[0] + z0 * eye);
  const CMat y2 = oracle::dense_inverse(loads.loads[1] + z0 * eye);
  const CMat expected = (net.z_rt() - net.z_ri_block(0) * y1 * net.z_it_block(0) -
                         net.z_ri_block(1) * y2 * net.z_it_block(1) +
                         net.z_ri_block(1) * y2 * net.z_inter(1, 0) * y1 * net.z_it_block(0)) /
                        (2.0 * z0);
  CHECK(rel_frobenius_error(channel_z_cascade(net, loads), expected) < 1e-12);
}

TEST_CASE("single RIS pure cascade and scalar toy instance") {
  // SISO, one element: Z_RI = 10, Z_IT = 20, Z_I = 30, Z0 = 50.
  const Dimensions dims{1, 1, 1, 1};
  CMat z = CMat::Zero(3, 3);
  z(0, 0) = z(1, 1) = z(2, 2) = 50.0;
  z(1, 0) = 20.0;
  z(2, 1) = 10.0;
  const MultiportNetwork net(dims, 50.0, z, AssumptionFlags::all());
  RisLoadStack loads{{scalar(30.0)}};
  // −(1/100)·10·(1/80)·20 = −0.025
  CHECK(std::abs(channel_z_pure_cascade(net, loads)(0, 0) + 0.025) < 1e-15);
  CHECK(std::abs(channel_z_general(net, loads)(0, 0) + 0.025) < 1e-15);
}

TEST_CASE("Z to S conversions") {
  const double z0 = 50.0;
  CHECK(z_to_scattering(z0 * CMat::Identity(3, 3), z0).norm() == 0.0);
  const CMat reactive = cdouble(0.0, 20.0) * CMat::Identity(4, 4);
  const CMat theta = z_to_scattering(reactive, z0);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(std::abs(theta(n, n)) - 1.0) < 1e-14);
  CHECK(rel_frobenius_error(scattering_to_z(CMat::Zero(2, 2), z0), z0 * CMat::Identity(2, 2)) < 1e-15);
  CHECK(scattering_to_z(-CMat::Identity(2, 2), z0).norm() < 1e-13);
  const CMat quarter = cdouble(0.0, 1.0) * CMat::Identity(2, 2);
  CHECK(rel_frobenius_error(z_to_scattering(scattering_to_z(quarter, z0), z0), quarter) < 1e-14);
  CHECK(oracle::throws_kind([&] { (void)scattering_to_z(CMat::Identity(2, 2), z0); },
                            ErrorKind::kOpenCircuitSingularity));

  const RandomStream root(4);
  for (int t = 0; t < 30; ++t) {
    const auto loads = random_reactive_loads({1, 1, 6, 1}, z0, root.child(static_cast<std::uint64_t>(t)));
    CHECK(loads.is_lossless());
    const CMat& zl = loads.loads[0];
    CHECK(rel_frobenius_error(scattering_to_z(z_to_scattering(zl, z0), z0), zl) < 1e-12);
  }
}

TEST_CASE("normalisation to channel blocks") {
  CHECK(normalize_z_to_channel(scalar(100.0), 50.0)(0, 0) == cdouble(1.0));
  CHECK(normalize_z_to_channel(CMat::Zero(2, 3), 50.0).norm() == 0.0);
  std::mt19937_64 rng(2);
  const CMat m = oracle::random_cn(3, 3, rng);
  CHECK(rel_frobenius_error(normalize_z_to_channel(m, 100.0), 0.5 * normalize_z_to_channel(m, 50.0)) < 1e-15);
}

TEST_CASE("matched loads give the zero-reflection path") {
  // Z_I = Z0·I means Θ = 0, so H = H_RT − H_RI·H_IT in the single-RIS case.
  const Dimensions dims{2, 2, 3, 1};
  const double z0 = 50.0;
  const auto net = synthesize_network(dims, z0, AssumptionFlags::through_matched(), RandomStream(12));
  RisLoadStack loads{{z0 * CMat::Identity(3, 3)}};
  const auto ch = cascade_from_network(net);
  const CMat expected = ch.side->h_rt - ch.h_ri_l * ch.h_it_1;
  CHECK(rel_frobenius_error(channel_z_matched(net, loads), expected) < 1e-12);
}
