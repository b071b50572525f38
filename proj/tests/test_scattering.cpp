// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "ris/channel_gen.hpp"
#include "ris/error.hpp"
#include "ris/scattering.hpp"

using namespace ris;

namespace {

CascadeChannels siso_all_ones(int l) {
  CascadeChannels ch;
  ch.h_it_1 = CMat::Ones(1, 1);
  for (int k = 0; k + 1 < l; ++k) ch.inter.push_back(CMat::Ones(1, 1));
  ch.h_ri_l = CMat::Ones(1, 1);
  return ch;
}

}  // namespace

TEST_CASE("identity scattering nulls the physics channel") {
  const auto ch = gen_cascade({2, 3, 5, 3}, {FadingSpec::rayleigh()}, RandomStream(1));
  CHECK(assemble_physics_channel(ch, ScatteringStack::identity(3, 5)).cwiseAbs().maxCoeff() == 0.0);
  const CMat plain = ch.h_ri_l * ch.inter[1] * ch.inter[0] * ch.h_it_1;
  CHECK(rel_frobenius_error(assemble_widely_used(ch, ScatteringStack::identity(3, 5)), plain) < 1e-14);
}

TEST_CASE("scalar hand values at theta = pi") {
  const auto ch = siso_all_ones(2);
  const auto stack = ScatteringStack::from_phases({{std::numbers::pi}, {std::numbers::pi}});
  CHECK(std::abs(assemble_physics_channel(ch, stack)(0, 0) - 4.0) < 1e-14);
  CHECK(std::abs(assemble_widely_used(ch, stack)(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("physics minus widely used equals the structural terms at L = 2") {
  const auto ch = gen_cascade({2, 2, 4, 2}, {FadingSpec::rayleigh()}, RandomStream(3));
  const auto st = random_phase_stack(2, 4, RandomStream(4));
  const CMat& t1 = st.thetas[0];
  const CMat& t2 = st.thetas[1];
  const CMat& h21 = ch.inter[0];
  const CMat expected = -ch.h_ri_l * t2 * h21 * ch.h_it_1 - ch.h_ri_l * h21 * t1 * ch.h_it_1 +
                        ch.h_ri_l * h21 * ch.h_it_1;
  const CMat diff = assemble_physics_channel(ch, st) - assemble_widely_used(ch, st);
  CHECK(rel_frobenius_error(diff, expected) < 1e-12);
}

TEST_CASE("full model path terms") {
  const Dimensions dims{2, 2, 3, 4};
  const auto net = synthesize_network(dims, 50.0, AssumptionFlags::through_matched(), RandomStream(5));
  const auto ch = cascade_from_network(net);
  REQUIRE(ch.full_model());
  const auto st = random_phase_stack(4, 3, RandomStream(6));
  CHECK(full_physics_path_terms(ch, st).size() == 11);

  auto pure = ch;
  pure.side.reset();
  CHECK(oracle::throws_kind([&] { (void)assemble_full_physics(pure, st); }, ErrorKind::kMissingSideLinks));

  // Zero side links reduce the full model to the pure cascade.
  auto zeroed = ch;
  zeroed.side->h_rt.setZero();
  for (auto& m : zeroed.side->h_ri) m.setZero();
  for (auto& m : zeroed.side->h_it) m.setZero();
  CHECK(rel_frobenius_error(assemble_full_physics(zeroed, st), assemble_physics_channel(pure, st)) < 1e-13);
}

TEST_CASE("full model at L = 2 equals its four terms") {
  const Dimensions dims{2, 2, 3, 2};
  const auto ch = cascade_from_network(
      synthesize_network(dims, 50.0, AssumptionFlags::through_matched(), RandomStream(15)));
  const auto st = random_phase_stack(2, 3, RandomStream(16));
  const CMat eye = CMat::Identity(3, 3);
  const CMat d1 = st.thetas[0] - eye;
  const CMat d2 = st.thetas[1] - eye;
  const CMat expected = ch.side->h_rt + ch.side->h_ri[0] * d1 * ch.h_it_1 + ch.h_ri_l * d2 * ch.side->h_it[0] +
                        ch.h_ri_l * d2 * ch.inter[0] * d1 * ch.h_it_1;
  CHECK(rel_frobenius_error(assemble_full_physics(ch, st), expected) < 1e-13);
}

TEST_CASE("multi-sector reductions") {
  const auto ch = gen_cascade({2, 2, 4, 2}, {FadingSpec::rayleigh()}, RandomStream(7));
  const auto st = random_phase_stack(2, 4, RandomStream(8));
  MultiSectorSpec reflect{{{1, 0, 0}, {1, 0, 0}}};
  CHECK(rel_frobenius_error(assemble_multisector(ch, st, reflect), assemble_physics_channel(ch, st)) < 1e-14);
  MultiSectorSpec transmit{{{2, 0, 1}, {3, 2, 0}}};
  CHECK(rel_frobenius_error(assemble_multisector(ch, st, transmit), assemble_widely_used(ch, st)) < 1e-14);
  MultiSectorSpec mixed{{{1, 0, 0}, {2, 1, 0}}};
  const CMat expected = ch.h_ri_l * st.thetas[1] * ch.inter[0] * (st.thetas[0] - CMat::Identity(4, 4)) * ch.h_it_1;
  CHECK(rel_frobenius_error(assemble_multisector(ch, st, mixed), expected) < 1e-13);

  MultiSectorSpec bad{{{2, 0, 2}, {1, 0, 0}}};
  CHECK(oracle::throws_kind([&] { (void)assemble_multisector(ch, st, bad); }, ErrorKind::kSectorIndexOutOfRange));
  CHECK(oracle::throws_kind([] { MultiSectorSpec{{{3, 0, 1}}}.validate(4); }, ErrorKind::kSectorIndexOutOfRange));
}

TEST_CASE("scattering stack constraints") {
  auto st = ScatteringStack::from_phases({{0.1, 0.2}});
  CHECK(st.satisfies_constraint());
  st.thetas[0](0, 0) *= 1.01;
  CHECK_FALSE(st.satisfies_constraint());
  CHECK(oracle::throws_kind([&] { st.validate(); }, ErrorKind::kAssumptionViolated));

  ScatteringStack u;
  u.architecture = Architecture::kUnitary;
  std::mt19937_64 rng(2);
  u.thetas.push_back(oracle::random_cn(3, 3, rng).householderQr().householderQ());
  CHECK(u.satisfies_constraint());
  u.thetas[0](0, 1) += 1e-6;
  CHECK_FALSE(u.satisfies_constraint());
  CHECK(architecture_from_string("unitary") == Architecture::kUnitary);
  CHECK(to_string(Architecture::kDiagonal) == "diagonal");
}

TEST_CASE("cascade validation catches broken chains") {
  auto ch = gen_cascade({2, 2, 4, 3}, {FadingSpec::rayleigh()}, RandomStream(9));
  CHECK_NOTHROW(ch.validate());
  ch.inter[1] = CMat::Ones(4, 3);
  CHECK(oracle::throws_kind([&] { ch.validate(); }, ErrorKind::kDimensionMismatch));
}

TEST_CASE("pure cascade agrees across the impedance and scattering domains") {
  const RandomStream root(10);
  for (int t = 0; t < 20; ++t) {
    const auto s = root.child(static_cast<std::uint64_t>(t));
    const Dimensions dims{2, 2, 3, 1 + t % 4};
    const auto net = synthesize_network(dims, 50.0, AssumptionFlags::all(), s.child("n"));
    const auto loads = random_reactive_loads(dims, 50.0, s.child("l"), t % 2 == 0);
    const auto st = stack_from_loads(loads, 50.0, t % 2 == 0 ? Architecture::kDiagonal : Architecture::kUnitary);
    CHECK(st.satisfies_constraint());
    CHECK(rel_frobenius_error(assemble_physics_channel(cascade_from_network(net), st),
                              channel_z_pure_cascade(net, loads)) < 1e-12);
  }
}
