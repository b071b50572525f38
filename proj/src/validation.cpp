// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "ris/error.hpp"
#include "ris/harness.hpp"
#include "ris/scaling_laws.hpp"

namespace ris {

namespace {

CMat random_cn(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = {g(rng), g(rng)};
  return m;
}

CheckResult upper_check(std::string name, double measured, double threshold, std::string detail) {
  return {std::move(name), measured < threshold, measured, threshold, std::move(detail)};
}

// Dense inverse of the assembled block lower-bidiagonal matrix.
CheckResult check_block_inverse(const RandomStream& stream) {
  double worst = 0.0;
  double upper_leak = 0.0;
  for (int t = 0; t < 200; ++t) {
    auto rng = stream.child(static_cast<std::uint64_t>(t)).engine();
    const int l = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<CMat> diag;
    std::vector<CMat> sub;
    for (int k = 0; k < l; ++k) diag.push_back(random_cn(n, n, rng) + 2.0 * CMat::Identity(n, n));
    for (int k = 0; k + 1 < l; ++k) sub.push_back(random_cn(n, n, rng));
    CMat dense = CMat::Zero(l * n, l * n);
    for (int k = 0; k < l; ++k) dense.block(k * n, k * n, n, n) = diag[k];
    for (int k = 0; k + 1 < l; ++k) dense.block((k + 1) * n, k * n, n, n) = sub[k];
    const auto inv = block_subdiagonal_inverse(diag, sub);
    worst = std::max(worst, rel_frobenius_error(inv.assemble(), dense.partialPivLu().inverse()));
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) upper_leak = std::max(upper_leak, inv.at(i, j).cwiseAbs().maxCoeff());
  }
  auto c = upper_check("block_inverse_oracle", worst, 1e-10, "200 instances, L in 1..6, block size in 1..8");
  if (upper_leak != 0.0) {
    c.passed = false;
    c.detail += "; nonzero block above the diagonal";
  }
  return c;
}

std::vector<CheckResult> check_z_s_conversion(const RandomStream& stream) {
  double round_trip = 0.0;
  double unitarity = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto s = stream.child(static_cast<std::uint64_t>(t));
    auto rng = s.engine();
    const Dimensions dims{1, 1, 1 + static_cast<int>(rng() % 8), 1};
    const auto loads = random_reactive_loads(dims, kDefaultZ0, s.child("loads"));
    const CMat& z = loads.loads[0];
    const CMat theta = z_to_scattering(z, kDefaultZ0);
    round_trip = std::max(round_trip, rel_frobenius_error(scattering_to_z(theta, kDefaultZ0), z));
    const CMat eye = CMat::Identity(theta.rows(), theta.cols());
    unitarity = std::max(unitarity, (theta.adjoint() * theta - eye).norm());
  }
  return {upper_check("z_s_round_trip", round_trip, 1e-10, "100 reactive loads, Z -> Theta -> Z"),
          upper_check("lossless_unitarity", unitarity, 1e-10, "max ||Theta^H Theta - I||_F over 100 reactive loads")};
}

std::vector<CheckResult> check_model_chain(const RandomStream& stream) {
  double chain = 0.0;
  double pure = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto s = stream.child(static_cast<std::uint64_t>(t));
    auto rng = s.engine();
    const Dimensions dims{1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3),
                          1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 4)};
    const auto loads = random_reactive_loads(dims, kDefaultZ0, s.child("loads"));
    const auto stack = stack_from_loads(loads, kDefaultZ0, Architecture::kUnitary);

    const auto net = synthesize_network(dims, kDefaultZ0, AssumptionFlags::through_matched(), s.child("net"));
    const CMat general = channel_z_general(net, loads);
    const CMat via_s = assemble_full_physics(cascade_from_network(net), stack);
    chain = std::max({chain, rel_frobenius_error(channel_z_cascade(net, loads), general),
                      rel_frobenius_error(channel_z_matched(net, loads), general), rel_frobenius_error(via_s, general)});

    const auto pure_net = synthesize_network(dims, kDefaultZ0, AssumptionFlags::all(), s.child("pure"));
    const CMat pure_general = channel_z_general(pure_net, loads);
    pure = std::max({pure, rel_frobenius_error(channel_z_pure_cascade(pure_net, loads), pure_general),
                     rel_frobenius_error(assemble_physics_channel(cascade_from_network(pure_net), stack), pure_general)});
  }
  return {upper_check("model_chain_equivalence", chain, 1e-12,
                      "general = cascade = matched = scattering-domain full model, 100 matched networks"),
          upper_check("pure_cascade_equivalence", pure, 1e-12,
                      "impedance and scattering pure-cascade channels against the general form")};
}

std::vector<CheckResult> check_inner_solvers(const RandomStream& stream) {
  double diag_gap = 0.0;
  double unitary_gap = 0.0;
  double beaten = 0.0;
  for (int t = 0; t < 50; ++t) {
    auto rng = stream.child(static_cast<std::uint64_t>(t)).engine();
    const int n = 1 + static_cast<int>(rng() % 8);
    InnerProblemData d;
    d.g_rt = random_cn(1, 1, rng)(0, 0);
    d.g_ri = random_cn(1, n, rng);
    d.g_it = random_cn(n, 1, rng);

    double closed_diag = std::abs(d.g_rt);
    for (int k = 0; k < n; ++k) closed_diag += std::abs(d.g_ri(k)) * std::abs(d.g_it(k));
    closed_diag *= closed_diag;
    const double got_diag = inner_objective(d, inner_solve_diagonal(d));
    diag_gap = std::max(diag_gap, std::abs(got_diag - closed_diag) / closed_diag);

    const double closed_unitary = std::pow(std::abs(d.g_rt) + d.g_ri.norm() * d.g_it.norm(), 2);
    const CMat u = inner_solve_unitary(d);
    unitary_gap = std::max({unitary_gap, std::abs(inner_objective(d, u) - closed_unitary) / closed_unitary,
                            (u.adjoint() * u - CMat::Identity(n, n)).norm()});

    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (int r = 0; r < 200; ++r) {
      CMat theta = CMat::Zero(n, n);
      for (int k = 0; k < n; ++k) theta(k, k) = std::polar(1.0, phase(rng));
      beaten = std::max(beaten, (inner_objective(d, theta) - got_diag) / got_diag);
    }
  }
  return {upper_check("inner_diagonal_optimality", std::max(diag_gap, beaten), 1e-12,
                      "phase alignment attains the closed-form optimum; 10000 random phase draws never beat it"),
          upper_check("inner_unitary_optimality", unitary_gap, 1e-10,
                      "unitary solution attains (|g_rt| + ||g_ri|| ||g_it||)^2 and is unitary")};
}

std::vector<CheckResult> check_optimizer(const RandomStream& stream) {
  double excess = -1.0;
  double descent = 0.0;
  for (int t = 0; t < 12; ++t) {
    const auto s = stream.child(static_cast<std::uint64_t>(t));
    const Dimensions dims{2, 2, 4 + 4 * (t % 2), 2 + (t % 3) / 2};
    const auto ch = gen_cascade(dims, {FadingSpec::rayleigh()}, s);
    for (auto model : {ChannelModel::kPhysics, ChannelModel::kWidelyUsed}) {
      for (auto arch : {Architecture::kDiagonal, Architecture::kUnitary}) {
        OptimizerConfig cfg;
        cfg.model = model;
        cfg.architecture = arch;
        cfg.init_seed = s.child("init").engine()();
        const auto res = alg1_optimize(ch, cfg);
        const double bound = model == ChannelModel::kPhysics ? upper_bound_physics(ch) : upper_bound_widely(ch);
        excess = std::max(excess, res.gain() / bound - 1.0);
        double prev = res.initial_gain;
        for (double g : res.gain_trace) {
          descent = std::max(descent, (prev - g) / std::max(prev, 1e-300));
          prev = g;
        }
      }
    }
  }
  return {upper_check("bound_compliance", excess, 1e-9, "optimised gain / upper bound - 1, Rayleigh, both models"),
          upper_check("optimizer_monotone", descent, 1e-9, "largest relative drop along any gain trace")};
}

CheckResult check_multisector(const RandomStream& stream, bool mutate) {
  const double sign = mutate ? -1.0 : 1.0;
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const auto s = stream.child(static_cast<std::uint64_t>(t));
    auto rng = s.engine();
    const int l = 1 + static_cast<int>(rng() % 4);
    const int sectors = 2 + static_cast<int>(rng() % 2);
    const int n_i = sectors * (1 + static_cast<int>(rng() % 3));
    const Dimensions reduced{2, 2, n_i / sectors, l};
    const auto ch = gen_cascade(reduced, {FadingSpec::rayleigh()}, s.child("channels"));
    const auto stack = random_phase_stack(l, reduced.n_i, s.child("phases"));

    // Case 0: every RIS transmissive, 1: every RIS reflective, 2: mixed.
    for (int c = 0; c < 3; ++c) {
      MultiSectorSpec spec;
      std::vector<double> offsets;
      for (int k = 0; k < l; ++k) {
        const bool reflect = c == 1 || (c == 2 && rng() % 2 == 0);
        const int arrival = static_cast<int>(rng() % static_cast<unsigned>(sectors));
        const int departure = reflect ? arrival : (arrival + 1) % sectors;
        spec.ris.push_back({sectors, arrival, departure});
        offsets.push_back(reflect ? sign : 0.0);
      }
      spec.validate(n_i);
      const CMat got = assemble_multisector(ch, stack, spec);
      CMat expected;
      if (c == 0)
        expected = assemble_widely_used(ch, stack);
      else if (c == 1 && !mutate)
        expected = assemble_physics_channel(ch, stack);
      else
        expected = assemble_with_offsets(ch, stack, offsets);
      worst = std::max(worst, rel_frobenius_error(got, expected));
    }
  }
  return upper_check("multisector_equivalence", worst, 1e-12,
                     "transmissive = widely used, reflective = physics, mixed sectors per RIS");
}

std::vector<CheckResult> check_structural(const RandomStream& stream) {
  double nulled = 0.0;
  double path_count_err = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto s = stream.child(static_cast<std::uint64_t>(t));
    const int l = 1 + t % 4;
    const auto ch = gen_cascade({2, 2, 4, l}, {FadingSpec::rayleigh()}, s);
    nulled = std::max(nulled, assemble_physics_channel(ch, ScatteringStack::identity(l, 4)).cwiseAbs().maxCoeff());

    const auto net = synthesize_network({2, 2, 3, l}, kDefaultZ0, AssumptionFlags::through_matched(), s.child("net"));
    const auto terms = full_physics_path_terms(cascade_from_network(net), ScatteringStack::identity(l, 3));
    path_count_err = std::max(path_count_err, std::abs(static_cast<double>(terms.size()) - (1.0 + l * (l + 1) / 2.0)));
  }

  const int n_i = 16;
  auto link = gen_los_link(n_i, n_i, 1.0, stream.child("los"));
  const auto lambda = mean_sq_singular_values(std::span<const CMat>(&link, 1));
  const double s_los = structural_scattering_strength(std::vector<double>(lambda.data(), lambda.data() + lambda.size()));
  const double s_err = std::abs(s_los * n_i * n_i - 1.0);

  CheckResult count = upper_check("full_model_path_count", path_count_err, 0.5, "1 + L(L+1)/2 additive paths");
  return {upper_check("identity_nulls_physics_channel", nulled, 1e-300, "Theta = I yields an exactly zero channel"),
          count, upper_check("los_structural_strength", s_err, 1e-10, "s * N_I^2 = 1 for a rank-one link")};
}

CheckResult check_los_closed_forms(const RandomStream& stream) {
  double worst = 0.0;
  for (int t = 0; t < 40; ++t) {
    const auto s = stream.child(static_cast<std::uint64_t>(t));
    const int l = 1 + t % 4;
    const int n_i = 4 << (t % 3);
    const double gain = 0.5 + 0.25 * (t % 3);
    const auto ch = gen_cascade({2, 3, n_i, l}, {FadingSpec::los(gain)}, s);
    const double exact = gain_widely_los({n_i, l, 2, 3, std::pow(gain, l + 1)});
    const double got = model_gain(ch, los_optimal_phases_widely(ch), ChannelModel::kWidelyUsed);
    worst = std::max(worst, std::abs(got - exact) / exact);
  }
  return upper_check("los_widely_closed_form", worst, 1e-9, "optimised widely used LoS gain equals the closed form");
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%s %-32s measured=%.3e threshold=%.3e  ", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.threshold);
    out << line << c.detail << '\n';
  }
  out << (all_passed() ? "all checks passed" : "validation FAILED") << '\n';
  return out.str();
}

ValidationReport validate(const ValidationOptions& options) {
  const RandomStream root = RandomStream(options.seed).child("validate");
  ValidationReport report;
  auto add = [&](std::vector<CheckResult> cs) {
    for (auto& c : cs) report.checks.push_back(std::move(c));
  };
  report.checks.push_back(check_block_inverse(root.child("block-inverse")));
  add(check_z_s_conversion(root.child("z-s")));
  add(check_model_chain(root.child("chain")));
  add(check_inner_solvers(root.child("inner")));
  add(check_optimizer(root.child("optimizer")));
  report.checks.push_back(check_multisector(root.child("multisector"), options.inject_structural_sign_error));
  add(check_structural(root.child("structural")));
  report.checks.push_back(check_los_closed_forms(root.child("los")));
  return report;
}

}  // namespace ris
