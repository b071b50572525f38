// SPDX-License-Identifier: Apache-2.0
#include "ris/optimizer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ris/channel_gen.hpp"
#include "ris/error.hpp"

namespace ris {

namespace {

constexpr double kRankOneTol = 1e-9;

double offset_of(ChannelModel model) { return model == ChannelModel::kPhysics ? 1.0 : 0.0; }

CMat shifted(const CMat& theta, double offset) {
  CMat out = theta;
  if (offset != 0.0) out.diagonal().array() -= offset;
  return out;
}

struct RankOne {
  CVec col;
  RowCVec row;
};

// m = col·row; throws NotRankOne when the residual is not negligible.
RankOne rank_one_factors(const CMat& m, const std::string& which) {
  Eigen::Index pr = 0;
  Eigen::Index pc = 0;
  const double peak = m.cwiseAbs().maxCoeff(&pr, &pc);
  if (peak == 0.0) throw Error(ErrorKind::kNotRankOne, which + " is the zero matrix");
  RankOne f{m.col(pc), m.row(pr) / m(pr, pc)};
  const double residual = (m - f.col * f.row).norm();
  if (residual > kRankOneTol * m.norm()) {
    throw Error(ErrorKind::kNotRankOne, which + " is not rank one (relative residual " +
                                            std::to_string(residual / m.norm()) + ")");
  }
  return f;
}

// Incoming column direction a and outgoing row direction bᵀ seen by each RIS.
std::vector<std::pair<CVec, RowCVec>> los_directions(const CascadeChannels& ch) {
  ch.validate();
  const int l = ch.l();
  std::vector<RankOne> links;
  links.push_back(rank_one_factors(ch.h_it_1, "H_IT"));
  for (int k = 0; k + 1 < l; ++k) links.push_back(rank_one_factors(ch.inter[static_cast<std::size_t>(k)], "inter-RIS link " + std::to_string(k)));
  links.push_back(rank_one_factors(ch.h_ri_l, "H_RI"));

  std::vector<std::pair<CVec, RowCVec>> out;
  for (int k = 0; k < l; ++k) out.emplace_back(links[static_cast<std::size_t>(k)].col, links[static_cast<std::size_t>(k + 1)].row);
  return out;
}

double relative_change(double now, double before) {
  const double scale = std::max(std::abs(now), std::numeric_limits<double>::min());
  return std::abs(now - before) / scale;
}

}  // namespace

std::string_view to_string(ChannelModel model) {
  return model == ChannelModel::kPhysics ? "physics" : "widely_used";
}

void OptimizerConfig::validate() const {
  if (max_outer_iters < 1 || max_inner_iters < 1 || !(rel_tol > 0.0))
    throw Error(ErrorKind::kInvalidSpec, "optimizer iteration caps must be >= 1 and rel_tol positive");
}

InnerProblemData InnerProblemData::from_equivalent(const CMat& a, const CMat& b, const CVec& u, const CVec& v,
                                                   ChannelModel model) {
  InnerProblemData d;
  d.u = u;
  d.v = v;
  d.g_ri = u.adjoint() * a;
  d.g_it = b * v;
  d.g_rt = -offset_of(model) * (d.g_ri * b * v)(0, 0);
  return d;
}

double inner_objective(const InnerProblemData& data, const CMat& theta) {
  return std::norm(data.g_rt + (data.g_ri * theta * data.g_it)(0, 0));
}

CMat inner_solve_diagonal(const InnerProblemData& data) {
  const Eigen::Index n = data.g_it.size();
  if (data.g_ri.size() != n) throw Error(ErrorKind::kDimensionMismatch, "g_ri and g_it lengths differ");
  const double target = std::arg(data.g_rt);
  CMat theta = CMat::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    theta(k, k) = std::polar(1.0, target - std::arg(data.g_ri(k)) - std::arg(data.g_it(k)));
  return theta;
}

CMat inner_solve_unitary(const InnerProblemData& data) {
  const Eigen::Index n = data.g_it.size();
  if (data.g_ri.size() != n) throw Error(ErrorKind::kDimensionMismatch, "g_ri and g_it lengths differ");
  const double nri = data.g_ri.norm();
  const double nit = data.g_it.norm();
  if (nri == 0.0 || nit == 0.0) throw Error(ErrorKind::kZeroVector, "unitary inner problem needs nonzero g_ri and g_it");
  const CVec source = data.g_it / nit;
  const CVec target = std::polar(1.0, std::arg(data.g_rt)) * data.g_ri.adjoint() / nri;
  return unitary_with_first_column(target) * unitary_with_first_column(source).adjoint();
}

double channel_gain(const CMat& h) { return spectral_norm_sq(h); }

ScatteringStack los_optimal_phases_physics(const CascadeChannels& ch) {
  const auto dirs = los_directions(ch);
  std::vector<std::vector<double>> phases;
  for (const auto& [a, b] : dirs) {
    const cdouble inner = (b * a)(0, 0);
    std::vector<double> ris(static_cast<std::size_t>(a.size()));
    for (Eigen::Index n = 0; n < a.size(); ++n)
      ris[static_cast<std::size_t>(n)] = std::numbers::pi + std::arg(inner) - std::arg(b(n)) - std::arg(a(n));
    phases.push_back(std::move(ris));
  }
  return ScatteringStack::from_phases(phases);
}

ScatteringStack los_optimal_phases_widely(const CascadeChannels& ch) {
  const auto dirs = los_directions(ch);
  std::vector<std::vector<double>> phases;
  for (const auto& [a, b] : dirs) {
    std::vector<double> ris(static_cast<std::size_t>(a.size()));
    for (Eigen::Index n = 0; n < a.size(); ++n) ris[static_cast<std::size_t>(n)] = -std::arg(b(n)) - std::arg(a(n));
    phases.push_back(std::move(ris));
  }
  return ScatteringStack::from_phases(phases);
}

double model_gain(const CascadeChannels& ch, const ScatteringStack& stack, ChannelModel model) {
  return channel_gain(model == ChannelModel::kPhysics ? assemble_physics_channel(ch, stack)
                                                      : assemble_widely_used(ch, stack));
}

OptimizationResult alg1_optimize(const CascadeChannels& ch, const OptimizerConfig& cfg) {
  ch.validate();
  cfg.validate();
  if (ch.full_model()) throw Error(ErrorKind::kAssumptionViolated, "alternating optimisation needs a pure cascade");
  const int l = ch.l();
  const double offset = offset_of(cfg.model);

  OptimizationResult res;
  if (cfg.init == InitPolicy::kIdentity) {
    res.stack = ScatteringStack::identity(l, ch.ris_size(0), cfg.architecture);
    for (int k = 0; k < l; ++k) res.stack.thetas[static_cast<std::size_t>(k)] = CMat::Identity(ch.ris_size(k), ch.ris_size(k));
  } else {
    auto eng = RandomStream(cfg.init_seed).child("alg1-init").engine();
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    res.stack.architecture = cfg.architecture;
    for (int k = 0; k < l; ++k) {
      CVec d(ch.ris_size(k));
      for (Eigen::Index n = 0; n < d.size(); ++n) d(n) = std::polar(1.0, phase(eng));
      res.stack.thetas.push_back(d.asDiagonal());
    }
  }
  res.stack.architecture = cfg.architecture;
  auto& thetas = res.stack.thetas;
  res.initial_gain = model_gain(ch, res.stack, cfg.model);

  double previous = res.initial_gain;
  for (int outer = 0; outer < cfg.max_outer_iters; ++outer) {
    // Receive-side equivalents A_ℓ from the current (not yet updated) RISs above ℓ.
    std::vector<CMat> recv(static_cast<std::size_t>(l));
    recv[static_cast<std::size_t>(l - 1)] = ch.h_ri_l;
    for (int k = l - 2; k >= 0; --k)
      recv[static_cast<std::size_t>(k)] = recv[static_cast<std::size_t>(k + 1)] * shifted(thetas[static_cast<std::size_t>(k + 1)], offset) * ch.inter[static_cast<std::size_t>(k)];

    CMat send = ch.h_it_1;  // transmit-side equivalent B_ℓ, refreshed after each update
    for (int k = 0; k < l; ++k) {
      const CMat& a = recv[static_cast<std::size_t>(k)];
      CMat& theta = thetas[static_cast<std::size_t>(k)];
      double objective = channel_gain(a * shifted(theta, offset) * send);
      for (int inner = 0; inner < cfg.max_inner_iters; ++inner) {
        const SingularPair sp = dominant_singular_pair(a * shifted(theta, offset) * send);
        const auto data = InnerProblemData::from_equivalent(a, send, sp.left, sp.right, cfg.model);
        theta = cfg.architecture == Architecture::kDiagonal ? inner_solve_diagonal(data) : inner_solve_unitary(data);
        const double updated = channel_gain(a * shifted(theta, offset) * send);
        const double change = relative_change(updated, objective);
        objective = updated;
        if (change < cfg.rel_tol) break;
      }
      if (k + 1 < l) send = ch.inter[static_cast<std::size_t>(k)] * shifted(theta, offset) * send;
    }

    const double gain = model_gain(ch, res.stack, cfg.model);
    res.gain_trace.push_back(gain);
    res.iterations = outer + 1;
    if (relative_change(gain, previous) < cfg.rel_tol) {
      res.converged = true;
      break;
    }
    previous = gain;
  }
  return res;
}

double upper_bound_widely(const CascadeChannels& ch) {
  ch.validate();
  double bound = spectral_norm_sq(ch.h_ri_l) * spectral_norm_sq(ch.h_it_1);
  for (const auto& h : ch.inter) bound *= spectral_norm_sq(h);
  return bound;
}

double upper_bound_physics(const CascadeChannels& ch, int max_l) {
  ch.validate();
  const int l = ch.l();
  if (l > max_l) {
    throw Error(ErrorKind::kCascadeTooLong,
                "2^" + std::to_string(l) + " expansion terms exceed the cap of 2^" + std::to_string(max_l));
  }
  // Link k sits between RIS k−1 and RIS k: link 0 = H_IT,1, link l = H_RI,L.
  std::vector<const CMat*> link;
  link.push_back(&ch.h_it_1);
  for (const auto& h : ch.inter) link.push_back(&h);
  link.push_back(&ch.h_ri_l);

  // run_norm[i][j] = ‖link_j ··· link_i‖ for i ≤ j.
  const auto links = static_cast<std::size_t>(l + 1);
  std::vector<std::vector<double>> run_norm(links, std::vector<double>(links, 0.0));
  for (std::size_t i = 0; i < links; ++i) {
    CMat product = *link[i];
    run_norm[i][i] = spectral_norm(product);
    for (std::size_t j = i + 1; j < links; ++j) {
      product = (*link[j]) * product;
      run_norm[i][j] = spectral_norm(product);
    }
  }

  double total = 0.0;
  const std::uint64_t terms = std::uint64_t{1} << l;
  for (std::uint64_t mask = 0; mask < terms; ++mask) {
    // A selected RIS k splits the chain between link k and link k+1.
    double term = 1.0;
    std::size_t start = 0;
    for (int k = 0; k < l; ++k) {
      if (mask & (std::uint64_t{1} << k)) {
        term *= run_norm[start][static_cast<std::size_t>(k)];
        start = static_cast<std::size_t>(k + 1);
      }
    }
    term *= run_norm[start][links - 1];
    total += term;
  }
  return total * total;
}

}  // namespace ris
