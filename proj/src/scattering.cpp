// SPDX-License-Identifier: Apache-2.0
#include "ris/scattering.hpp"

#include <cmath>
#include <string>

#include "ris/error.hpp"

namespace ris {

namespace {

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

void check_stack_matches(const CascadeChannels& ch, const ScatteringStack& stack) {
  ch.validate();
  require(stack.l() == ch.l(), ErrorKind::kDimensionMismatch,
          "stack has " + std::to_string(stack.l()) + " matrices for a cascade of " + std::to_string(ch.l()));
  for (int k = 0; k < ch.l(); ++k) {
    const auto& t = stack.thetas[static_cast<std::size_t>(k)];
    require(t.rows() == ch.ris_size(k) && t.cols() == ch.ris_size(k), ErrorKind::kDimensionMismatch,
            "Theta of RIS " + std::to_string(k) + " does not match the channel");
  }
}

// Θ − offset·I
CMat shifted(const CMat& theta, double offset) {
  CMat out = theta;
  if (offset != 0.0) out.diagonal().array() -= offset;
  return out;
}

// H_RI,L (Θ_L − o_L I) ∏ (H_{ℓ+1,ℓ}(Θ_ℓ − o_ℓ I)) H_IT,1 with per-RIS offsets.
CMat assemble_chain(const CascadeChannels& ch, const ScatteringStack& stack, std::span<const double> offsets) {
  const int l = ch.l();
  CMat acc = ch.h_ri_l * shifted(stack.thetas[static_cast<std::size_t>(l - 1)], offsets[static_cast<std::size_t>(l - 1)]);
  for (int k = l - 2; k >= 0; --k) {
    acc = acc * ch.inter[static_cast<std::size_t>(k)];
    acc = acc * shifted(stack.thetas[static_cast<std::size_t>(k)], offsets[static_cast<std::size_t>(k)]);
  }
  return acc * ch.h_it_1;
}

bool is_unitary(const CMat& t, double tol) {
  return (t.adjoint() * t - CMat::Identity(t.cols(), t.cols())).norm() <= tol;
}

bool is_unit_modulus_diagonal(const CMat& t, double tol) {
  for (Eigen::Index r = 0; r < t.rows(); ++r)
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
      const double mag = std::abs(t(r, c));
      if (r == c ? std::abs(mag - 1.0) > tol : mag > tol) return false;
    }
  return true;
}

}  // namespace

int CascadeChannels::ris_size(int l) const {
  if (l == 0) return static_cast<int>(h_it_1.rows());
  return static_cast<int>(inter[static_cast<std::size_t>(l - 1)].rows());
}

const CMat& CascadeChannels::h_ri(int l) const {
  if (l == this->l() - 1) return h_ri_l;
  require(side.has_value(), ErrorKind::kMissingSideLinks, "H_RI for a non-final RIS needs the side set");
  return side->h_ri[static_cast<std::size_t>(l)];
}

const CMat& CascadeChannels::h_it(int l) const {
  if (l == 0) return h_it_1;
  require(side.has_value(), ErrorKind::kMissingSideLinks, "H_IT for a non-first RIS needs the side set");
  return side->h_it[static_cast<std::size_t>(l - 1)];
}

void CascadeChannels::validate() const {
  const int l = this->l();
  require(h_it_1.size() > 0 && h_ri_l.size() > 0, ErrorKind::kDimensionMismatch, "empty channel block");
  for (int k = 0; k + 1 < l; ++k)
    require(inter[static_cast<std::size_t>(k)].cols() == ris_size(k), ErrorKind::kDimensionMismatch,
            "inter-RIS link " + std::to_string(k) + " does not chain");
  require(h_ri_l.cols() == ris_size(l - 1), ErrorKind::kDimensionMismatch, "last hop does not chain");
  if (side) {
    require(side->h_rt.rows() == n_r() && side->h_rt.cols() == n_t(), ErrorKind::kDimensionMismatch,
            "direct link must be n_r x n_t");
    require(static_cast<int>(side->h_ri.size()) == l - 1 && static_cast<int>(side->h_it.size()) == l - 1,
            ErrorKind::kMissingSideLinks, "side set must hold l-1 RIS->receiver and l-1 transmitter->RIS links");
    for (int k = 0; k + 1 < l; ++k) {
      const auto& ri = side->h_ri[static_cast<std::size_t>(k)];
      const auto& it = side->h_it[static_cast<std::size_t>(k)];
      require(ri.rows() == n_r() && ri.cols() == ris_size(k), ErrorKind::kDimensionMismatch, "side H_RI shape");
      require(it.rows() == ris_size(k + 1) && it.cols() == n_t(), ErrorKind::kDimensionMismatch, "side H_IT shape");
    }
  }
}

std::string_view to_string(Architecture arch) {
  return arch == Architecture::kDiagonal ? "diagonal" : "unitary";
}

Architecture architecture_from_string(std::string_view name) {
  if (name == "diagonal") return Architecture::kDiagonal;
  if (name == "unitary") return Architecture::kUnitary;
  throw Error(ErrorKind::kInvalidSpec, "unknown architecture '" + std::string(name) + "'");
}

ScatteringStack ScatteringStack::from_phases(const std::vector<std::vector<double>>& phases) {
  ScatteringStack out;
  out.architecture = Architecture::kDiagonal;
  for (const auto& ris : phases) {
    CMat t = CMat::Zero(static_cast<Eigen::Index>(ris.size()), static_cast<Eigen::Index>(ris.size()));
    for (std::size_t n = 0; n < ris.size(); ++n) t(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = std::polar(1.0, ris[n]);
    out.thetas.push_back(std::move(t));
  }
  return out;
}

ScatteringStack ScatteringStack::identity(int l, int n_i, Architecture arch) {
  ScatteringStack out;
  out.architecture = arch;
  out.thetas.assign(static_cast<std::size_t>(l), CMat::Identity(n_i, n_i));
  return out;
}

bool ScatteringStack::satisfies_constraint() const {
  for (const auto& t : thetas) {
    if (t.rows() != t.cols()) return false;
    const bool ok = architecture == Architecture::kDiagonal ? is_unit_modulus_diagonal(t, 1e-12) : is_unitary(t, 1e-10);
    if (!ok) return false;
  }
  return true;
}

void ScatteringStack::validate() const {
  require(satisfies_constraint(), ErrorKind::kAssumptionViolated,
          std::string("scattering stack violates the ") + std::string(to_string(architecture)) + " constraint");
}

void MultiSectorSpec::validate(int n_i) const {
  for (std::size_t k = 0; k < ris.size(); ++k) {
    const auto& r = ris[k];
    const std::string who = "RIS " + std::to_string(k);
    require(r.sectors >= 1 && n_i % r.sectors == 0, ErrorKind::kSectorIndexOutOfRange,
            who + ": sector count must divide n_i");
    require(r.arrival >= 0 && r.arrival < r.sectors && r.departure >= 0 && r.departure < r.sectors,
            ErrorKind::kSectorIndexOutOfRange, who + ": sector index out of range");
  }
}

CMat assemble_with_offsets(const CascadeChannels& ch, const ScatteringStack& stack, std::span<const double> offsets) {
  check_stack_matches(ch, stack);
  require(static_cast<int>(offsets.size()) == ch.l(), ErrorKind::kDimensionMismatch, "one offset per RIS is required");
  return assemble_chain(ch, stack, offsets);
}

CMat assemble_physics_channel(const CascadeChannels& ch, const ScatteringStack& stack) {
  check_stack_matches(ch, stack);
  return assemble_chain(ch, stack, std::vector<double>(static_cast<std::size_t>(ch.l()), 1.0));
}

CMat assemble_widely_used(const CascadeChannels& ch, const ScatteringStack& stack) {
  check_stack_matches(ch, stack);
  return assemble_chain(ch, stack, std::vector<double>(static_cast<std::size_t>(ch.l()), 0.0));
}

std::vector<CMat> full_physics_path_terms(const CascadeChannels& ch, const ScatteringStack& stack) {
  require(ch.full_model(), ErrorKind::kMissingSideLinks, "full model requires the side link set");
  check_stack_matches(ch, stack);
  const int l = ch.l();
  std::vector<CMat> reflect(static_cast<std::size_t>(l));
  for (int k = 0; k < l; ++k) reflect[static_cast<std::size_t>(k)] = shifted(stack.thetas[static_cast<std::size_t>(k)], 1.0);

  std::vector<CMat> terms;
  terms.push_back(ch.side->h_rt);
  for (int i = 0; i < l; ++i) {
    const CMat head = ch.h_ri(i) * reflect[static_cast<std::size_t>(i)];
    terms.push_back(head * ch.h_it(i));
    for (int k = 0; k < i; ++k) {
      // ∏_{p=i−1..k}(H_{p+1,p}(Θ_p − I)) H_IT,k
      CMat acc = head;
      for (int p = i - 1; p >= k; --p) acc = acc * ch.inter[static_cast<std::size_t>(p)] * reflect[static_cast<std::size_t>(p)];
      terms.push_back(acc * ch.h_it(k));
    }
  }
  return terms;
}

CMat assemble_full_physics(const CascadeChannels& ch, const ScatteringStack& stack) {
  const auto terms = full_physics_path_terms(ch, stack);
  CMat h = CMat::Zero(ch.n_r(), ch.n_t());
  for (const auto& t : terms) h += t;
  return h;
}

CMat assemble_multisector(const CascadeChannels& reduced, const ScatteringStack& stack, const MultiSectorSpec& spec) {
  check_stack_matches(reduced, stack);
  require(static_cast<int>(spec.ris.size()) == reduced.l(), ErrorKind::kDimensionMismatch,
          "sector spec must describe every RIS");
  std::vector<double> offsets(spec.ris.size());
  for (std::size_t k = 0; k < spec.ris.size(); ++k) {
    const auto& r = spec.ris[k];
    require(r.sectors >= 1 && r.arrival >= 0 && r.arrival < r.sectors && r.departure >= 0 && r.departure < r.sectors,
            ErrorKind::kSectorIndexOutOfRange, "RIS " + std::to_string(k) + ": sector index out of range");
    offsets[k] = r.reflective() ? 1.0 : 0.0;
  }
  return assemble_chain(reduced, stack, offsets);
}

CascadeChannels cascade_from_network(const MultiportNetwork& net) {
  const double z0 = net.z0();
  const int l = net.dims().l;
  CascadeChannels ch;
  ch.h_it_1 = normalize_z_to_channel(net.z_it_block(0), z0);
  for (int k = 0; k + 1 < l; ++k) ch.inter.push_back(normalize_z_to_channel(net.z_inter(k + 1, k), z0));
  ch.h_ri_l = normalize_z_to_channel(net.z_ri_block(l - 1), z0);
  if (!net.flags().pure_cascade) {
    SideLinks side;
    side.h_rt = normalize_z_to_channel(net.z_rt(), z0);
    for (int k = 0; k + 1 < l; ++k) side.h_ri.push_back(normalize_z_to_channel(net.z_ri_block(k), z0));
    for (int k = 1; k < l; ++k) side.h_it.push_back(normalize_z_to_channel(net.z_it_block(k), z0));
    ch.side = std::move(side);
  }
  return ch;
}

ScatteringStack stack_from_loads(const RisLoadStack& loads, double z0, Architecture arch) {
  ScatteringStack out;
  out.architecture = arch;
  for (const auto& z : loads.loads) out.thetas.push_back(z_to_scattering(z, z0));
  return out;
}

}  // namespace ris
