// SPDX-License-Identifier: Apache-2.0
#include "ris/multiport.hpp"

#include <algorithm>
#include <string>

#include "ris/error.hpp"

namespace ris {

namespace {

constexpr double kZeroBlockTol = 1e-12;

std::string ris_name(int l) { return "RIS " + std::to_string(l); }

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

}  // namespace

void Dimensions::validate() const {
  require(n_t >= 1 && n_r >= 1 && n_i >= 1 && l >= 1, ErrorKind::kDimensionMismatch,
          "all dimension counts must be >= 1");
}

MultiportNetwork::MultiportNetwork(Dimensions dims, double z0, CMat z, AssumptionFlags flags)
    : dims_(dims), z0_(z0), z_(std::move(z)), flags_(flags) {
  dims_.validate();
  require(z0_ > 0.0, ErrorKind::kDimensionMismatch, "reference impedance must be positive");
  const int n = dims_.total_ports();
  require(z_.rows() == n && z_.cols() == n, ErrorKind::kDimensionMismatch,
          "impedance matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  check_assumptions();
}

CMat MultiportNetwork::z_tt() const { return z_.topLeftCorner(dims_.n_t, dims_.n_t); }
CMat MultiportNetwork::z_ti() const { return z_.block(0, dims_.n_t, dims_.n_t, dims_.l * dims_.n_i); }
CMat MultiportNetwork::z_tr() const { return z_.block(0, rx_offset(), dims_.n_t, dims_.n_r); }
CMat MultiportNetwork::z_it() const { return z_.block(dims_.n_t, 0, dims_.l * dims_.n_i, dims_.n_t); }
CMat MultiportNetwork::z_ii() const {
  const int m = dims_.l * dims_.n_i;
  return z_.block(dims_.n_t, dims_.n_t, m, m);
}
CMat MultiportNetwork::z_ir() const { return z_.block(dims_.n_t, rx_offset(), dims_.l * dims_.n_i, dims_.n_r); }
CMat MultiportNetwork::z_rt() const { return z_.block(rx_offset(), 0, dims_.n_r, dims_.n_t); }
CMat MultiportNetwork::z_ri() const { return z_.block(rx_offset(), dims_.n_t, dims_.n_r, dims_.l * dims_.n_i); }
CMat MultiportNetwork::z_rr() const { return z_.bottomRightCorner(dims_.n_r, dims_.n_r); }

CMat MultiportNetwork::z_ii_block(int l) const { return z_inter(l, l); }

CMat MultiportNetwork::z_inter(int to, int from) const {
  require(to >= 0 && to < dims_.l && from >= 0 && from < dims_.l, ErrorKind::kDimensionMismatch,
          "RIS index out of range");
  return z_.block(ris_offset(to), ris_offset(from), dims_.n_i, dims_.n_i);
}

CMat MultiportNetwork::z_it_block(int l) const {
  require(l >= 0 && l < dims_.l, ErrorKind::kDimensionMismatch, "RIS index out of range");
  return z_.block(ris_offset(l), 0, dims_.n_i, dims_.n_t);
}

CMat MultiportNetwork::z_ri_block(int l) const {
  require(l >= 0 && l < dims_.l, ErrorKind::kDimensionMismatch, "RIS index out of range");
  return z_.block(rx_offset(), ris_offset(l), dims_.n_r, dims_.n_i);
}

void MultiportNetwork::check_assumptions() const {
  const double scale = std::max(z_.cwiseAbs().maxCoeff(), z0_);
  const double tol = kZeroBlockTol * scale;
  auto is_zero = [tol](const CMat& m) { return m.size() == 0 || m.cwiseAbs().maxCoeff() <= tol; };
  auto is_z0_identity = [&](const CMat& m) {
    return (m - z0_ * CMat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
  };
  const int l = dims_.l;

  if (flags_.terminal_unilateral) {
    require(is_zero(z_ti()), ErrorKind::kAssumptionViolated, "Z_TI is nonzero (terminal unilateral)");
    require(is_zero(z_tr()), ErrorKind::kAssumptionViolated, "Z_TR is nonzero (terminal unilateral)");
    require(is_zero(z_ir()), ErrorKind::kAssumptionViolated, "Z_IR is nonzero (terminal unilateral)");
  }
  if (flags_.ris_unilateral) {
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j)
        require(is_zero(z_inter(i, j)), ErrorKind::kAssumptionViolated,
                "feedback block Z_{" + std::to_string(i) + "," + std::to_string(j) + "} is nonzero");
  }
  if (flags_.cascade_obstruction) {
    for (int i = 0; i < l; ++i)
      for (int j = 0; j + 2 <= i; ++j)
        require(is_zero(z_inter(i, j)), ErrorKind::kAssumptionViolated,
                "non-adjacent block Z_{" + std::to_string(i) + "," + std::to_string(j) + "} is nonzero");
  }
  if (flags_.matched_terminals) {
    require(is_z0_identity(z_tt()), ErrorKind::kAssumptionViolated, "Z_TT differs from Z0*I");
    require(is_z0_identity(z_rr()), ErrorKind::kAssumptionViolated, "Z_RR differs from Z0*I");
  }
  if (flags_.matched_ris) {
    for (int i = 0; i < l; ++i)
      require(is_z0_identity(z_ii_block(i)), ErrorKind::kAssumptionViolated,
              "Z_II of " + ris_name(i) + " differs from Z0*I");
  }
  if (flags_.pure_cascade) {
    require(is_zero(z_rt()), ErrorKind::kAssumptionViolated, "Z_RT is nonzero (pure cascade)");
    for (int i = 1; i < l; ++i)
      require(is_zero(z_it_block(i)), ErrorKind::kAssumptionViolated,
              "Z_IT of " + ris_name(i) + " is nonzero (pure cascade)");
    for (int i = 0; i + 1 < l; ++i)
      require(is_zero(z_ri_block(i)), ErrorKind::kAssumptionViolated,
              "Z_RI of " + ris_name(i) + " is nonzero (pure cascade)");
  }
}

void RisLoadStack::validate(const Dimensions& dims) const {
  require(static_cast<int>(loads.size()) == dims.l, ErrorKind::kDimensionMismatch,
          "load stack has " + std::to_string(loads.size()) + " entries, expected " + std::to_string(dims.l));
  for (const auto& z : loads)
    require(z.rows() == dims.n_i && z.cols() == dims.n_i, ErrorKind::kDimensionMismatch,
            "RIS load must be n_i x n_i");
}

CMat RisLoadStack::block_diagonal() const {
  Eigen::Index total = 0;
  for (const auto& z : loads) total += z.rows();
  CMat out = CMat::Zero(total, total);
  Eigen::Index off = 0;
  for (const auto& z : loads) {
    out.block(off, off, z.rows(), z.cols()) = z;
    off += z.rows();
  }
  return out;
}

bool RisLoadStack::is_lossless(double tol) const {
  for (const auto& z : loads) {
    const double scale = std::max(z.cwiseAbs().maxCoeff(), 1.0);
    if (z.real().cwiseAbs().maxCoeff() > tol * scale) return false;
  }
  return true;
}

CMat BlockLowerInverse::assemble() const {
  const std::size_t l = blocks.size();
  if (l == 0) return CMat();
  const Eigen::Index n = blocks[0][0].rows();
  CMat out(static_cast<Eigen::Index>(l) * n, static_cast<Eigen::Index>(l) * n);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      out.block(static_cast<Eigen::Index>(i) * n, static_cast<Eigen::Index>(j) * n, n, n) = blocks[i][j];
  return out;
}

BlockLowerInverse block_subdiagonal_inverse(const std::vector<CMat>& diagonal,
                                            const std::vector<CMat>& subdiagonal) {
  const std::size_t l = diagonal.size();
  require(l >= 1, ErrorKind::kDimensionMismatch, "at least one diagonal block is required");
  require(subdiagonal.size() + 1 == l, ErrorKind::kDimensionMismatch,
          "expected " + std::to_string(l - 1) + " subdiagonal blocks");
  const Eigen::Index n = diagonal[0].rows();
  for (const auto& d : diagonal)
    require(d.rows() == n && d.cols() == n, ErrorKind::kDimensionMismatch, "diagonal blocks must be NxN");
  for (const auto& s : subdiagonal)
    require(s.rows() == n && s.cols() == n, ErrorKind::kDimensionMismatch, "subdiagonal blocks must be NxN");

  std::vector<CMat> d_inv(l);
  for (std::size_t k = 0; k < l; ++k) {
    try {
      d_inv[k] = checked_inverse(diagonal[k], "diagonal block");
    } catch (const Error& e) {
      throw Error(ErrorKind::kSingularDiagonalBlock,
                  "diagonal block " + std::to_string(k) + " is not invertible (" + e.what() + ")");
    }
  }

  // S_{k+1,k} D_k^{-1}, the factors of every below-diagonal product.
  std::vector<CMat> hop(l > 0 ? l - 1 : 0);
  for (std::size_t k = 0; k + 1 < l; ++k) hop[k] = subdiagonal[k] * d_inv[k];

  BlockLowerInverse out;
  out.blocks.assign(l, std::vector<CMat>(l, CMat::Zero(n, n)));
  for (std::size_t i = 0; i < l; ++i) {
    out.blocks[i][i] = d_inv[i];
    for (std::size_t j = 0; j < i; ++j) {
      // ∏ over k = i−1 down to j, multiplied left to right in that order.
      CMat product = hop[i - 1];
      for (std::size_t k = i - 1; k-- > j;) product = product * hop[k];
      const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      out.blocks[i][j] = sign * (d_inv[i] * product);
    }
  }
  return out;
}

namespace {

void require_flags(const MultiportNetwork& net, const RisLoadStack& loads, bool ok, const char* model) {
  loads.validate(net.dims());
  require(ok, ErrorKind::kAssumptionViolated, std::string(model) + " model requires assumptions not asserted on the network");
}

// Z0 (Z0 I + Z_RR)^{-1} · middle · Z_TT^{-1}
CMat apply_terminals(const MultiportNetwork& net, const CMat& middle) {
  const double z0 = net.z0();
  const CMat rx = z0 * CMat::Identity(net.dims().n_r, net.dims().n_r) + net.z_rr();
  const CMat left = checked_solve(rx, middle, "Z0*I + Z_RR");
  // left · Z_TT^{-1} = (Z_TT^{-T} left^T)^T
  const CMat right = checked_solve(net.z_tt().transpose(), left.transpose(), "Z_TT").transpose();
  return z0 * right;
}

}  // namespace

CMat channel_z_general(const MultiportNetwork& net, const RisLoadStack& loads) {
  require_flags(net, loads, net.flags().terminal_unilateral, "general");
  const CMat system = loads.block_diagonal() + net.z_ii();
  const CMat middle = net.z_rt() - net.z_ri() * checked_solve(system, net.z_it(), "Z_I + Z_II");
  return apply_terminals(net, middle);
}

CMat channel_z_cascade(const MultiportNetwork& net, const RisLoadStack& loads) {
  const auto& f = net.flags();
  require_flags(net, loads, f.terminal_unilateral && f.ris_unilateral && f.cascade_obstruction, "cascade");
  const int l = net.dims().l;

  std::vector<CMat> diag(l);
  std::vector<CMat> sub(l - 1);
  for (int k = 0; k < l; ++k) diag[k] = loads.loads[k] + net.z_ii_block(k);
  for (int k = 0; k + 1 < l; ++k) sub[k] = net.z_inter(k + 1, k);
  const BlockLowerInverse y = block_subdiagonal_inverse(diag, sub);

  CMat middle = net.z_rt();
  for (int i = 0; i < l; ++i) middle -= net.z_ri_block(i) * y.at(i, i) * net.z_it_block(i);
  for (int i = 1; i < l; ++i) {
    CMat inner = CMat::Zero(net.dims().n_i, net.dims().n_t);
    for (int k = 0; k < i; ++k) inner += y.at(i, k) * net.z_it_block(k);
    middle -= net.z_ri_block(i) * inner;
  }
  return apply_terminals(net, middle);
}

CMat channel_z_matched(const MultiportNetwork& net, const RisLoadStack& loads) {
  const auto& f = net.flags();
  require_flags(net, loads,
                f.terminal_unilateral && f.ris_unilateral && f.cascade_obstruction && f.matched_terminals &&
                    f.matched_ris,
                "matched");
  const int l = net.dims().l;
  const double z0 = net.z0();
  const CMat eye = CMat::Identity(net.dims().n_i, net.dims().n_i);

  std::vector<CMat> y(l);
  for (int k = 0; k < l; ++k) y[k] = checked_inverse(loads.loads[k] + z0 * eye, "Z_I + Z0*I");

  CMat middle = net.z_rt();
  for (int i = 0; i < l; ++i) middle -= net.z_ri_block(i) * y[i] * net.z_it_block(i);
  for (int i = 1; i < l; ++i) {
    CMat inner = CMat::Zero(net.dims().n_i, net.dims().n_t);
    for (int k = 0; k < i; ++k) {
      CMat product = net.z_inter(i, i - 1) * y[i - 1];
      for (int p = i - 2; p >= k; --p) product = product * (net.z_inter(p + 1, p) * y[p]);
      const double sign = ((i - k) % 2 == 0) ? 1.0 : -1.0;
      inner += sign * (y[i] * product * net.z_it_block(k));
    }
    middle -= net.z_ri_block(i) * inner;
  }
  return middle / (2.0 * z0);
}

CMat channel_z_pure_cascade(const MultiportNetwork& net, const RisLoadStack& loads) {
  const auto& f = net.flags();
  require_flags(net, loads,
                f.terminal_unilateral && f.ris_unilateral && f.cascade_obstruction && f.matched_terminals &&
                    f.matched_ris && f.pure_cascade,
                "pure-cascade");
  const int l = net.dims().l;
  const double z0 = net.z0();
  const CMat eye = CMat::Identity(net.dims().n_i, net.dims().n_i);

  CMat acc = net.z_ri_block(l - 1) * checked_inverse(loads.loads[l - 1] + z0 * eye, "Z_I + Z0*I");
  for (int k = l - 2; k >= 0; --k)
    acc = acc * (net.z_inter(k + 1, k) * checked_inverse(loads.loads[k] + z0 * eye, "Z_I + Z0*I"));
  acc = acc * net.z_it_block(0);
  const double sign = ((l - 1) % 2 == 0) ? 1.0 : -1.0;
  return (-sign / (2.0 * z0)) * acc;
}

CMat z_to_scattering(const CMat& z_load, double z0) {
  require(z_load.rows() == z_load.cols(), ErrorKind::kDimensionMismatch, "load must be square");
  const CMat eye = CMat::Identity(z_load.rows(), z_load.cols());
  return checked_solve(z_load + z0 * eye, z_load - z0 * eye, "Z + Z0*I");
}

CMat scattering_to_z(const CMat& theta, double z0) {
  require(theta.rows() == theta.cols(), ErrorKind::kDimensionMismatch, "scattering matrix must be square");
  const CMat eye = CMat::Identity(theta.rows(), theta.cols());
  CMat right;
  try {
    // (I + Θ)(I − Θ)^{-1} = ((I − Θ)^{-T}(I + Θ)^T)^T
    right = checked_solve((eye - theta).transpose(), (eye + theta).transpose(), "I - Theta").transpose();
  } catch (const Error& e) {
    throw Error(ErrorKind::kOpenCircuitSingularity,
                std::string("scattering matrix has an eigenvalue at 1 (open-circuit load): ") + e.what());
  }
  return z0 * right;
}

CMat normalize_z_to_channel(const CMat& z_block, double z0) { return z_block / (2.0 * z0); }

}  // namespace ris
