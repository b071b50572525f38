// SPDX-License-Identifier: Apache-2.0
#include "ris/channel_gen.hpp"

#include <cmath>
#include <numbers>

#include "ris/error.hpp"

namespace ris {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Unit-variance circularly-symmetric complex Gaussian.
cdouble draw_cn(std::mt19937_64& eng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(eng);
  const double im = n(eng);
  return {re, im};
}

CVec unit_phasors(int n, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  CVec v(n);
  for (int k = 0; k < n; ++k) v(k) = std::polar(1.0, phase(eng));
  return v;
}

CMat cn_matrix(int rows, int cols, std::mt19937_64& eng) {
  CMat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = draw_cn(eng);
  return m;
}

}  // namespace

RandomStream RandomStream::child(std::uint64_t tag) const {
  RandomStream out = *this;
  out.label_.push_back(tag);
  return out;
}

RandomStream RandomStream::child(std::string_view tag) const { return child(fnv1a(tag)); }

std::mt19937_64 RandomStream::engine() const {
  std::uint64_t h = splitmix64(seed_);
  for (std::uint64_t part : label_) h = splitmix64(h ^ splitmix64(part + 0x632BE59BD9B4E019ULL));
  return std::mt19937_64(h);
}

std::string_view to_string(FadingKind kind) {
  switch (kind) {
    case FadingKind::kLos: return "los";
    case FadingKind::kRayleigh: return "rayleigh";
    case FadingKind::kRician: return "rician";
  }
  return "unknown";
}

LosLink draw_los_link(int rows, int cols, double path_gain, const RandomStream& stream) {
  auto eng = stream.engine();
  LosLink link;
  link.path_gain = path_gain;
  link.a = unit_phasors(rows, eng);
  link.b = unit_phasors(cols, eng);
  return link;
}

CMat gen_los_link(int rows, int cols, double path_gain, const RandomStream& stream) {
  return draw_los_link(rows, cols, path_gain, stream).matrix();
}

CMat gen_rayleigh_link(int rows, int cols, double path_gain, const RandomStream& stream) {
  auto eng = stream.engine();
  return path_gain * cn_matrix(rows, cols, eng);
}

CMat gen_rician_link(int rows, int cols, const FadingSpec& spec, const RandomStream& stream) {
  if (spec.kind != FadingKind::kRician) throw Error(ErrorKind::kInvalidSpec, "gen_rician_link needs a rician spec");
  if (!std::isfinite(spec.rician_k) || spec.rician_k < 0.0)
    throw Error(ErrorKind::kInvalidSpec, "Rician factor must be finite and nonnegative");
  const double k = spec.rician_k;
  const CMat los = gen_los_link(rows, cols, 1.0, stream.child("los"));
  const CMat diffuse = gen_rayleigh_link(rows, cols, 1.0, stream.child("diffuse"));
  return spec.path_gain * (std::sqrt(k / (k + 1.0)) * los + std::sqrt(1.0 / (k + 1.0)) * diffuse);
}

CMat gen_link(int rows, int cols, const FadingSpec& spec, const RandomStream& stream) {
  switch (spec.kind) {
    case FadingKind::kLos: return gen_los_link(rows, cols, spec.path_gain, stream);
    case FadingKind::kRayleigh: return gen_rayleigh_link(rows, cols, spec.path_gain, stream);
    case FadingKind::kRician: return gen_rician_link(rows, cols, spec, stream);
  }
  throw Error(ErrorKind::kInvalidSpec, "unknown fading kind");
}

CascadeChannels gen_cascade(const Dimensions& dims, const std::vector<FadingSpec>& specs, const RandomStream& stream) {
  dims.validate();
  const auto links = static_cast<std::size_t>(dims.l + 1);
  if (specs.size() != 1 && specs.size() != links)
    throw Error(ErrorKind::kDimensionMismatch, "need one fading spec or one per link");
  auto spec_of = [&](std::size_t k) -> const FadingSpec& { return specs.size() == 1 ? specs[0] : specs[k]; };

  CascadeChannels ch;
  ch.h_it_1 = gen_link(dims.n_i, dims.n_t, spec_of(0), stream.child(0));
  for (int k = 1; k < dims.l; ++k)
    ch.inter.push_back(gen_link(dims.n_i, dims.n_i, spec_of(static_cast<std::size_t>(k)), stream.child(static_cast<std::uint64_t>(k))));
  ch.h_ri_l = gen_link(dims.n_r, dims.n_i, spec_of(links - 1), stream.child(links - 1));
  return ch;
}

ScatteringStack random_phase_stack(int l, int n_i, const RandomStream& stream) {
  auto eng = stream.engine();
  ScatteringStack out;
  out.architecture = Architecture::kDiagonal;
  for (int k = 0; k < l; ++k) out.thetas.push_back(unit_phasors(n_i, eng).asDiagonal());
  return out;
}

MultiportNetwork synthesize_network(const Dimensions& dims, double z0, const AssumptionFlags& flags,
                                    const RandomStream& stream) {
  dims.validate();
  auto eng = stream.engine();
  const int n = dims.total_ports();
  const int nt = dims.n_t;
  const int ni = dims.n_i;
  const int l = dims.l;
  const int rx = nt + l * ni;
  auto ris = [&](int k) { return nt + k * ni; };

  CMat z = CMat::Zero(n, n);
  auto self_block = [&](int rows, bool matched) {
    CMat m = z0 * CMat::Identity(rows, rows);
    if (!matched) m += 0.1 * z0 * cn_matrix(rows, rows, eng);
    return m;
  };
  auto transmission = [&](int rows, int cols, double scale) { return CMat(scale * z0 * cn_matrix(rows, cols, eng)); };

  z.block(0, 0, nt, nt) = self_block(nt, flags.matched_terminals);
  z.block(rx, rx, dims.n_r, dims.n_r) = self_block(dims.n_r, flags.matched_terminals);
  for (int i = 0; i < l; ++i) {
    z.block(ris(i), ris(i), ni, ni) = self_block(ni, flags.matched_ris);
    for (int j = 0; j < l; ++j) {
      if (i == j) continue;
      const bool feedback = i < j;
      const bool far = i - j >= 2;
      if ((feedback && flags.ris_unilateral) || (far && flags.cascade_obstruction)) continue;
      z.block(ris(i), ris(j), ni, ni) = transmission(ni, ni, feedback ? 0.05 : 0.5);
    }
    const bool it_blocked = flags.pure_cascade && i > 0;
    const bool ri_blocked = flags.pure_cascade && i + 1 < l;
    if (!it_blocked) z.block(ris(i), 0, ni, nt) = transmission(ni, nt, 0.5);
    if (!ri_blocked) z.block(rx, ris(i), dims.n_r, ni) = transmission(dims.n_r, ni, 0.5);
  }
  if (!flags.pure_cascade) z.block(rx, 0, dims.n_r, nt) = transmission(dims.n_r, nt, 0.5);
  if (!flags.terminal_unilateral) {
    z.block(0, nt, nt, l * ni) = transmission(nt, l * ni, 0.05);
    z.block(0, rx, nt, dims.n_r) = transmission(nt, dims.n_r, 0.05);
    z.block(nt, rx, l * ni, dims.n_r) = transmission(l * ni, dims.n_r, 0.05);
  }
  return MultiportNetwork(dims, z0, std::move(z), flags);
}

RisLoadStack random_reactive_loads(const Dimensions& dims, double z0, const RandomStream& stream, bool diagonal,
                                   bool symmetric) {
  auto eng = stream.engine();
  std::normal_distribution<double> g(0.0, 1.0);
  RisLoadStack out;
  for (int k = 0; k < dims.l; ++k) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dims.n_i, dims.n_i);
    for (int r = 0; r < dims.n_i; ++r)
      for (int c = 0; c < dims.n_i; ++c)
        if (!diagonal || r == c) x(r, c) = z0 * g(eng);
    if (symmetric) x = 0.5 * (x + x.transpose()).eval();
    out.loads.push_back(cdouble(0.0, 1.0) * x.cast<cdouble>());
  }
  return out;
}

RisLoadStack random_lossy_loads(const Dimensions& dims, double z0, const RandomStream& stream) {
  auto eng = stream.engine();
  std::uniform_real_distribution<double> u(0.5, 1.5);
  RisLoadStack out;
  for (int k = 0; k < dims.l; ++k) {
    CMat m = 0.3 * z0 * cn_matrix(dims.n_i, dims.n_i, eng);
    for (int r = 0; r < dims.n_i; ++r) m(r, r) += z0 * u(eng);
    out.loads.push_back(std::move(m));
  }
  return out;
}

}  // namespace ris
