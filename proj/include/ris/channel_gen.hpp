// SPDX-License-Identifier: Apache-2.0
//
// Seeded random channel realisations. Every generator is a pure function of
// its RandomStream, so trials can be drawn in any order or in parallel.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "ris/linalg.hpp"
#include "ris/multiport.hpp"
#include "ris/scattering.hpp"

namespace ris {

/// (master seed, label path) → an independent engine. Identical pairs give
/// identical draws; differing labels give unrelated streams.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

  RandomStream child(std::uint64_t tag) const;
  RandomStream child(std::string_view tag) const;

  std::uint64_t seed() const { return seed_; }
  const std::vector<std::uint64_t>& label() const { return label_; }

  /// Fresh engine positioned at the start of this stream.
  std::mt19937_64 engine() const;

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> label_;
};

/// Rank-one line-of-sight link Λ·a·bᵀ with unit-modulus a and b.
struct LosLink {
  double path_gain = 1.0;
  CVec a;
  CVec b;

  CMat matrix() const { return path_gain * a * b.transpose(); }
};

enum class FadingKind { kLos, kRayleigh, kRician };

std::string_view to_string(FadingKind kind);

struct FadingSpec {
  FadingKind kind = FadingKind::kLos;
  double rician_k = 0.0;
  double path_gain = 1.0;

  static FadingSpec los(double gain = 1.0) { return {FadingKind::kLos, 0.0, gain}; }
  static FadingSpec rayleigh(double gain = 1.0) { return {FadingKind::kRayleigh, 0.0, gain}; }
  static FadingSpec rician(double k, double gain = 1.0) { return {FadingKind::kRician, k, gain}; }
};

LosLink draw_los_link(int rows, int cols, double path_gain, const RandomStream& stream);

/// Λ·a·bᵀ with i.i.d. uniform phases on [0, 2π).
CMat gen_los_link(int rows, int cols, double path_gain, const RandomStream& stream);

/// i.i.d. CN(0, Λ²) entries.
CMat gen_rayleigh_link(int rows, int cols, double path_gain, const RandomStream& stream);

/// Λ(√(K/(K+1))·H_los + √(1/(K+1))·H_rayleigh), unit-gain components.
CMat gen_rician_link(int rows, int cols, const FadingSpec& spec, const RandomStream& stream);

/// Dispatch on spec.kind.
CMat gen_link(int rows, int cols, const FadingSpec& spec, const RandomStream& stream);

/// Pure cascade with independent sub-streams per link: link 0 is H_IT,1,
/// links 1 .. l−1 the inter-RIS hops, link l is H_RI,L. `specs` holds one
/// entry per link (l + 1) or a single entry applied to all.
CascadeChannels gen_cascade(const Dimensions& dims, const std::vector<FadingSpec>& specs,
                            const RandomStream& stream);

/// Random diagonal scattering stack with i.i.d. uniform phases.
ScatteringStack random_phase_stack(int l, int n_i, const RandomStream& stream);

/// Random impedance network honouring exactly the asserted assumptions;
/// unasserted blocks are filled with random values. Transmission blocks are
/// O(Z0), self-impedances are Z0·I plus a small random perturbation.
MultiportNetwork synthesize_network(const Dimensions& dims, double z0, const AssumptionFlags& flags,
                                    const RandomStream& stream);

/// Purely reactive loads jX with X real; symmetric when `symmetric` is set,
/// diagonal when `diagonal` is set.
RisLoadStack random_reactive_loads(const Dimensions& dims, double z0, const RandomStream& stream,
                                   bool diagonal = false, bool symmetric = true);

/// General (lossy, non-symmetric) loads with positive-real diagonal.
RisLoadStack random_lossy_loads(const Dimensions& dims, double z0, const RandomStream& stream);

}  // namespace ris
