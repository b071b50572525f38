// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo campaigns over (scenario, L, N_I) grids. Each trial draws
// one cascade that every requested (model, architecture) pair shares, so η and
// ρ are computed from paired realisations. Trials run serially or on an
// OpenMP team; both paths produce identical tables.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ris/channel_gen.hpp"
#include "ris/optimizer.hpp"

namespace ris {

enum class ModelSelection { kPhysics, kWidelyUsed, kSuboptimalCross };

std::string_view to_string(ModelSelection m);

enum class OutputFormat { kCsv, kJson };

struct ScenarioSpec {
  FadingKind kind = FadingKind::kLos;
  std::vector<double> rician_k;  // swept only for the Rician scenario
};

struct OptimizerOverrides {
  int max_outer_iters = 100;
  int max_inner_iters = 50;
  double rel_tol = 1e-6;
  InitPolicy init = InitPolicy::kRandomPhase;
};

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::kCsv;
};

struct ExperimentSpec {
  ScenarioSpec scenario;
  std::vector<int> l_grid{2};
  std::vector<int> n_i_grid{16};
  int n_t = 2;
  int n_r = 2;
  int trials = 1000;
  std::map<int, int> trials_by_n_i;  // per-N_I overrides of `trials`
  std::uint64_t seed = 1;
  std::vector<ModelSelection> models{ModelSelection::kPhysics, ModelSelection::kWidelyUsed};
  std::vector<Architecture> architectures{Architecture::kDiagonal};
  OptimizerOverrides optimizer;
  OutputSpec output;

  int trials_for(int n_i) const;
  bool has_model(ModelSelection m) const;
  /// Throws InvalidSpec on empty grids, trials < 1, or a cross evaluation
  /// without both models.
  void validate() const;
};

/// Strict parse: unknown keys anywhere are rejected with InvalidSpec.
ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

struct GainRow {
  std::string scenario;
  ModelSelection model = ModelSelection::kPhysics;
  Architecture architecture = Architecture::kDiagonal;
  int l = 0;
  int n_i = 0;
  std::optional<double> k;
  int trials = 0;
  double mean_gain = 0.0;
  double std_err = 0.0;
  double bound_mean = 0.0;
  std::optional<double> eta;
  std::optional<double> rho;
  double converged_frac = 0.0;

  bool operator==(const GainRow&) const = default;
};

struct GainTable {
  ExperimentSpec spec;
  std::vector<GainRow> rows;
};

/// Per-trial gains of one (model, architecture) pair.
struct TrialSamples {
  std::vector<double> gains;
  std::vector<double> bounds;
  std::vector<char> converged;
};

/// One grid point of the campaign.
struct GridPoint {
  std::optional<double> k;
  int l = 1;
  int n_i = 1;
};

std::vector<GridPoint> grid_points(const ExperimentSpec& spec);

/// Outcomes of every trial at a point, keyed by (model, architecture).
using PointSamples = std::map<std::pair<ModelSelection, Architecture>, TrialSamples>;

/// Reference implementation: trials in index order on the calling thread.
PointSamples run_point_serial(const ExperimentSpec& spec, const GridPoint& point);

/// Trials distributed over `threads` OpenMP threads; each trial owns its
/// random sub-stream, so the result equals run_point_serial.
PointSamples run_point_parallel(const ExperimentSpec& spec, const GridPoint& point, int threads);

/// Runs every grid point and aggregates means, standard errors, bounds, η, ρ.
/// `threads` ≤ 1 uses the serial path.
GainTable run_experiment(const ExperimentSpec& spec, int threads = 1);

std::vector<std::string_view> preset_names();
/// Throws UnknownPreset.
ExperimentSpec figure_preset(std::string_view name);

/// CSV columns: scenario, model, architecture, L, N_I, K, trials, mean_gain,
/// std_err, bound_mean, eta, rho, converged_frac.
std::string table_to_csv(const GainTable& table);
nlohmann::json table_to_json(const GainTable& table);
std::vector<GainRow> rows_from_json(const nlohmann::json& j);

/// Writes the table; CSV output also writes `<path>.spec.json` holding the
/// spec and seed. Throws IoError.
void emit(const GainTable& table, OutputFormat format, const std::string& path);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::string to_text() const;
};

struct ValidationOptions {
  std::uint64_t seed = 20240601;
  /// Mutation hook: flips the sign of the structural-scattering term in the
  /// multi-sector equivalence check; a correct suite must then fail.
  bool inject_structural_sign_error = false;
};

/// Runs the oracle and invariant suite and reports every measured error.
ValidationReport validate(const ValidationOptions& options = {});

}  // namespace ris
