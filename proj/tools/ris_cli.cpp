// SPDX-License-Identifier: Apache-2.0
//
// ris_cli run --preset los-diff --trials 200 --out los.csv
// ris_cli run --spec my_spec.json --parallel 8 --format json
// ris_cli validate
// ris_cli presets
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ris/error.hpp"
#include "ris/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBadInput = 2;

ris::ExperimentSpec load_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ris::Error(ris::ErrorKind::kIoError, "cannot open spec '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ris::Error(ris::ErrorKind::kInvalidSpec, std::string("spec is not valid JSON: ") + e.what());
  }
  return ris::spec_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-RIS channel model experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a Monte Carlo campaign");
  std::string spec_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out;
  std::string format;
  int parallel = 1;
  auto* spec_opt = run->add_option("--spec", spec_path, "Experiment spec (JSON)")->check(CLI::ExistingFile);
  auto* preset_opt = run->add_option("--preset", preset, "Named figure preset");
  spec_opt->excludes(preset_opt);
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--trials", trials, "Trials per grid point (overrides every per-point count)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Output path; '-' writes to stdout");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--parallel", parallel, "Worker threads for trial-level parallelism")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Run the oracle and invariant suite");
  bool mutate = false;
  validate->add_flag("--inject-structural-sign-error", mutate, "Mutation check: the suite must then fail");

  app.add_subcommand("presets", "List figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (app.got_subcommand("presets")) {
      for (auto name : ris::preset_names()) std::cout << name << '\n';
      return kExitOk;
    }
    if (app.got_subcommand("validate")) {
      ris::ValidationOptions opts;
      opts.inject_structural_sign_error = mutate;
      const auto report = ris::validate(opts);
      std::cout << report.to_text();
      return report.all_passed() ? kExitOk : kExitValidation;
    }

    if (spec_path.empty() && preset.empty()) {
      std::cerr << "run: one of --spec or --preset is required\n";
      return kExitBadInput;
    }
    ris::ExperimentSpec spec = spec_path.empty() ? ris::figure_preset(preset) : load_spec(spec_path);
    if (seed) spec.seed = *seed;
    if (trials) {
      spec.trials = *trials;
      spec.trials_by_n_i.clear();
    }
    if (!out.empty()) spec.output.path = out;
    if (!format.empty()) spec.output.format = format == "json" ? ris::OutputFormat::kJson : ris::OutputFormat::kCsv;
    spec.validate();

    const auto table = ris::run_experiment(spec, parallel);
    if (spec.output.path.empty() || spec.output.path == "-") {
      if (spec.output.format == ris::OutputFormat::kJson)
        std::cout << ris::table_to_json(table).dump(2) << '\n';
      else
        std::cout << ris::table_to_csv(table);
    } else {
      ris::emit(table, spec.output.format, spec.output.path);
      std::cerr << "wrote " << table.rows.size() << " rows to " << spec.output.path << '\n';
    }
    return kExitOk;
  } catch (const ris::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ris::ErrorKind::kInvalidSpec:
      case ris::ErrorKind::kUnknownPreset:
      case ris::ErrorKind::kIoError:
        return kExitBadInput;
      default:
        return kExitValidation;
    }
  }
}
