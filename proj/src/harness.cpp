// SPDX-License-Identifier: Apache-2.0
#include "ris/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <omp.h>

#include "ris/error.hpp"
#include "ris/scaling_laws.hpp"

namespace ris {

using nlohmann::json;

namespace {

[[noreturn]] void bad_spec(const std::string& what) { throw Error(ErrorKind::kInvalidSpec, what); }

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) bad_spec(where + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key)) bad_spec("unknown key '" + key + "' in " + where);
}

ModelSelection model_from_string(const std::string& s) {
  if (s == "physics") return ModelSelection::kPhysics;
  if (s == "widely_used") return ModelSelection::kWidelyUsed;
  if (s == "suboptimal_cross") return ModelSelection::kSuboptimalCross;
  bad_spec("unknown model '" + s + "'");
}

FadingKind fading_from_string(const std::string& s) {
  if (s == "los") return FadingKind::kLos;
  if (s == "rayleigh") return FadingKind::kRayleigh;
  if (s == "rician") return FadingKind::kRician;
  bad_spec("unknown scenario '" + s + "'");
}

InitPolicy init_from_string(const std::string& s) {
  if (s == "identity") return InitPolicy::kIdentity;
  if (s == "random_phase") return InitPolicy::kRandomPhase;
  bad_spec("unknown optimizer init '" + s + "'");
}

std::string_view to_string(InitPolicy p) { return p == InitPolicy::kIdentity ? "identity" : "random_phase"; }

std::string_view to_string(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json"; }

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  bad_spec("unknown output format '" + s + "'");
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad_spec("key '" + key + "' has the wrong type");
  }
}

std::vector<int> int_or_list(const json& j, const std::string& key) {
  if (j.is_number_integer()) return {j.get<int>()};
  if (j.is_array()) return get_as<std::vector<int>>(j, key);
  bad_spec("key '" + key + "' must be an integer or a list of integers");
}

// Everything one trial produces: per (model, architecture) gain, bound, convergence.
struct TrialOutcome {
  struct Entry {
    double gain = 0.0;
    double bound = 0.0;
    bool converged = true;
  };
  std::map<std::pair<ModelSelection, Architecture>, Entry> entries;
};

FadingSpec fading_for(const ExperimentSpec& spec, const GridPoint& point) {
  switch (spec.scenario.kind) {
    case FadingKind::kLos: return FadingSpec::los();
    case FadingKind::kRayleigh: return FadingSpec::rayleigh();
    case FadingKind::kRician: return FadingSpec::rician(point.k.value_or(0.0));
  }
  return FadingSpec::los();
}

// The Rician factor is deliberately absent from the label path: every K at a
// given (L, N_I, trial) mixes the same LoS and diffuse draws, so η(K) curves
// use common random numbers.
RandomStream trial_stream(const ExperimentSpec& spec, const GridPoint& point, int trial) {
  return RandomStream(spec.seed)
      .child("trial")
      .child(static_cast<std::uint64_t>(point.l))
      .child(static_cast<std::uint64_t>(point.n_i))
      .child(static_cast<std::uint64_t>(trial));
}

TrialOutcome evaluate_trial(const ExperimentSpec& spec, const GridPoint& point, int trial) {
  const RandomStream stream = trial_stream(spec, point, trial);
  const Dimensions dims{spec.n_t, spec.n_r, point.n_i, point.l};
  const CascadeChannels ch = gen_cascade(dims, {fading_for(spec, point)}, stream.child("channels"));
  const std::uint64_t init_seed = stream.child("init").engine()();

  const double bound_physics = upper_bound_physics(ch);
  const double bound_widely = upper_bound_widely(ch);
  const bool closed_form_los = spec.scenario.kind == FadingKind::kLos;

  TrialOutcome out;
  for (Architecture arch : spec.architectures) {
    auto solve = [&](ChannelModel model) -> std::pair<ScatteringStack, bool> {
      if (closed_form_los && arch == Architecture::kDiagonal) {
        return {model == ChannelModel::kPhysics ? los_optimal_phases_physics(ch) : los_optimal_phases_widely(ch), true};
      }
      OptimizerConfig cfg;
      cfg.max_outer_iters = spec.optimizer.max_outer_iters;
      cfg.max_inner_iters = spec.optimizer.max_inner_iters;
      cfg.rel_tol = spec.optimizer.rel_tol;
      cfg.init = spec.optimizer.init;
      cfg.init_seed = init_seed;
      cfg.architecture = arch;
      cfg.model = model;
      auto res = alg1_optimize(ch, cfg);
      return {std::move(res.stack), res.converged};
    };

    if (spec.has_model(ModelSelection::kPhysics)) {
      const auto [stack, converged] = solve(ChannelModel::kPhysics);
      out.entries[{ModelSelection::kPhysics, arch}] = {model_gain(ch, stack, ChannelModel::kPhysics), bound_physics,
                                                       converged};
    }
    if (spec.has_model(ModelSelection::kWidelyUsed) || spec.has_model(ModelSelection::kSuboptimalCross)) {
      const auto [stack, converged] = solve(ChannelModel::kWidelyUsed);
      if (spec.has_model(ModelSelection::kWidelyUsed))
        out.entries[{ModelSelection::kWidelyUsed, arch}] = {model_gain(ch, stack, ChannelModel::kWidelyUsed),
                                                            bound_widely, converged};
      if (spec.has_model(ModelSelection::kSuboptimalCross))
        out.entries[{ModelSelection::kSuboptimalCross, arch}] = {model_gain(ch, stack, ChannelModel::kPhysics),
                                                                 bound_physics, converged};
    }
  }
  return out;
}

PointSamples merge(const std::vector<TrialOutcome>& outcomes) {
  PointSamples samples;
  for (const auto& trial : outcomes) {
    for (const auto& [key, e] : trial.entries) {
      auto& s = samples[key];
      s.gains.push_back(e.gain);
      s.bounds.push_back(e.bound);
      s.converged.push_back(e.converged ? 1 : 0);
    }
  }
  return samples;
}

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double std_err_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

}  // namespace

std::string_view to_string(ModelSelection m) {
  switch (m) {
    case ModelSelection::kPhysics: return "physics";
    case ModelSelection::kWidelyUsed: return "widely_used";
    case ModelSelection::kSuboptimalCross: return "suboptimal_cross";
  }
  return "unknown";
}

int ExperimentSpec::trials_for(int n_i) const {
  const auto it = trials_by_n_i.find(n_i);
  return it == trials_by_n_i.end() ? trials : it->second;
}

bool ExperimentSpec::has_model(ModelSelection m) const {
  return std::find(models.begin(), models.end(), m) != models.end();
}

void ExperimentSpec::validate() const {
  if (l_grid.empty() || n_i_grid.empty()) bad_spec("l and n_i_grid must be nonempty");
  if (models.empty() || architectures.empty()) bad_spec("models and architectures must be nonempty");
  if (scenario.kind == FadingKind::kRician && scenario.rician_k.empty()) bad_spec("rician scenario needs a K list");
  for (double k : scenario.rician_k)
    if (!std::isfinite(k) || k < 0.0) bad_spec("Rician factors must be finite and nonnegative");
  for (int l : l_grid)
    if (l < 1) bad_spec("RIS count must be >= 1");
  for (int n : n_i_grid)
    if (n < 1) bad_spec("element counts must be >= 1");
  if (n_t < 1 || n_r < 1) bad_spec("antenna counts must be >= 1");
  if (trials < 1) bad_spec("trials must be >= 1");
  for (const auto& [n, t] : trials_by_n_i)
    if (t < 1) bad_spec("per-N_I trial overrides must be >= 1");
  if (has_model(ModelSelection::kSuboptimalCross) &&
      !(has_model(ModelSelection::kPhysics) && has_model(ModelSelection::kWidelyUsed)))
    bad_spec("suboptimal_cross requires both physics and widely_used models");
  OptimizerConfig{optimizer.max_outer_iters, optimizer.max_inner_iters, optimizer.rel_tol}.validate();
}

ExperimentSpec spec_from_json(const json& j) {
  reject_unknown_keys(j, {"scenario", "l", "n_i_grid", "n_t", "n_r", "trials", "seed", "models", "architectures",
                          "optimizer", "output"},
                      "spec");
  ExperimentSpec spec;
  if (!j.contains("scenario") || !j.contains("l") || !j.contains("n_i_grid"))
    bad_spec("spec requires scenario, l, and n_i_grid");

  const auto& sc = j.at("scenario");
  if (sc.is_string()) {
    spec.scenario.kind = fading_from_string(sc.get<std::string>());
  } else {
    reject_unknown_keys(sc, {"kind", "k"}, "scenario");
    spec.scenario.kind = fading_from_string(get_as<std::string>(sc.at("kind"), "scenario.kind"));
    if (sc.contains("k")) spec.scenario.rician_k = get_as<std::vector<double>>(sc.at("k"), "scenario.k");
  }
  if (spec.scenario.kind != FadingKind::kRician && !spec.scenario.rician_k.empty())
    bad_spec("scenario.k is only valid for the rician scenario");

  spec.l_grid = int_or_list(j.at("l"), "l");
  spec.n_i_grid = get_as<std::vector<int>>(j.at("n_i_grid"), "n_i_grid");
  if (j.contains("n_t")) spec.n_t = get_as<int>(j.at("n_t"), "n_t");
  if (j.contains("n_r")) spec.n_r = get_as<int>(j.at("n_r"), "n_r");
  if (j.contains("trials")) {
    const auto& t = j.at("trials");
    if (t.is_number_integer()) {
      spec.trials = t.get<int>();
    } else {
      reject_unknown_keys(t, {"default", "by_n_i"}, "trials");
      spec.trials = get_as<int>(t.at("default"), "trials.default");
      if (t.contains("by_n_i")) {
        for (const auto& [key, value] : t.at("by_n_i").items()) {
          int n = 0;
          try {
            n = std::stoi(key);
          } catch (const std::exception&) {
            bad_spec("trials.by_n_i keys must be integers");
          }
          spec.trials_by_n_i[n] = get_as<int>(value, "trials.by_n_i");
        }
      }
    }
  }
  if (j.contains("seed")) spec.seed = get_as<std::uint64_t>(j.at("seed"), "seed");
  if (j.contains("models")) {
    spec.models.clear();
    for (const auto& m : get_as<std::vector<std::string>>(j.at("models"), "models"))
      spec.models.push_back(model_from_string(m));
  }
  if (j.contains("architectures")) {
    spec.architectures.clear();
    for (const auto& a : get_as<std::vector<std::string>>(j.at("architectures"), "architectures")) {
      try {
        spec.architectures.push_back(architecture_from_string(a));
      } catch (const Error&) {
        bad_spec("unknown architecture '" + a + "'");
      }
    }
  }
  if (j.contains("optimizer")) {
    const auto& o = j.at("optimizer");
    reject_unknown_keys(o, {"max_outer_iters", "max_inner_iters", "rel_tol", "init"}, "optimizer");
    if (o.contains("max_outer_iters")) spec.optimizer.max_outer_iters = get_as<int>(o.at("max_outer_iters"), "optimizer.max_outer_iters");
    if (o.contains("max_inner_iters")) spec.optimizer.max_inner_iters = get_as<int>(o.at("max_inner_iters"), "optimizer.max_inner_iters");
    if (o.contains("rel_tol")) spec.optimizer.rel_tol = get_as<double>(o.at("rel_tol"), "optimizer.rel_tol");
    if (o.contains("init")) spec.optimizer.init = init_from_string(get_as<std::string>(o.at("init"), "optimizer.init"));
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    reject_unknown_keys(o, {"path", "format"}, "output");
    if (o.contains("path")) spec.output.path = get_as<std::string>(o.at("path"), "output.path");
    if (o.contains("format")) spec.output.format = format_from_string(get_as<std::string>(o.at("format"), "output.format"));
  }
  spec.validate();
  return spec;
}

json spec_to_json(const ExperimentSpec& spec) {
  json scenario = {{"kind", std::string(to_string(spec.scenario.kind))}};
  if (spec.scenario.kind == FadingKind::kRician) scenario["k"] = spec.scenario.rician_k;
  json trials = spec.trials;
  if (!spec.trials_by_n_i.empty()) {
    json by = json::object();
    for (const auto& [n, t] : spec.trials_by_n_i) by[std::to_string(n)] = t;
    trials = {{"default", spec.trials}, {"by_n_i", by}};
  }
  json models = json::array();
  for (auto m : spec.models) models.push_back(std::string(to_string(m)));
  json archs = json::array();
  for (auto a : spec.architectures) archs.push_back(std::string(to_string(a)));
  return {
      {"scenario", scenario},
      {"l", spec.l_grid},
      {"n_i_grid", spec.n_i_grid},
      {"n_t", spec.n_t},
      {"n_r", spec.n_r},
      {"trials", trials},
      {"seed", spec.seed},
      {"models", models},
      {"architectures", archs},
      {"optimizer",
       {{"max_outer_iters", spec.optimizer.max_outer_iters},
        {"max_inner_iters", spec.optimizer.max_inner_iters},
        {"rel_tol", spec.optimizer.rel_tol},
        {"init", std::string(to_string(spec.optimizer.init))}}},
      {"output", {{"path", spec.output.path}, {"format", std::string(to_string(spec.output.format))}}},
  };
}

std::vector<GridPoint> grid_points(const ExperimentSpec& spec) {
  std::vector<GridPoint> points;
  const bool rician = spec.scenario.kind == FadingKind::kRician;
  const std::size_t k_count = rician ? spec.scenario.rician_k.size() : 1;
  for (std::size_t ki = 0; ki < k_count; ++ki)
    for (int l : spec.l_grid)
      for (int n : spec.n_i_grid) {
        GridPoint p;
        if (rician) p.k = spec.scenario.rician_k[ki];
        p.l = l;
        p.n_i = n;
        points.push_back(p);
      }
  return points;
}

PointSamples run_point_serial(const ExperimentSpec& spec, const GridPoint& point) {
  const int trials = spec.trials_for(point.n_i);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) outcomes[static_cast<std::size_t>(t)] = evaluate_trial(spec, point, t);
  return merge(outcomes);
}

PointSamples run_point_parallel(const ExperimentSpec& spec, const GridPoint& point, int threads) {
  const int trials = spec.trials_for(point.n_i);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(std::max(threads, 1))
  for (int t = 0; t < trials; ++t) {
    try {
      outcomes[static_cast<std::size_t>(t)] = evaluate_trial(spec, point, t);
    } catch (...) {
#pragma omp critical(ris_trial_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return merge(outcomes);
}

GainTable run_experiment(const ExperimentSpec& spec, int threads) {
  spec.validate();
  GainTable table;
  table.spec = spec;
  const std::string scenario(to_string(spec.scenario.kind));

  for (const auto& point : grid_points(spec)) {
    const PointSamples samples = threads > 1 ? run_point_parallel(spec, point, threads) : run_point_serial(spec, point);
    for (Architecture arch : spec.architectures) {
      auto find = [&](ModelSelection m) -> const TrialSamples* {
        const auto it = samples.find({m, arch});
        return it == samples.end() ? nullptr : &it->second;
      };
      std::optional<double> eta;
      std::optional<double> rho;
      const auto* phys = find(ModelSelection::kPhysics);
      const auto* wide = find(ModelSelection::kWidelyUsed);
      const auto* sub = find(ModelSelection::kSuboptimalCross);
      if (phys && wide) eta = mc_relative_difference(phys->gains, wide->gains);
      if (phys && sub) rho = mc_normalized_gain(sub->gains, phys->gains);

      for (ModelSelection m : spec.models) {
        const auto* s = find(m);
        if (!s) continue;
        GainRow row;
        row.scenario = scenario;
        row.model = m;
        row.architecture = arch;
        row.l = point.l;
        row.n_i = point.n_i;
        row.k = point.k;
        row.trials = static_cast<int>(s->gains.size());
        row.mean_gain = mean_of(s->gains);
        row.std_err = std_err_of(s->gains);
        row.bound_mean = mean_of(s->bounds);
        row.eta = eta;
        row.rho = rho;
        row.converged_frac =
            static_cast<double>(std::count(s->converged.begin(), s->converged.end(), 1)) / static_cast<double>(row.trials);
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

std::vector<std::string_view> preset_names() {
  return {"los-gain", "los-diff", "los-rho", "fading-gain", "fading-diff", "fading-rho", "rician-diff", "rician-rho"};
}

ExperimentSpec figure_preset(std::string_view name) {
  ExperimentSpec spec;
  spec.l_grid = {2, 4};
  spec.n_i_grid = {8, 16, 32, 64, 128};
  spec.trials = 1000;
  spec.seed = 1;
  spec.output.path = std::string(name) + ".csv";

  const std::vector<ModelSelection> both{ModelSelection::kPhysics, ModelSelection::kWidelyUsed};
  const std::vector<ModelSelection> with_cross{ModelSelection::kPhysics, ModelSelection::kWidelyUsed,
                                               ModelSelection::kSuboptimalCross};
  const std::vector<Architecture> both_archs{Architecture::kDiagonal, Architecture::kUnitary};

  if (name == "los-gain" || name == "los-diff" || name == "los-rho") {
    spec.scenario.kind = FadingKind::kLos;
    spec.models = name == "los-rho" ? with_cross : both;
    spec.architectures = {Architecture::kDiagonal};
  } else if (name == "fading-gain" || name == "fading-diff" || name == "fading-rho") {
    spec.scenario.kind = FadingKind::kRayleigh;
    spec.models = name == "fading-rho" ? with_cross : both;
    spec.architectures = both_archs;
    spec.trials_by_n_i[128] = 100;
  } else if (name == "rician-diff" || name == "rician-rho") {
    spec.scenario.kind = FadingKind::kRician;
    spec.scenario.rician_k = {0.0, 1.0, 3.0, 10.0, 30.0};
    spec.n_i_grid = {32};
    spec.models = name == "rician-rho" ? with_cross : both;
    spec.architectures = both_archs;
  } else {
    throw Error(ErrorKind::kUnknownPreset, "no preset named '" + std::string(name) + "'");
  }
  spec.validate();
  return spec;
}

std::string table_to_csv(const GainTable& table) {
  std::ostringstream out;
  out << "scenario,model,architecture,L,N_I,K,trials,mean_gain,std_err,bound_mean,eta,rho,converged_frac\n";
  for (const auto& r : table.rows) {
    out << r.scenario << ',' << to_string(r.model) << ',' << to_string(r.architecture) << ',' << r.l << ',' << r.n_i
        << ',' << format_optional(r.k) << ',' << r.trials << ',' << format_number(r.mean_gain) << ','
        << format_number(r.std_err) << ',' << format_number(r.bound_mean) << ',' << format_optional(r.eta) << ','
        << format_optional(r.rho) << ',' << format_number(r.converged_frac) << '\n';
  }
  return out.str();
}

json table_to_json(const GainTable& table) {
  auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"scenario", r.scenario},
                    {"model", std::string(to_string(r.model))},
                    {"architecture", std::string(to_string(r.architecture))},
                    {"L", r.l},
                    {"N_I", r.n_i},
                    {"K", opt(r.k)},
                    {"trials", r.trials},
                    {"mean_gain", r.mean_gain},
                    {"std_err", r.std_err},
                    {"bound_mean", r.bound_mean},
                    {"eta", opt(r.eta)},
                    {"rho", opt(r.rho)},
                    {"converged_frac", r.converged_frac}});
  }
  return {{"spec", spec_to_json(table.spec)}, {"rows", rows}};
}

std::vector<GainRow> rows_from_json(const json& j) {
  auto opt = [](const json& x) { return x.is_null() ? std::optional<double>() : std::optional<double>(x.get<double>()); };
  std::vector<GainRow> rows;
  try {
    for (const auto& r : j.at("rows")) {
      GainRow row;
      row.scenario = r.at("scenario").get<std::string>();
      row.model = model_from_string(r.at("model").get<std::string>());
      row.architecture = architecture_from_string(r.at("architecture").get<std::string>());
      row.l = r.at("L").get<int>();
      row.n_i = r.at("N_I").get<int>();
      row.k = opt(r.at("K"));
      row.trials = r.at("trials").get<int>();
      row.mean_gain = r.at("mean_gain").get<double>();
      row.std_err = r.at("std_err").get<double>();
      row.bound_mean = r.at("bound_mean").get<double>();
      row.eta = opt(r.at("eta"));
      row.rho = opt(r.at("rho"));
      row.converged_frac = r.at("converged_frac").get<double>();
      rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    bad_spec(std::string("malformed result table: ") + e.what());
  }
  return rows;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::kIoError, "cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw Error(ErrorKind::kIoError, "failed writing '" + path + "'");
}

}  // namespace

void emit(const GainTable& table, OutputFormat format, const std::string& path) {
  if (format == OutputFormat::kCsv) {
    write_file(path, table_to_csv(table));
    write_file(path + ".spec.json", spec_to_json(table.spec).dump(2) + "\n");
  } else {
    write_file(path, table_to_json(table).dump(2) + "\n");
  }
}

}  // namespace ris
