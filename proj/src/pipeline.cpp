#include "levyfront/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"
#include "levyfront/log.hpp"
#include "levyfront/report.hpp"
#include "levyfront/version.hpp"

namespace levyfront {

namespace {

using nlohmann::json;

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json validation_to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const auto& check : report.checks) {
    checks.push_back({{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
  }
  return {{"checks", checks}, {"all_passed", report.all_passed()}};
}

LineGrid grid_from_config(const ExperimentConfig& config) {
  return LineGrid::build(config.evolve.r_max, config.evolve.core_half_width,
                         config.evolve.core_spacing, config.evolve.log_nodes_per_side);
}

// Evenly spaced snapshot column indices, at most `limit` of them.
std::vector<std::size_t> thinned_indices(std::size_t count, int limit) {
  std::vector<std::size_t> indices;
  if (count == 0) return indices;
  const std::size_t keep = std::min<std::size_t>(count, static_cast<std::size_t>(limit));
  if (keep == 1) return {0};
  std::set<std::size_t> chosen;
  for (std::size_t j = 0; j < keep; ++j) {
    chosen.insert((j * (count - 1) + (keep - 1) / 2) / (keep - 1));
  }
  indices.assign(chosen.begin(), chosen.end());
  return indices;
}

}  // namespace

bool RunManifest::completed() const {
  if (stages.empty()) return false;
  for (const auto& stage : stages) {
    if (stage.status != "completed") return false;
  }
  return true;
}

const StageResult* RunManifest::find(const std::string& name) const {
  for (const auto& stage : stages) {
    if (stage.name == name) return &stage;
  }
  return nullptr;
}

ValidationReport stage_validate(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir) {
  auto report = validate_assumptions(config.problem);
  write_json_file(out_dir / "validation.json", validation_to_json(report));
  return report;
}

EigenStage stage_eigen(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  EigenStage stage{TorusGrid::make(config.eigen.n), OperatorMatrix{}, Eigen::VectorXd{},
                   EigenPair{}};
  stage.op = assemble_torus_operator(config.problem.kernel, stage.grid);
  stage.mu.resize(config.eigen.n);
  for (int i = 0; i < config.eigen.n; ++i) {
    stage.mu[i] = config.problem.reaction.mu(stage.grid.nodes[i]);
  }
  stage.pair = principal_eigenpair(stage.op, stage.mu, config.eigen.tolerance);

  write_json_file(out_dir / "eigen.json",
                  {{"lambda1", stage.pair.lambda1},
                   {"residual", stage.pair.residual},
                   {"iterations", stage.pair.iterations},
                   {"n", config.eigen.n},
                   {"tolerance", config.eigen.tolerance}});
  CsvWriter csv(out_dir / "eigenfunction.csv", {"x", "phi"});
  for (int i = 0; i < config.eigen.n; ++i) {
    csv.write_row({stage.grid.nodes[i], stage.pair.eigenfunction[i]});
  }
  return stage;
}

SteadyState stage_steady(const ExperimentConfig& config, const EigenStage& eigen,
                         const std::filesystem::path& out_dir) {
  auto state =
      positive_steady_state(config.problem, eigen.op, eigen.pair, config.steady.tolerance);
  write_json_file(out_dir / "steady.json",
                  {{"min", state.u_plus.minCoeff()},
                   {"max", state.u_plus.maxCoeff()},
                   {"weak_mean", weak_mean(state.u_plus)},
                   {"residual", state.residual},
                   {"iterations", state.iterations},
                   {"seed_scale", state.seed_scale}});
  CsvWriter csv(out_dir / "steady_state.csv", {"x", "u_plus"});
  for (Eigen::Index i = 0; i < state.u_plus.size(); ++i) {
    csv.write_row({eigen.grid.nodes[i], state.u_plus[i]});
  }
  return state;
}

Trajectory stage_evolve(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  auto grid = grid_from_config(config);
  StepPolicy policy;
  policy.scheme = config.evolve.scheme;
  policy.dt = config.evolve.dt;
  auto trajectory = solve_cauchy(config.problem, grid, config.evolve.tail,
                                 config.evolve.horizon, policy, config.snapshot_times());

  {
    CsvWriter csv(out_dir / "records.csv", {"time", "dt", "lowest", "sup", "mass"});
    for (const auto& rec : trajectory.records) {
      csv.write_row({rec.time, rec.dt, rec.lowest, rec.sup, rec.mass});
    }
  }
  {
    const auto columns = thinned_indices(trajectory.snapshots.size(),
                                         config.evolve.stored_snapshots);
    std::vector<std::string> header{"x"};
    for (std::size_t k : columns) header.push_back("u_t" + fmt17(trajectory.times[k]));
    CsvWriter csv(out_dir / "snapshots.csv", header);
    std::vector<double> row(columns.size() + 1);
    for (Eigen::Index i = 0; i < trajectory.x.size(); ++i) {
      row[0] = trajectory.x[i];
      for (std::size_t j = 0; j < columns.size(); ++j) {
        row[j + 1] = trajectory.snapshots[columns[j]][i];
      }
      csv.write_row(row);
    }
  }
  return trajectory;
}

FrontStage stage_front(const ExperimentConfig& config, const Trajectory& trajectory,
                       double lambda1, const std::filesystem::path& out_dir) {
  FrontStage stage;
  const double horizon = config.evolve.horizon;
  const double t_begin = config.front.fit_begin_fraction * horizon;
  const double t_end = config.front.fit_end_fraction * horizon;
  for (double level : config.front.levels) {
    stage.traces.push_back(front_trace(trajectory, level));
    stage.fits.push_back(fit_front_rate(stage.traces.back(), t_begin, t_end));
  }

  {
    CsvWriter csv(out_dir / "fronts.csv", {"level", "time", "radius"});
    for (const auto& trace : stage.traces) {
      for (const auto& point : trace.points) {
        csv.write_row({trace.level, point.time, point.radius});
      }
    }
  }
  {
    const auto& kernel = config.problem.kernel;
    const double prediction = std::abs(lambda1) / (kernel.d + kernel.alpha);
    json fits = json::array();
    for (std::size_t k = 0; k < stage.fits.size(); ++k) {
      const auto& fit = stage.fits[k];
      fits.push_back({{"level", config.front.levels[k]},
                      {"slope", fit.slope},
                      {"intercept", fit.intercept},
                      {"slope_stderr", fit.slope_stderr},
                      {"r_squared", fit.r_squared},
                      {"points", fit.points},
                      {"t_begin", fit.t_begin},
                      {"t_end", fit.t_end},
                      {"rel_error", std::abs(fit.slope - prediction) / prediction}});
    }
    write_json_file(out_dir / "rates.json", {{"prediction", prediction}, {"fits", fits}});
  }

  if (!config.rescale.epsilons.empty()) {
    CsvWriter csv(out_dir / "deviations.csv", {"epsilon", "deviation"});
    for (double eps : config.rescale.epsilons) {
      auto profile = hopf_cole_rescale(trajectory, eps, config.rescale.window);
      const double deviation = profile_deviation(profile, lambda1, config.problem.kernel.d,
                                                 config.problem.kernel.alpha);
      stage.deviations.push_back({eps, deviation});
      csv.write_row({eps, deviation});
    }
  }
  return stage;
}

BoundsStage stage_bounds(const ExperimentConfig& config, const Trajectory& trajectory,
                         double lambda1, const std::filesystem::path& out_dir) {
  auto grid = grid_from_config(config);
  BoundsStage stage{acc_constant(config.problem.kernel, std::abs(lambda1), grid,
                                 config.evolve.tail, config.bounds.acc_times),
                    BarrierSet{}, SandwichReport{}, ResidualReport{}};
  stage.barriers = barrier_constants(config.problem, stage.acc.d_hat, lambda1);
  stage.sandwich = sandwich_check(trajectory, stage.barriers);
  stage.residuals = barrier_residuals(stage.barriers, config.problem, grid, config.evolve.tail,
                                      config.bounds.residual_times);

  const auto witness = [](const BarrierWitness& w) {
    return json{{"time", w.time}, {"x", w.x}, {"value", w.value}, {"barrier", w.barrier}};
  };
  write_json_file(
      out_dir / "bounds.json",
      {{"d_hat", stage.acc.d_hat},
       {"truncation_flag", stage.acc.truncation_flag},
       {"barriers",
        {{"a0", stage.barriers.a0},
         {"b0", stage.barriers.b0},
         {"c_lower", stage.barriers.c_lower},
         {"c_upper", stage.barriers.c_upper},
         {"d_bound", stage.barriers.d_bound},
         {"lambda1", stage.barriers.lambda1}}},
       {"sandwich",
        {{"lower_total", stage.sandwich.lower_total},
         {"upper_total", stage.sandwich.upper_total},
         {"worst_lower", witness(stage.sandwich.worst_lower)},
         {"worst_upper", witness(stage.sandwich.worst_upper)}}},
       {"residuals",
        {{"upper_min", stage.residuals.upper_min},
         {"lower_max", stage.residuals.lower_max},
         {"upper_scale", stage.residuals.upper_scale},
         {"lower_scale", stage.residuals.lower_scale},
         {"upper_ok", stage.residuals.upper_ok},
         {"lower_ok", stage.residuals.lower_ok},
         {"suggests_acc_rerun", stage.residuals.suggests_acc_rerun}}}});
  {
    CsvWriter csv(out_dir / "acc.csv", {"time", "weighted_max"});
    for (std::size_t j = 0; j < stage.acc.times.size(); ++j) {
      csv.write_row({stage.acc.times[j], stage.acc.per_time_max[j]});
    }
  }
  {
    CsvWriter csv(out_dir / "sandwich.csv", {"time", "lower_count", "upper_count"});
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
      csv.write_row({trajectory.times[k], static_cast<double>(stage.sandwich.lower_counts[k]),
                     static_cast<double>(stage.sandwich.upper_counts[k])});
    }
  }
  return stage;
}

RunManifest run_pipeline(const ExperimentConfig& config) {
  if (config.out_dir.empty()) {
    throw ConfigError("experiment '" + config.name + "' has no output directory");
  }
  ensure_dir(config.out_dir);

  RunManifest manifest;
  manifest.experiment = config.name;
  manifest.config_hash = experiment_digest(config);
  manifest.version = kProjectVersion;
  manifest.out_dir = config.out_dir;

  std::optional<EigenStage> eigen;
  std::optional<Trajectory> trajectory;

  struct StagePlan {
    const char* name;
    std::vector<std::string> files;
    std::function<void()> body;
    bool always = false;  // the report stage still runs after a failure
  };
  const std::vector<StagePlan> plan{
      {"validate",
       {"validation.json"},
       [&] {
         const auto report = stage_validate(config, config.out_dir);
         for (const auto& check : report.checks) {
           if (!check.passed) {
             throw InputError("model hypotheses rejected, " + check.name + ": " + check.detail);
           }
         }
       },
       false},
      {"eigen",
       {"eigen.json", "eigenfunction.csv"},
       [&] { eigen = stage_eigen(config, config.out_dir); },
       false},
      {"steady",
       {"steady.json", "steady_state.csv"},
       [&] { stage_steady(config, *eigen, config.out_dir); },
       false},
      {"evolve",
       {"records.csv", "snapshots.csv"},
       [&] { trajectory = stage_evolve(config, config.out_dir); },
       false},
      {"front",
       {"fronts.csv", "rates.json", "deviations.csv"},
       [&] { stage_front(config, *trajectory, eigen->pair.lambda1, config.out_dir); },
       false},
      {"bounds",
       {"bounds.json", "acc.csv", "sandwich.csv"},
       [&] { stage_bounds(config, *trajectory, eigen->pair.lambda1, config.out_dir); },
       false},
      {"report", {"report.html", "report.json"}, [&] { write_report(config, manifest); }, true},
  };

  bool failed = false;
  for (const auto& stage : plan) {
    StageResult result;
    result.name = stage.name;
    if (failed && !stage.always) {
      result.status = "skipped";
      result.detail = "previous stage failed";
      manifest.stages.push_back(result);
      continue;
    }
    log_info("stage ", stage.name, " started");
    const auto t0 = std::chrono::steady_clock::now();
    try {
      stage.body();
      result.status = "completed";
    } catch (const std::exception& e) {
      result.status = "failed";
      result.detail = e.what();
      failed = true;
      log_error("stage ", stage.name, " failed: ", e.what());
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& file : stage.files) {
      if (std::filesystem::exists(config.out_dir / file)) {
        manifest.artifacts.push_back({file, file_checksum(config.out_dir / file)});
      }
    }
    manifest.stages.push_back(result);
    if (result.status == "completed") {
      log_info("stage ", stage.name, " completed in ",
               strprintf("%.2fs", result.wall_seconds));
    }
  }

  write_manifest(manifest, config.out_dir / "manifest.json");
  return manifest;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  json stages = json::array();
  for (const auto& stage : manifest.stages) {
    stages.push_back({{"name", stage.name},
                      {"status", stage.status},
                      {"wall_seconds", stage.wall_seconds},
                      {"detail", stage.detail}});
  }
  json artifacts = json::array();
  for (const auto& [file, checksum] : manifest.artifacts) {
    artifacts.push_back({{"path", file}, {"checksum", checksum}});
  }
  write_json_file(path, {{"experiment", manifest.experiment},
                         {"config_hash", manifest.config_hash},
                         {"version", manifest.version},
                         {"stages", stages},
                         {"artifacts", artifacts}});
}

RunManifest load_manifest(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  RunManifest manifest;
  manifest.out_dir = path.parent_path();
  try {
    manifest.experiment = j.at("experiment").get<std::string>();
    manifest.config_hash = j.at("config_hash").get<std::string>();
    manifest.version = j.at("version").get<std::string>();
    for (const auto& stage : j.at("stages")) {
      manifest.stages.push_back({stage.at("name").get<std::string>(),
                                 stage.at("status").get<std::string>(),
                                 stage.at("wall_seconds").get<double>(),
                                 stage.at("detail").get<std::string>()});
    }
    for (const auto& artifact : j.at("artifacts")) {
      manifest.artifacts.push_back(
          {artifact.at("path").get<std::string>(), artifact.at("checksum").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError("bad manifest file " + path.string() + ": " + e.what());
  }
  return manifest;
}

void verify_manifest_artifacts(const RunManifest& manifest) {
  std::string missing;
  for (const auto& [file, checksum] : manifest.artifacts) {
    const auto path = manifest.out_dir / file;
    if (!std::filesystem::exists(path)) {
      missing += "\n  missing: " + path.string();
    } else if (file_checksum(path) != checksum) {
      missing += "\n  checksum mismatch: " + path.string();
    }
  }
  if (!missing.empty()) {
    throw IoError("manifest artifacts failed verification:" + missing);
  }
}

}  // namespace levyfront
