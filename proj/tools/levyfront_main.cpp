// Command line driver.  Every subcommand loads one experiment file,
// runs the requested stage (recomputing in-process prerequisites), and
// writes its artifacts under the output directory.  Exit codes: 0 when
// all checks pass, 2 when a verdict fails, 1 on errors.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "levyfront/config.hpp"
#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"
#include "levyfront/log.hpp"
#include "levyfront/pipeline.hpp"
#include "levyfront/report.hpp"
#include "levyfront/version.hpp"

namespace {

using namespace levyfront;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 1;
};

ExperimentConfig load_for(const CommonOptions& opts) {
  if (opts.threads != 1) {
    log_info("this build runs single-threaded, ignoring --threads ", opts.threads);
  }
  ExperimentConfig config = load_experiment(opts.config_path);
  if (!opts.out_dir.empty()) {
    config.out_dir = std::filesystem::absolute(opts.out_dir);
  }
  if (opts.seed) {
    config.problem.validation.seed = *opts.seed;
  }
  return config;
}

const std::filesystem::path& require_out(const ExperimentConfig& config) {
  if (config.out_dir.empty()) {
    throw ConfigError("experiment '" + config.name +
                      "' has no output directory, pass --out or set out_dir");
  }
  ensure_dir(config.out_dir);
  return config.out_dir;
}

void print_rows(const std::vector<ReportRow>& rows) {
  for (const auto& row : rows) {
    std::printf("%s  %s: %s\n", row.passed ? "pass" : "FAIL", row.name.c_str(),
                row.detail.c_str());
  }
}

int cmd_validate(const CommonOptions& opts) {
  const auto config = load_for(opts);
  ValidationReport report;
  if (config.out_dir.empty()) {
    report = validate_assumptions(config.problem);
  } else {
    ensure_dir(config.out_dir);
    report = stage_validate(config, config.out_dir);
  }
  for (const auto& check : report.checks) {
    std::printf("%s  %s: %s\n", check.passed ? "pass" : "FAIL", check.name.c_str(),
                check.detail.c_str());
  }
  if (report.all_passed()) {
    std::printf("all %zu hypothesis checks passed\n", report.checks.size());
    return 0;
  }
  std::printf("model hypotheses rejected\n");
  return 2;
}

int cmd_eigen(const CommonOptions& opts) {
  const auto config = load_for(opts);
  const auto stage = stage_eigen(config, require_out(config));
  std::printf("lambda1 = %s\n", fmt17(stage.pair.lambda1).c_str());
  std::printf("residual %.3g after %d iterations on %d nodes\n", stage.pair.residual,
              stage.pair.iterations, config.eigen.n);
  std::printf("artifacts in %s\n", config.out_dir.c_str());
  return 0;
}

int cmd_steady(const CommonOptions& opts) {
  const auto config = load_for(opts);
  const auto& out = require_out(config);
  const auto eigen = stage_eigen(config, out);
  const auto state = stage_steady(config, eigen, out);
  std::printf("u_plus in [%s, %s]\n", fmt17(state.u_plus.minCoeff()).c_str(),
              fmt17(state.u_plus.maxCoeff()).c_str());
  std::printf("weak mean %s, residual %.3g after %d iterations\n",
              fmt17(weak_mean(state.u_plus)).c_str(), state.residual, state.iterations);
  std::printf("artifacts in %s\n", config.out_dir.c_str());
  return 0;
}

int cmd_evolve(const CommonOptions& opts) {
  const auto config = load_for(opts);
  const auto trajectory = stage_evolve(config, require_out(config));
  const auto& last = trajectory.records.back();
  std::printf("%d steps of dt = %s to t = %s\n", trajectory.steps, fmt17(trajectory.dt).c_str(),
              fmt17(last.time).c_str());
  std::printf("final sup %s, mass %s, lowest %.3g\n", fmt17(last.sup).c_str(),
              fmt17(last.mass).c_str(), last.lowest);
  std::printf("artifacts in %s\n", config.out_dir.c_str());
  return 0;
}

int cmd_front(const CommonOptions& opts) {
  const auto config = load_for(opts);
  const auto& out = require_out(config);
  const auto eigen = stage_eigen(config, out);
  const auto trajectory = stage_evolve(config, out);
  const auto stage = stage_front(config, trajectory, eigen.pair.lambda1, out);
  const auto& kernel = config.problem.kernel;
  const double prediction = std::abs(eigen.pair.lambda1) / (kernel.d + kernel.alpha);
  std::printf("predicted rate %s\n", fmt17(prediction).c_str());
  for (std::size_t k = 0; k < stage.fits.size(); ++k) {
    std::printf("level %.3g: slope %s, r^2 %.6f, %d points\n", config.front.levels[k],
                fmt17(stage.fits[k].slope).c_str(), stage.fits[k].r_squared,
                stage.fits[k].points);
  }
  for (const auto& [eps, deviation] : stage.deviations) {
    std::printf("epsilon %.4g: deviation %s\n", eps, fmt17(deviation).c_str());
  }
  std::printf("artifacts in %s\n", config.out_dir.c_str());
  return 0;
}

int cmd_bounds(const CommonOptions& opts) {
  const auto config = load_for(opts);
  const auto& out = require_out(config);
  const auto eigen = stage_eigen(config, out);
  const auto trajectory = stage_evolve(config, out);
  const auto stage = stage_bounds(config, trajectory, eigen.pair.lambda1, out);
  std::printf("comparison constant D = %s%s\n", fmt17(stage.acc.d_hat).c_str(),
              stage.acc.truncation_flag ? " (tail window truncated)" : "");
  std::printf("barriers a0 = %s, b0 = %s, c_lower = %s, c_upper = %s\n",
              fmt17(stage.barriers.a0).c_str(), fmt17(stage.barriers.b0).c_str(),
              fmt17(stage.barriers.c_lower).c_str(), fmt17(stage.barriers.c_upper).c_str());
  std::printf("sandwich violations: %ld lower, %ld upper\n", stage.sandwich.lower_total,
              stage.sandwich.upper_total);
  std::printf("residual signs %s (upper min %.3g, lower max %.3g)\n",
              stage.residuals.upper_ok && stage.residuals.lower_ok ? "ok" : "VIOLATED",
              stage.residuals.upper_min, stage.residuals.lower_max);
  std::printf("artifacts in %s\n", config.out_dir.c_str());
  return 0;
}

int cmd_run(const CommonOptions& opts) {
  const auto config = load_for(opts);
  const auto manifest = run_pipeline(config);
  for (const auto& stage : manifest.stages) {
    std::printf("stage %-8s  %s%s%s\n", stage.name.c_str(), stage.status.c_str(),
                stage.detail.empty() ? "" : ": ", stage.detail.c_str());
  }

  const auto report_path = manifest.out_dir / "report.json";
  if (!std::filesystem::exists(report_path)) {
    std::fprintf(stderr, "error: the run produced no report\n");
    return 1;
  }
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(read_text_file(report_path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad artifact " + report_path.string() + ": " + e.what());
  }
  for (const auto& row : report.at("rows")) {
    std::printf("%s  %s: %s\n", row.at("passed").get<bool>() ? "pass" : "FAIL",
                row.at("name").get<std::string>().c_str(),
                row.at("detail").get<std::string>().c_str());
  }
  std::printf("report: %s\n", (manifest.out_dir / "report.html").c_str());
  return report.at("all_passed").get<bool>() ? 0 : 2;
}

int cmd_report(const CommonOptions& opts) {
  const auto config = load_for(opts);
  const auto& out = require_out(config);
  auto manifest = load_manifest(out / "manifest.json");
  const auto summary = write_report(config, manifest);
  print_rows(summary.rows);
  std::printf("report: %s\n", summary.document.c_str());
  return summary.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for nonlocal invasion fronts"};
  app.set_version_flag("--version", std::string("levyfront ") + kProjectVersion);
  app.require_subcommand(1);

  CommonOptions opts;
  std::string selected;
  const std::pair<const char*, const char*> commands[] = {
      {"validate", "sample and check the structural model hypotheses"},
      {"eigen", "solve the periodic principal eigenproblem"},
      {"steady", "compute the positive periodic steady state"},
      {"evolve", "integrate the Cauchy problem on the truncated line"},
      {"front", "track level sets, fit spreading rates, rescale profiles"},
      {"bounds", "compute comparison constants and verify the barriers"},
      {"run", "execute the full pipeline and write the report"},
      {"report", "rebuild the report from an existing run directory"},
  };
  for (const auto& [name, description] : commands) {
    auto* cmd = app.add_subcommand(name, description);
    cmd->add_option("--config", opts.config_path, "experiment configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory (overrides the config)");
    cmd->add_option("--seed", opts.seed, "override the hypothesis sampling seed");
    cmd->add_option("--threads", opts.threads, "worker threads (this build runs one)");
    cmd->callback([&selected, name = name] { selected = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (selected == "validate") return cmd_validate(opts);
    if (selected == "eigen") return cmd_eigen(opts);
    if (selected == "steady") return cmd_steady(opts);
    if (selected == "evolve") return cmd_evolve(opts);
    if (selected == "front") return cmd_front(opts);
    if (selected == "bounds") return cmd_bounds(opts);
    if (selected == "run") return cmd_run(opts);
    if (selected == "report") return cmd_report(opts);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
