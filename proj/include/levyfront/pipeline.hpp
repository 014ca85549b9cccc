// Experiment orchestration: the individual pipeline stages, the manifest
// describing a finished run, and the driver that executes the stages in
// order.  Every numeric artifact is a CSV or JSON file under the output
// directory, written through fmt17 so a rerun of the same configuration
// reproduces the files byte for byte.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levyfront/bounds.hpp"
#include "levyfront/config.hpp"
#include "levyfront/evolve.hpp"
#include "levyfront/spectral.hpp"
#include "levyfront/steady.hpp"

namespace levyfront {

struct StageResult {
  std::string name;
  std::string status;  // completed | failed | skipped
  double wall_seconds = 0.0;
  std::string detail;  // error text for failed stages
};

struct RunManifest {
  std::string experiment;
  std::string config_hash;
  std::string version;
  std::filesystem::path out_dir;
  std::vector<StageResult> stages;
  std::vector<std::pair<std::string, std::string>> artifacts;  // relative path, checksum

  bool completed() const;
  const StageResult* find(const std::string& name) const;
};

// Stage payloads that later stages consume in memory.

struct EigenStage {
  TorusGrid grid;
  OperatorMatrix op;
  Eigen::VectorXd mu;
  EigenPair pair;
};

struct FrontStage {
  std::vector<FrontTrace> traces;
  std::vector<RateFit> fits;                         // one per tracked level
  std::vector<std::pair<double, double>> deviations;  // (epsilon, profile deviation)
};

struct BoundsStage {
  AccEstimate acc;
  BarrierSet barriers;
  SandwichReport sandwich;
  ResidualReport residuals;
};

// The stages.  Each writes its artifacts under out_dir and returns what
// downstream stages need; failures surface as exceptions.
ValidationReport stage_validate(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir);
EigenStage stage_eigen(const ExperimentConfig& config, const std::filesystem::path& out_dir);
SteadyState stage_steady(const ExperimentConfig& config, const EigenStage& eigen,
                         const std::filesystem::path& out_dir);
Trajectory stage_evolve(const ExperimentConfig& config, const std::filesystem::path& out_dir);
FrontStage stage_front(const ExperimentConfig& config, const Trajectory& trajectory,
                       double lambda1, const std::filesystem::path& out_dir);
BoundsStage stage_bounds(const ExperimentConfig& config, const Trajectory& trajectory,
                         double lambda1, const std::filesystem::path& out_dir);

// Runs validate, eigen, steady, evolve, front, bounds, report in order,
// recording wall time and status per stage.  A stage failure marks the
// remaining computation stages skipped, but the report stage still runs
// so a partial document describes the gap; the error lands in the
// manifest instead of propagating.  The manifest is written to
// out_dir/manifest.json.
RunManifest run_pipeline(const ExperimentConfig& config);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

// Checks that every artifact listed in the manifest exists and still
// matches its checksum; IoError lists the offending paths.
void verify_manifest_artifacts(const RunManifest& manifest);

}  // namespace levyfront
