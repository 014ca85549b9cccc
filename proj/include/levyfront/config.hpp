// Experiment configuration: one JSON file naming a problem description
// plus the numerical settings of every pipeline stage.  Loading resolves
// the problem file relative to the experiment file, applies defaults,
// and validates ranges and orderings up front so stages can trust it.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "levyfront/asymptotics.hpp"
#include "levyfront/evolve.hpp"
#include "levyfront/model.hpp"
#include "levyfront/operators.hpp"

namespace levyfront {

struct EigenSettings {
  int n = 1024;              // torus resolution for the periodic eigenproblem
  double tolerance = 1e-10;  // eigenvalue stop and residual bound
};

struct SteadySettings {
  double tolerance = 1e-10;  // sup-norm stop for the monotone iteration
};

struct EvolveSettings {
  double r_max = 0.0;  // half-width of the truncated line
  double core_half_width = 6.0;
  double core_spacing = 0.06;
  int log_nodes_per_side = 0;
  TailModel tail = TailModel::algebraic;
  Scheme scheme = Scheme::imex;
  double dt = 0.0;  // 0 picks the solver default
  double horizon = 0.0;
  double snapshot_every = 0.0;  // uniform snapshot lattice over [0, horizon]
  int stored_snapshots = 25;    // at most this many snapshot columns land in CSV
};

struct FrontSettings {
  std::vector<double> levels;      // tracked solution heights, strictly decreasing
  double fit_begin_fraction = 0.5; // fit window as fractions of the horizon
  double fit_end_fraction = 0.9;
};

struct RescaleSettings {
  std::vector<double> epsilons;  // strictly decreasing, in (0, 1]
  RescaleWindow window{1.2, 2.0, 0.5, 1.0, 9, 9};
};

struct BoundsSettings {
  std::vector<double> acc_times{0.0, 1.0, 2.0, 4.0};
  std::vector<double> residual_times{0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
};

struct ExperimentConfig {
  std::string name;
  std::filesystem::path config_path;
  std::filesystem::path problem_path;
  ProblemSpec problem;
  EigenSettings eigen;
  SteadySettings steady;
  EvolveSettings evolve;
  FrontSettings front;
  RescaleSettings rescale;
  BoundsSettings bounds;
  std::filesystem::path out_dir;  // optional in the file, often set by the caller

  std::vector<double> snapshot_times() const;  // the uniform lattice, including 0
};

// Parses and validates an experiment file; ConfigError names the first
// offending field.  The problem file is loaded eagerly.
ExperimentConfig load_experiment(const std::filesystem::path& path);

// FNV-1a hash of the experiment text, the problem text, and the seed,
// identifying a run for reproducibility checks.
std::string experiment_digest(const ExperimentConfig& config);

}  // namespace levyfront
