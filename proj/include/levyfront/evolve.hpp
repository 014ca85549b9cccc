// Time integration of the Cauchy problem u_t + L[u] = f(x, u) on the
// torus and on the truncated line.  The default scheme treats the
// operator implicitly with one LU factorization reused across steps and
// the reaction explicitly; the explicit scheme is kept for cross-checks
// under its positivity step-size bound.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levyfront/grids.hpp"
#include "levyfront/model.hpp"
#include "levyfront/operators.hpp"

namespace levyfront {

enum class Scheme { explicit_euler, imex };

Scheme scheme_from_string(const std::string& name);
std::string scheme_name(Scheme scheme);

struct StepRecord {
  double time = 0.0;    // time reached after the step
  double dt = 0.0;
  double lowest = 0.0;  // most negative entry before clipping
  double sup = 0.0;
  double mass = 0.0;    // cell-weighted integral after the step
};

struct Trajectory {
  Eigen::VectorXd x;            // node coordinates the snapshots live on
  Eigen::VectorXd cell_widths;  // quadrature weights matching x
  std::vector<double> times;
  std::vector<Eigen::VectorXd> snapshots;
  Scheme scheme = Scheme::imex;
  double dt = 0.0;
  int steps = 0;
  double domain_radius = 0.0;  // half-width of the line domain, 0 on the torus
  std::vector<StepRecord> records;
};

struct StepPolicy {
  Scheme scheme = Scheme::imex;
  double dt = 0.0;               // 0 picks min(0.01, 0.5 / max mu)
  bool reaction_enabled = true;  // off integrates the pure nonlocal flow
};

// One step of the semidiscrete system.  Entries in [-1e-14, 0) are clipped
// to zero and more negative ones raise SchemeError; the explicit scheme
// raises StepSizeError when dt exceeds 0.9 over the largest diagonal.
Eigen::VectorXd step(const Eigen::VectorXd& state, double dt, const ProblemSpec& problem,
                     const OperatorMatrix& op, const Eigen::VectorXd& x, Scheme scheme,
                     bool reaction_enabled = true);

// Evolution on the torus, used for steady-state and conservation checks.
// Snapshot times are rounded to the step lattice; the recorded times are
// the rounded ones.  Initial data defaults to the model's algebraic bump
// at the nodes; pass u0 to start elsewhere.
Trajectory solve_cauchy(const ProblemSpec& problem, const TorusGrid& grid, double horizon,
                        const StepPolicy& policy, const std::vector<double>& snapshot_times,
                        const Eigen::VectorXd& u0 = Eigen::VectorXd());

// Evolution on the truncated line with the given far-field closure.
// Raises TruncationError once the 1e-3 level of the solution reaches half
// the domain radius, naming the time of the breach.
Trajectory solve_cauchy(const ProblemSpec& problem, const LineGrid& grid, TailModel tail,
                        double horizon, const StepPolicy& policy,
                        const std::vector<double>& snapshot_times,
                        const Eigen::VectorXd& u0 = Eigen::VectorXd());

}  // namespace levyfront
