// Positive periodic steady state u+ of L[u] = f(x, u) on the torus by
// monotone iteration.  With N0 at least the steepest downward slope of f
// in u, the map u -> (L + N0)^{-1} (f(x, u) + N0 u) is order preserving,
// so iterates climb from a small subsolution seed delta e^g toward u+ and
// stay below the carrying level M.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "levyfront/model.hpp"
#include "levyfront/operators.hpp"
#include "levyfront/spectral.hpp"

namespace levyfront {

struct SteadyState {
  Eigen::VectorXd u_plus;              // strictly positive, at most M nodewise
  int iterations = 0;
  double residual = 0.0;               // sup norm of L[u+] - f(x, u+)
  std::vector<double> min_increments;  // smallest nodewise increment per sweep
  double seed_scale = 0.0;             // delta of the subsolution seed
  double linearization_shift = 0.0;    // N0 used in the linear solves
};

// Monotone iteration with a single LU factorization of L + N0.  The seed is
// delta times the principal eigenfunction, delta found by dyadic backtracking
// from |lambda1| / (2 s) until the discrete subsolution inequality holds.
// The operator is taken on the uniform torus grid x_i = i / n.  Throws
// RegimeError when lambda1 >= 0, MonotonicityError when an increment dips
// below -1e-12, RangeError when an iterate exceeds the carrying level, and
// IterationError when the budget runs out.
SteadyState positive_steady_state(const ProblemSpec& problem, const OperatorMatrix& op,
                                  const EigenPair& pair, double tolerance = 1e-10,
                                  int max_iterations = 20000);

// Sup norm of L[u] - f(x, u) on the uniform torus grid, recomputed from
// scratch so it checks a field produced elsewhere.
double steady_residual(const OperatorMatrix& op, const ProblemSpec& problem,
                       const Eigen::VectorXd& u);

// Grid average of a torus field, the weak limit density of the rescaled
// solutions.
double weak_mean(const Eigen::VectorXd& u_plus);

}  // namespace levyfront
