#include "levyfront/steady.hpp"

#include <cmath>
#include <limits>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"

namespace levyfront {

namespace {

Eigen::VectorXd torus_nodes(Eigen::Index n) {
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = static_cast<double>(i) / static_cast<double>(n);
  return x;
}

Eigen::VectorXd reaction_values(const ReactionSpec& reaction, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& u) {
  Eigen::VectorXd f(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) f[i] = reaction.value(x[i], u[i]);
  return f;
}

// Steepest downward slope of f in u over [0, M], estimated from centered
// differences on an (x, u) lattice and inflated by a safety margin.
double linearization_shift(const ReactionSpec& reaction, const Eigen::VectorXd& x,
                           double carrying) {
  const int levels = 33;
  const double du = 1e-6 * std::max(carrying, 1.0);
  double steepest = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (int j = 0; j < levels; ++j) {
      const double u = carrying * static_cast<double>(j) / (levels - 1);
      const double slope =
          -(reaction.value(x[i], u + du) - reaction.value(x[i], u - du)) / (2.0 * du);
      steepest = std::max(steepest, slope);
    }
  }
  return 1.1 * steepest;
}

}  // namespace

SteadyState positive_steady_state(const ProblemSpec& problem, const OperatorMatrix& op,
                                  const EigenPair& pair, double tolerance,
                                  int max_iterations) {
  const Eigen::Index n = op.size();
  if (pair.eigenfunction.size() != n) {
    throw InputError("eigenpair does not share a grid with the operator");
  }
  if (!(tolerance > 0.0)) throw InputError("steady tolerance must be positive");
  if (!(pair.lambda1 < 0.0)) {
    throw RegimeError(strprintf(
        "principal eigenvalue %.6g is nonnegative, no positive steady state exists",
        pair.lambda1));
  }

  const Eigen::VectorXd x = torus_nodes(n);
  const double carrying = problem.reaction.carrying_bound();
  const double shift = linearization_shift(problem.reaction, x, carrying);

  Eigen::MatrixXd shifted = op.w;
  shifted.diagonal().array() += shift;
  const Eigen::PartialPivLU<Eigen::MatrixXd> solver(shifted);

  // Dyadic backtracking for the subsolution seed delta e^g: the continuum
  // inequality L[delta e^g] <= f(x, delta e^g) holds for every delta below
  // |lambda1| / (2 s); the discrete check absorbs the eigen residual.
  const double ceiling = -pair.lambda1 / (2.0 * problem.reaction.saturation);
  double delta = std::exp2(std::floor(std::log2(ceiling)));
  bool seeded = false;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Eigen::VectorXd seed = delta * pair.eigenfunction;
    const Eigen::VectorXd excess =
        op.apply(seed) - reaction_values(problem.reaction, x, seed);
    if (excess.maxCoeff() <= 1e-12 * delta * (1.0 + shift)) {
      seeded = true;
      break;
    }
    delta *= 0.5;
  }
  if (!seeded) throw IterationError("no dyadic seed scale yields a discrete subsolution");

  SteadyState result;
  result.seed_scale = delta;
  result.linearization_shift = shift;

  Eigen::VectorXd u = delta * pair.eigenfunction;
  const double cap = carrying + 1e-10 * std::max(carrying, 1.0);
  bool converged = false;
  double last_residual = std::numeric_limits<double>::infinity();
  while (result.iterations < max_iterations) {
    const Eigen::VectorXd rhs = reaction_values(problem.reaction, x, u) + shift * u;
    const Eigen::VectorXd next = solver.solve(rhs);
    const Eigen::VectorXd increment = next - u;
    const double min_increment = increment.minCoeff();
    result.min_increments.push_back(min_increment);
    if (min_increment < -1e-12) {
      throw MonotonicityError(strprintf(
          "steady iterate decreased by %.3e at sweep %d, grid too coarse for monotonicity",
          -min_increment, result.iterations + 1));
    }
    if (next.maxCoeff() > cap) {
      throw RangeError(strprintf("steady iterate exceeded the carrying level %.6g",
                                 carrying));
    }
    u = next;
    ++result.iterations;
    if (increment.cwiseAbs().maxCoeff() >= tolerance) continue;
    last_residual = steady_residual(op, problem, u);
    if (last_residual <= tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw IterationError(
        strprintf("steady iteration stalled at residual %.3e after %d sweeps (tolerance %.1e)",
                  last_residual, result.iterations, tolerance));
  }
  if (u.minCoeff() <= 0.0) throw PositivityError("steady state is not strictly positive");

  result.u_plus = u;
  result.residual = last_residual;
  return result;
}

double steady_residual(const OperatorMatrix& op, const ProblemSpec& problem,
                       const Eigen::VectorXd& u) {
  if (u.size() != op.size()) throw InputError("field does not share a grid with the operator");
  const Eigen::VectorXd x = torus_nodes(u.size());
  const Eigen::VectorXd defect = op.apply(u) - reaction_values(problem.reaction, x, u);
  return defect.cwiseAbs().maxCoeff();
}

double weak_mean(const Eigen::VectorXd& u_plus) {
  if (u_plus.size() == 0) throw InputError("weak mean of an empty field");
  return u_plus.mean();
}

}  // namespace levyfront
