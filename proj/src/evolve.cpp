#include "levyfront/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"

namespace levyfront {

namespace {

constexpr double kClipFloor = -1e-14;
constexpr double kFrontLevel = 1e-3;

Eigen::VectorXd reaction_values(const ReactionSpec& reaction, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& u) {
  Eigen::VectorXd f(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) f[i] = reaction.value(x[i], u[i]);
  return f;
}

double resolve_dt(const ProblemSpec& problem, const StepPolicy& policy) {
  if (policy.dt < 0.0 || !std::isfinite(policy.dt)) {
    throw InputError("step size must be nonnegative and finite");
  }
  if (policy.dt > 0.0) return policy.dt;
  const double mu_plus = problem.reaction.mu_max();
  return mu_plus > 0.0 ? std::min(0.01, 0.5 / mu_plus) : 0.01;
}

// Clips roundoff negatives in place and returns the most negative entry
// seen; anything below the floor is a genuine scheme failure.
double clip_negatives(Eigen::VectorXd& u, double time) {
  double lowest = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] < 0.0) {
      lowest = std::min(lowest, u[i]);
      if (u[i] < kClipFloor) {
        throw SchemeError(strprintf("solution dipped to %.3e at t = %.6g", u[i], time));
      }
      u[i] = 0.0;
    }
  }
  return lowest;
}

Trajectory run_fixed_step(const ProblemSpec& problem, OperatorMatrix op, Eigen::VectorXd x,
                          Eigen::VectorXd widths, double domain_radius, double horizon,
                          const StepPolicy& policy, const std::vector<double>& snapshot_times,
                          Eigen::VectorXd u) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw InputError("time horizon must be nonnegative and finite");
  }
  const double dt = resolve_dt(problem, policy);
  if (horizon > 0.0 && dt > horizon) throw InputError("step size exceeds the horizon");
  const long long n_steps = horizon > 0.0 ? std::llround(horizon / dt) : 0;

  std::set<long long> snapshot_steps;
  for (double t : snapshot_times) {
    if (t < 0.0 || t > horizon + 1e-9) {
      throw InputError(strprintf("snapshot time %.6g lies outside [0, %.6g]", t, horizon));
    }
    snapshot_steps.insert(std::clamp(std::llround(t / dt), 0LL, n_steps));
  }
  if (horizon == 0.0) snapshot_steps.insert(0);

  Trajectory traj;
  traj.x = std::move(x);
  traj.cell_widths = std::move(widths);
  traj.scheme = policy.scheme;
  traj.dt = dt;
  traj.domain_radius = domain_radius;
  traj.records.reserve(static_cast<std::size_t>(n_steps));

  std::vector<Eigen::Index> far_nodes;
  for (Eigen::Index i = 0; i < traj.x.size(); ++i) {
    if (domain_radius > 0.0 && std::abs(traj.x[i]) >= 0.5 * domain_radius) {
      far_nodes.push_back(i);
    }
  }

  const double cap =
      std::max(u.maxCoeff(), problem.reaction.carrying_bound()) + 1e-8;

  std::optional<Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>>> lu;
  if (policy.scheme == Scheme::imex && n_steps > 0) {
    // The operator matrix is recycled as the system matrix I + dt L and
    // factorized in place; the explicit path keeps it untouched instead.
    op.w *= dt;
    op.w.diagonal().array() += 1.0;
    lu.emplace(op.w);
  } else if (policy.scheme == Scheme::explicit_euler && n_steps > 0) {
    const double admissible = 0.9 / op.w.diagonal().cwiseAbs().maxCoeff();
    if (dt > admissible) {
      throw StepSizeError(
          strprintf("explicit step %.3e exceeds the stability bound %.3e", dt, admissible));
    }
  }

  for (Eigen::Index i : far_nodes) {
    if (u[i] >= kFrontLevel) {
      throw TruncationError("initial data already reaches half the domain radius");
    }
  }

  if (snapshot_steps.count(0) != 0) {
    traj.times.push_back(0.0);
    traj.snapshots.push_back(u);
  }

  for (long long k = 1; k <= n_steps; ++k) {
    const double time = static_cast<double>(k) * dt;
    Eigen::VectorXd next;
    if (policy.scheme == Scheme::imex) {
      Eigen::VectorXd rhs = u;
      if (policy.reaction_enabled) {
        rhs += dt * reaction_values(problem.reaction, traj.x, u);
      }
      next = lu->solve(rhs);
    } else {
      next = u - dt * op.apply(u);
      if (policy.reaction_enabled) {
        next += dt * reaction_values(problem.reaction, traj.x, u);
      }
    }

    StepRecord record;
    record.time = time;
    record.dt = dt;
    record.lowest = clip_negatives(next, time);
    record.sup = next.maxCoeff();
    if (record.sup > cap) {
      throw RangeError(
          strprintf("solution reached %.6g at t = %.6g, above the comparison cap %.6g",
                    record.sup, time, cap));
    }
    record.mass = traj.cell_widths.dot(next);
    traj.records.push_back(record);

    u = std::move(next);
    ++traj.steps;

    for (Eigen::Index i : far_nodes) {
      if (u[i] >= kFrontLevel) {
        throw TruncationError(strprintf(
            "front reached half the domain radius at t = %.6g, domain too small", time));
      }
    }
    if (snapshot_steps.count(k) != 0) {
      traj.times.push_back(time);
      traj.snapshots.push_back(u);
    }
  }
  return traj;
}

}  // namespace

Scheme scheme_from_string(const std::string& name) {
  if (name == "imex") return Scheme::imex;
  if (name == "explicit") return Scheme::explicit_euler;
  throw SchemeError(strprintf("unknown scheme '%s', expected imex or explicit", name.c_str()));
}

std::string scheme_name(Scheme scheme) {
  return scheme == Scheme::imex ? "imex" : "explicit";
}

Eigen::VectorXd step(const Eigen::VectorXd& state, double dt, const ProblemSpec& problem,
                     const OperatorMatrix& op, const Eigen::VectorXd& x, Scheme scheme,
                     bool reaction_enabled) {
  if (state.size() != op.size() || x.size() != op.size()) {
    throw InputError("state, operator, and coordinates do not share a grid");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("step size must be positive");

  Eigen::VectorXd next;
  if (scheme == Scheme::imex) {
    Eigen::MatrixXd system = dt * op.w;
    system.diagonal().array() += 1.0;
    Eigen::VectorXd rhs = state;
    if (reaction_enabled) rhs += dt * reaction_values(problem.reaction, x, state);
    next = Eigen::PartialPivLU<Eigen::MatrixXd>(system).solve(rhs);
  } else {
    const double admissible = 0.9 / op.w.diagonal().cwiseAbs().maxCoeff();
    if (dt > admissible) {
      throw StepSizeError(
          strprintf("explicit step %.3e exceeds the stability bound %.3e", dt, admissible));
    }
    next = state - dt * op.apply(state);
    if (reaction_enabled) next += dt * reaction_values(problem.reaction, x, state);
  }
  clip_negatives(next, dt);
  return next;
}

Trajectory solve_cauchy(const ProblemSpec& problem, const TorusGrid& grid, double horizon,
                        const StepPolicy& policy, const std::vector<double>& snapshot_times,
                        const Eigen::VectorXd& u0) {
  OperatorMatrix op = assemble_torus_operator(problem.kernel, grid);
  Eigen::VectorXd start = u0;
  if (start.size() == 0) {
    start.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
      start[i] = problem.initial.value(grid.nodes[i], problem.kernel.d, problem.kernel.alpha);
    }
  }
  if (start.size() != grid.n) throw InputError("initial data does not match the grid");
  const Eigen::VectorXd widths = Eigen::VectorXd::Constant(grid.n, grid.h);
  return run_fixed_step(problem, std::move(op), grid.nodes, widths, 0.0, horizon, policy,
                        snapshot_times, std::move(start));
}

Trajectory solve_cauchy(const ProblemSpec& problem, const LineGrid& grid, TailModel tail,
                        double horizon, const StepPolicy& policy,
                        const std::vector<double>& snapshot_times, const Eigen::VectorXd& u0) {
  OperatorMatrix op = assemble_line_operator(problem.kernel, grid, tail);
  Eigen::VectorXd start = u0;
  if (start.size() == 0) {
    start.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
      start[i] = problem.initial.value(grid.nodes[i], problem.kernel.d, problem.kernel.alpha);
    }
  }
  if (start.size() != grid.size()) throw InputError("initial data does not match the grid");
  Eigen::VectorXd widths(grid.size());
  for (int i = 0; i < grid.size(); ++i) widths[i] = grid.cell_width(i);
  return run_fixed_step(problem, std::move(op), grid.nodes, widths, grid.r_max, horizon,
                        policy, snapshot_times, std::move(start));
}

}  // namespace levyfront
