#include "levyfront/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"

namespace levyfront {

namespace {

constexpr double kSandwichTolerance = 1e-8;
constexpr double kResidualTolerance = 1e-6;
constexpr double kSmallestLowerAmplitude = 1e-8;
constexpr int kMaxSampleRows = 1024;
constexpr int kResidualRows = 64;

void check_times(const std::vector<double>& times) {
  if (times.empty()) {
    throw InputError("time sample is empty");
  }
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (!std::isfinite(times[j]) || times[j] < 0.0) {
      throw InputError("sample times must be finite and nonnegative");
    }
    if (j > 0 && times[j] < times[j - 1]) {
      throw InputError("sample times must be nondecreasing");
    }
  }
}

std::vector<int> strided_rows(int n, int cap) {
  std::vector<int> rows;
  const int stride = std::max(1, (n + cap - 1) / cap);
  for (int i = 0; i < n; i += stride) {
    rows.push_back(i);
  }
  if (rows.back() != n - 1) {
    rows.push_back(n - 1);
  }
  return rows;
}

double power_tail(double x, int d, double alpha) { return std::pow(std::abs(x), d + alpha); }

}  // namespace

AccEstimate acc_constant(const KernelSpec& kernel, double lambda, const LineGrid& grid,
                         TailModel tail, const std::vector<double>& times) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InputError("decay rate lambda must be positive");
  }
  check_times(times);
  const int n = grid.size();
  const int t_count = static_cast<int>(times.size());
  const double power = kernel.d + kernel.alpha;

  Eigen::MatrixXd h(n, t_count);
  for (int j = 0; j < t_count; ++j) {
    const double decay = std::exp(-lambda * times[j]);
    for (int i = 0; i < n; ++i) {
      h(i, j) = 1.0 / (1.0 + decay * power_tail(grid.nodes[i], kernel.d, kernel.alpha));
    }
  }

  const auto rows = strided_rows(n, kMaxSampleRows);
  const Eigen::MatrixXd applied = apply_line_operator_rows(kernel, grid, tail, h, rows);

  AccEstimate estimate;
  estimate.times = times;
  estimate.per_time_max.assign(times.size(), 0.0);
  for (int j = 0; j < t_count; ++j) {
    const double decay = std::exp(-lambda * times[j]);
    const double lift = std::exp(kernel.alpha * lambda * times[j] / power);
    double worst = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double q = decay * power_tail(grid.nodes[rows[r]], kernel.d, kernel.alpha);
      worst = std::max(worst, std::abs(applied(r, j)) * (1.0 + q) * lift);
    }
    estimate.per_time_max[j] = worst;
    estimate.d_hat = std::max(estimate.d_hat, worst);
  }
  for (double value : estimate.per_time_max) {
    if (value > 2.0 * estimate.per_time_max.front()) {
      estimate.truncation_flag = true;
    }
  }
  return estimate;
}

double BarrierSet::lower(double x, double t) const {
  const double q = std::exp(-std::abs(lambda1) * t) * power_tail(x, d, alpha);
  return c_lower * std::exp(-a0 * t) / (1.0 + q);
}

double BarrierSet::upper(double x, double t) const {
  const double q = std::exp(-b0 * t) * power_tail(x, d, alpha);
  return c_upper / (1.0 + q);
}

double BarrierSet::lower_time_derivative(double x, double t) const {
  const double q = std::exp(-std::abs(lambda1) * t) * power_tail(x, d, alpha);
  return lower(x, t) * (-a0 + std::abs(lambda1) * q / (1.0 + q));
}

double BarrierSet::upper_time_derivative(double x, double t) const {
  const double q = std::exp(-b0 * t) * power_tail(x, d, alpha);
  return upper(x, t) * b0 * q / (1.0 + q);
}

BarrierSet barrier_constants(const ProblemSpec& problem, double d_bound, double lambda1) {
  if (!(lambda1 < 0.0) || !std::isfinite(lambda1)) {
    throw InputError("barrier recipe needs a negative principal eigenvalue");
  }
  if (!(d_bound > 0.0) || !std::isfinite(d_bound)) {
    throw InputError("barrier recipe needs a positive decay constant");
  }
  const auto& reaction = problem.reaction;
  const double saturation = reaction.saturation;
  const double amplitude = problem.initial.c;

  BarrierSet barriers;
  barriers.d_bound = d_bound;
  barriers.lambda1 = lambda1;
  barriers.d = problem.kernel.d;
  barriers.alpha = problem.kernel.alpha;
  barriers.b0 = d_bound + reaction.mu_max() + 0.1;
  barriers.a0 = std::abs(lambda1) + d_bound - reaction.mu_min() + 0.1;

  const double base = std::max(1.0, barriers.b0 / saturation);
  double kappa = 1.0;
  while (base * kappa <= amplitude) {
    kappa *= 2.0;
  }
  barriers.c_upper = base * kappa;

  double dyadic = std::exp2(std::floor(std::log2(amplitude)));
  while (dyadic >= amplitude) {
    dyadic *= 0.5;
  }
  barriers.c_lower = std::min(std::abs(lambda1) / (2.0 * saturation), dyadic);
  if (barriers.c_lower < kSmallestLowerAmplitude) {
    throw InputError(strprintf(
        "no admissible lower barrier amplitude above %.0e, initial amplitude %.3g is too small",
        kSmallestLowerAmplitude, amplitude));
  }
  return barriers;
}

SandwichReport sandwich_check(const Trajectory& trajectory, const BarrierSet& barriers) {
  if (trajectory.snapshots.empty()) {
    throw InputError("trajectory holds no snapshots");
  }
  SandwichReport report;
  report.lower_counts.assign(trajectory.snapshots.size(), 0);
  report.upper_counts.assign(trajectory.snapshots.size(), 0);
  double worst_low = 0.0;
  double worst_high = 0.0;
  for (std::size_t k = 0; k < trajectory.snapshots.size(); ++k) {
    const double t = trajectory.times[k];
    const auto& u = trajectory.snapshots[k];
    for (int i = 0; i < u.size(); ++i) {
      const double x = trajectory.x[i];
      const double low = barriers.lower(x, t);
      const double high = barriers.upper(x, t);
      if (u[i] < low - kSandwichTolerance) {
        ++report.lower_counts[k];
        ++report.lower_total;
        if (low - u[i] > worst_low) {
          worst_low = low - u[i];
          report.worst_lower = {t, x, u[i], low};
        }
      }
      if (u[i] > high + kSandwichTolerance) {
        ++report.upper_counts[k];
        ++report.upper_total;
        if (u[i] - high > worst_high) {
          worst_high = u[i] - high;
          report.worst_upper = {t, x, u[i], high};
        }
      }
    }
  }
  return report;
}

ResidualReport barrier_residuals(const BarrierSet& barriers, const ProblemSpec& problem,
                                 const LineGrid& grid, TailModel tail,
                                 const std::vector<double>& times) {
  check_times(times);
  const int n = grid.size();
  const int t_count = static_cast<int>(times.size());

  Eigen::MatrixXd lower_columns(n, t_count);
  Eigen::MatrixXd upper_columns(n, t_count);
  for (int j = 0; j < t_count; ++j) {
    for (int i = 0; i < n; ++i) {
      lower_columns(i, j) = barriers.lower(grid.nodes[i], times[j]);
      upper_columns(i, j) = barriers.upper(grid.nodes[i], times[j]);
    }
  }

  const auto rows = strided_rows(n, kResidualRows);
  const Eigen::MatrixXd lower_applied =
      apply_line_operator_rows(problem.kernel, grid, tail, lower_columns, rows);
  const Eigen::MatrixXd upper_applied =
      apply_line_operator_rows(problem.kernel, grid, tail, upper_columns, rows);

  ResidualReport report;
  report.upper_min = std::numeric_limits<double>::infinity();
  report.lower_max = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < t_count; ++j) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double x = grid.nodes[rows[r]];
      const double t = times[j];

      const double w_value = lower_columns(rows[r], j);
      const double w_dt = barriers.lower_time_derivative(x, t);
      const double w_f = problem.reaction.value(x, w_value);
      const double w_residual = w_dt + lower_applied(r, j) - w_f;
      report.lower_scale = std::max(
          report.lower_scale, std::abs(w_dt) + std::abs(lower_applied(r, j)) + std::abs(w_f));
      if (w_residual > report.lower_max) {
        report.lower_max = w_residual;
        report.lower_worst = {t, x, w_residual, w_value};
      }

      const double big_value = upper_columns(rows[r], j);
      const double big_dt = barriers.upper_time_derivative(x, t);
      const double big_f = problem.reaction.value(x, big_value);
      const double big_residual = big_dt + upper_applied(r, j) - big_f;
      report.upper_scale =
          std::max(report.upper_scale,
                   std::abs(big_dt) + std::abs(upper_applied(r, j)) + std::abs(big_f));
      if (big_residual < report.upper_min) {
        report.upper_min = big_residual;
        report.upper_worst = {t, x, big_residual, big_value};
      }
    }
  }
  report.upper_ok = report.upper_min >= -kResidualTolerance * report.upper_scale;
  report.lower_ok = report.lower_max <= kResidualTolerance * report.lower_scale;
  report.suggests_acc_rerun = !report.upper_ok || !report.lower_ok;
  return report;
}

}  // namespace levyfront
