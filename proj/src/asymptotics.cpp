#include "levyfront/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"

namespace levyfront {

namespace {

// Crossing abscissa inside one segment, linear in log u when both values
// are positive and linear in u otherwise.
double crossing_point(double x0, double x1, double u0, double u1, double level) {
  if (u0 > 0.0 && u1 > 0.0) {
    const double denom = std::log(u1) - std::log(u0);
    if (denom != 0.0) {
      return x0 + (x1 - x0) * (std::log(level) - std::log(u0)) / denom;
    }
  }
  const double denom = u1 - u0;
  if (denom == 0.0) {
    return std::abs(x1) > std::abs(x0) ? x1 : x0;
  }
  return x0 + (x1 - x0) * (level - u0) / denom;
}

int snapshot_index_near(const Trajectory& trajectory, double time) {
  if (trajectory.snapshots.empty()) {
    throw InputError("trajectory holds no snapshots");
  }
  if (!std::isfinite(time)) {
    throw InputError("snapshot time must be finite");
  }
  int best = 0;
  double best_gap = std::abs(trajectory.times[0] - time);
  for (std::size_t k = 1; k < trajectory.times.size(); ++k) {
    const double gap = std::abs(trajectory.times[k] - time);
    if (gap < best_gap) {
      best_gap = gap;
      best = static_cast<int>(k);
    }
  }
  return best;
}

// Nodes of one snapshot whose |x|^(d+alpha) stays below or above the
// moving threshold, compared in logarithms so huge radii cannot overflow.
std::vector<int> region_nodes(const Eigen::VectorXd& x, double threshold_log, int d,
                              double alpha, bool inner) {
  std::vector<int> nodes;
  for (int i = 0; i < x.size(); ++i) {
    const double r = std::abs(x[i]);
    const double lhs = r > 0.0 ? (d + alpha) * std::log(r)
                               : -std::numeric_limits<double>::infinity();
    if (inner ? (lhs <= threshold_log) : (lhs >= threshold_log)) {
      nodes.push_back(i);
    }
  }
  return nodes;
}

double periodic_interpolate(const Eigen::VectorXd& values, double x) {
  const int m = static_cast<int>(values.size());
  double pos = x - std::floor(x);
  if (pos >= 1.0) {
    pos = 0.0;
  }
  const double idx = pos * m;
  const int i0 = static_cast<int>(idx);
  const int i1 = (i0 + 1) % m;
  const double theta = idx - i0;
  return (1.0 - theta) * values[i0] + theta * values[i1];
}

void check_fraction(double value, const char* name) {
  if (!(value > 0.0) || !(value < 1.0)) {
    throw InputError(strprintf("%s must lie in (0, 1)", name));
  }
}

}  // namespace

std::optional<double> level_set_radius(const Eigen::VectorXd& u, const Eigen::VectorXd& x,
                                       double level) {
  if (u.size() != x.size()) {
    throw InputError("solution and grid lengths do not match");
  }
  if (u.size() < 2) {
    throw InputError("level set search needs at least two nodes");
  }
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw InputError("level must be positive and finite");
  }
  if (level >= u.maxCoeff()) {
    return std::nullopt;
  }
  bool found = false;
  double radius = 0.0;
  for (int i = 0; i + 1 < u.size(); ++i) {
    const double a = u[i] - level;
    const double b = u[i + 1] - level;
    if (a * b > 0.0) {
      continue;
    }
    const double r = std::abs(crossing_point(x[i], x[i + 1], u[i], u[i + 1], level));
    if (!found || r > radius) {
      radius = r;
      found = true;
    }
  }
  if (!found) {
    return std::nullopt;
  }
  return radius;
}

FrontTrace front_trace(const Trajectory& trajectory, double level) {
  if (trajectory.snapshots.empty()) {
    throw InputError("trajectory holds no snapshots");
  }
  FrontTrace trace;
  trace.level = level;
  for (std::size_t k = 0; k < trajectory.snapshots.size(); ++k) {
    const auto radius = level_set_radius(trajectory.snapshots[k], trajectory.x, level);
    if (radius.has_value()) {
      trace.points.push_back({trajectory.times[k], *radius});
    }
  }
  return trace;
}

RateFit fit_front_rate(const FrontTrace& trace, double t_begin, double t_end) {
  if (!std::isfinite(t_begin) || !std::isfinite(t_end) || !(t_begin < t_end)) {
    throw InputError("fit window must satisfy t_begin < t_end");
  }
  std::vector<double> ts;
  std::vector<double> logs;
  for (const auto& point : trace.points) {
    if (point.time < t_begin || point.time > t_end || !(point.radius > 0.0)) {
      continue;
    }
    ts.push_back(point.time);
    logs.push_back(std::log(point.radius));
  }
  const int n = static_cast<int>(ts.size());
  if (n < 10) {
    throw FitError(strprintf("fit window holds %d front points, need at least 10", n));
  }
  double t_mean = 0.0;
  double l_mean = 0.0;
  for (int i = 0; i < n; ++i) {
    t_mean += ts[i];
    l_mean += logs[i];
  }
  t_mean /= n;
  l_mean /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dt = ts[i] - t_mean;
    const double dl = logs[i] - l_mean;
    sxx += dt * dt;
    sxy += dt * dl;
    syy += dl * dl;
  }
  if (!(sxx > 0.0)) {
    throw FitError("fit window has no time spread");
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = l_mean - fit.slope * t_mean;
  fit.t_begin = t_begin;
  fit.t_end = t_end;
  fit.points = n;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double resid = logs[i] - (fit.intercept + fit.slope * ts[i]);
    ss_res += resid * resid;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res == 0.0 ? 1.0 : 0.0);
  fit.slope_stderr = std::sqrt(ss_res / (n - 2) / sxx);
  if (fit.r_squared < 0.99) {
    throw FitError(
        strprintf("front trace correlation %.4f is below 0.99, no clean exponential rate",
                  fit.r_squared));
  }
  return fit;
}

RescaledProfile hopf_cole_rescale(const Trajectory& trajectory, double eps,
                                  const RescaleWindow& window) {
  if (trajectory.snapshots.empty()) {
    throw InputError("trajectory holds no snapshots");
  }
  if (!(eps > 0.0) || eps > 1.0) {
    throw InputError("rescaling parameter must lie in (0, 1]");
  }
  if (window.nx < 1 || window.nt < 1) {
    throw InputError("rescaling window needs at least one sample per axis");
  }
  if (!(window.x_min <= window.x_max) || !(window.t_min <= window.t_max)) {
    throw InputError("rescaling window bounds are reversed");
  }
  const auto& x = trajectory.x;
  const auto& times = trajectory.times;
  const int n = static_cast<int>(x.size());
  if (n < 2 || times.size() < 2) {
    throw InputError("rescaling needs at least two stored times and two nodes");
  }

  RescaledProfile profile;
  profile.eps = eps;
  profile.xs = Eigen::VectorXd::LinSpaced(window.nx, window.x_min, window.x_max);
  profile.ts = Eigen::VectorXd::LinSpaced(window.nt, window.t_min, window.t_max);
  profile.v.resize(window.nt, window.nx);

  const double kFloor = 1e-300;
  for (int j = 0; j < window.nt; ++j) {
    const double t_phys = profile.ts[j] / eps;
    if (t_phys < times.front() || t_phys > times.back()) {
      throw RangeError(strprintf(
          "rescaled window needs t = %.6g outside the stored range [%.6g, %.6g]", t_phys,
          times.front(), times.back()));
    }
    auto upper = std::upper_bound(times.begin(), times.end(), t_phys);
    int k1 = static_cast<int>(upper - times.begin());
    k1 = std::clamp(k1, 1, static_cast<int>(times.size()) - 1);
    const int k0 = k1 - 1;
    const double t_span = times[k1] - times[k0];
    const double theta_t = t_span > 0.0 ? (t_phys - times[k0]) / t_span : 0.0;

    for (int i = 0; i < window.nx; ++i) {
      const double xt = profile.xs[i];
      const double mag = std::abs(xt);
      const double x_phys = mag > 0.0 ? std::copysign(std::pow(mag, 1.0 / eps), xt) : 0.0;
      if (!std::isfinite(x_phys) || x_phys < x[0] || x_phys > x[n - 1]) {
        throw RangeError(strprintf(
            "rescaled window needs x = %.6g outside the stored range [%.6g, %.6g]", x_phys,
            x[0], x[n - 1]));
      }
      auto past = std::upper_bound(x.data(), x.data() + n, x_phys);
      int i1 = static_cast<int>(past - x.data());
      i1 = std::clamp(i1, 1, n - 1);
      const int i0 = i1 - 1;
      const double x_span = x[i1] - x[i0];
      const double theta_x = x_span > 0.0 ? (x_phys - x[i0]) / x_span : 0.0;

      const auto corner = [&](int row, int col) {
        return std::log(std::max(trajectory.snapshots[col][row], kFloor));
      };
      const double low = (1.0 - theta_x) * corner(i0, k0) + theta_x * corner(i1, k0);
      const double high = (1.0 - theta_x) * corner(i0, k1) + theta_x * corner(i1, k1);
      profile.v(j, i) = eps * ((1.0 - theta_t) * low + theta_t * high);
    }
  }
  return profile;
}

double limit_profile(double x, double t, double lambda1, int d, double alpha) {
  const double r = std::abs(x);
  if (r == 0.0) {
    return 0.0;
  }
  return std::min(0.0, std::abs(lambda1) * t - (d + alpha) * std::log(r));
}

double profile_deviation(const RescaledProfile& profile, double lambda1, int d, double alpha) {
  if (profile.v.rows() != profile.ts.size() || profile.v.cols() != profile.xs.size()) {
    throw InputError("rescaled profile dimensions are inconsistent");
  }
  double worst = 0.0;
  for (int j = 0; j < profile.ts.size(); ++j) {
    for (int i = 0; i < profile.xs.size(); ++i) {
      const double target = limit_profile(profile.xs[i], profile.ts[j], lambda1, d, alpha);
      worst = std::max(worst, std::abs(profile.v(j, i) - target));
    }
  }
  return worst;
}

double inner_ratio(const Trajectory& trajectory, const Eigen::VectorXd& u_plus, double time,
                   double shrink, double lambda1, int d, double alpha) {
  check_fraction(shrink, "inner shrink fraction");
  if (u_plus.size() < 2) {
    throw InputError("steady profile needs at least two nodes");
  }
  if (u_plus.minCoeff() <= 0.0) {
    throw InputError("steady profile must be strictly positive");
  }
  const int k = snapshot_index_near(trajectory, time);
  const double t_snap = trajectory.times[k];
  const double threshold = (1.0 - shrink) * std::abs(lambda1) * t_snap;
  const auto nodes = region_nodes(trajectory.x, threshold, d, alpha, true);
  if (nodes.size() < 10) {
    throw RangeError(strprintf("inner region at t = %.6g holds %zu nodes, need at least 10",
                               t_snap, nodes.size()));
  }
  double worst = 0.0;
  for (int i : nodes) {
    const double reference = periodic_interpolate(u_plus, trajectory.x[i]);
    worst = std::max(worst, std::abs(trajectory.snapshots[k][i] / reference - 1.0));
  }
  return worst;
}

double outer_sup(const Trajectory& trajectory, double time, double expand, double lambda1,
                 int d, double alpha) {
  if (!(expand > 0.0) || !std::isfinite(expand)) {
    throw InputError("outer expansion fraction must be positive");
  }
  const int k = snapshot_index_near(trajectory, time);
  const double t_snap = trajectory.times[k];
  const double threshold = (1.0 + expand) * std::abs(lambda1) * t_snap;
  const auto nodes = region_nodes(trajectory.x, threshold, d, alpha, false);
  if (nodes.empty()) {
    throw RangeError(strprintf("outer region at t = %.6g is empty", t_snap));
  }
  double sup = -std::numeric_limits<double>::infinity();
  for (int i : nodes) {
    sup = std::max(sup, trajectory.snapshots[k][i]);
  }
  return sup;
}

double inner_average(const Trajectory& trajectory, double time, double shrink, double lambda1,
                     int d, double alpha) {
  check_fraction(shrink, "inner shrink fraction");
  const int k = snapshot_index_near(trajectory, time);
  const double t_snap = trajectory.times[k];
  const double threshold = (1.0 - shrink) * std::abs(lambda1) * t_snap;
  const auto nodes = region_nodes(trajectory.x, threshold, d, alpha, true);
  if (nodes.size() < 10) {
    throw RangeError(strprintf("inner region at t = %.6g holds %zu nodes, need at least 10",
                               t_snap, nodes.size()));
  }
  double weighted = 0.0;
  double total = 0.0;
  for (int i : nodes) {
    const double width = trajectory.cell_widths[i];
    weighted += width * trajectory.snapshots[k][i];
    total += width;
  }
  return weighted / total;
}

}  // namespace levyfront
