// Post-processing of evolved trajectories: front extraction and rate
// fitting, exponential rescaling of space and time with its limit
// profile, and the inner/outer region diagnostics of the invasion
// dichotomy.  Everything here reads immutable trajectories; nothing is
// re-solved.
#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "levyfront/evolve.hpp"

namespace levyfront {

// Outermost |x| where u crosses the level, located by interpolation that
// is linear in log u (linear in u where a neighbor vanishes).  Empty when
// the level is never crossed or sits at or above the maximum.
std::optional<double> level_set_radius(const Eigen::VectorXd& u, const Eigen::VectorXd& x,
                                       double level);

struct FrontPoint {
  double time = 0.0;
  double radius = 0.0;
};

struct FrontTrace {
  double level = 0.0;
  std::vector<FrontPoint> points;  // snapshots without a crossing are skipped
};

FrontTrace front_trace(const Trajectory& trajectory, double level);

struct RateFit {
  double slope = 0.0;  // d log r / dt over the window
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
  int points = 0;
};

// Least-squares line through (t, log r) restricted to [t_begin, t_end].
// Throws FitError when fewer than 10 points fall in the window or the
// correlation is below 0.99.
RateFit fit_front_rate(const FrontTrace& trace, double t_begin, double t_end);

struct RescaleWindow {
  double x_min = 0.0;
  double x_max = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  int nx = 0;
  int nt = 0;
};

struct RescaledProfile {
  double eps = 0.0;
  Eigen::VectorXd xs;  // window sample abscissae
  Eigen::VectorXd ts;  // window sample times
  Eigen::MatrixXd v;   // nt x nx values of eps log u(sign(x) |x|^(1/eps), t/eps)
};

// Exponential rescaling of one trajectory; u is evaluated by bilinear
// interpolation of log u in (x, t).  Throws RangeError when the window
// needs space or time the trajectory does not cover.
RescaledProfile hopf_cole_rescale(const Trajectory& trajectory, double eps,
                                  const RescaleWindow& window);

// min(0, |lambda1| t - (d + alpha) log |x|), the locally uniform limit of
// the rescaled logarithms; 0 at x = 0 by continuity of the min.
double limit_profile(double x, double t, double lambda1, int d, double alpha);

// Sup over the window of |v - limit_profile|.
double profile_deviation(const RescaledProfile& profile, double lambda1, int d, double alpha);

// Sup of |u(x, t)/u_plus(x mod 1) - 1| over the shrunken inner region
// {(d+alpha) log |x| <= (1-shrink) |lambda1| t} at the snapshot nearest t;
// u_plus lives on the uniform torus grid.  Throws RangeError when the
// region holds fewer than 10 nodes.
double inner_ratio(const Trajectory& trajectory, const Eigen::VectorXd& u_plus, double time,
                   double shrink, double lambda1, int d, double alpha);

// Sup of u over the expanded outer region
// {(d+alpha) log |x| >= (1+expand) |lambda1| t}.
double outer_sup(const Trajectory& trajectory, double time, double expand, double lambda1,
                 int d, double alpha);

// Cell-weighted average of u over the shrunken inner region.
double inner_average(const Trajectory& trajectory, double time, double shrink, double lambda1,
                     int d, double alpha);

}  // namespace levyfront
