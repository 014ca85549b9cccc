// Quantitative comparison machinery: the algebraic-decay constant of the
// moving comparison function, explicit sub- and supersolution barriers
// built from it, and checks that an evolved trajectory actually stays
// between them.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "levyfront/evolve.hpp"
#include "levyfront/model.hpp"
#include "levyfront/operators.hpp"

namespace levyfront {

struct AccEstimate {
  double d_hat = 0.0;  // max over the (x, t) sample of the weighted operator value
  std::vector<double> times;
  std::vector<double> per_time_max;
  bool truncation_flag = false;  // late maxima exceed twice the first one
};

// Applies the line operator to h(x, t) = 1 / (1 + e^(-lambda t) |x|^(d+alpha))
// and returns the smallest constant D with |L[h]| <= D e^(-alpha lambda t / (d+alpha)) h
// on the sample, together with the per-time maxima of the weighted values.
AccEstimate acc_constant(const KernelSpec& kernel, double lambda, const LineGrid& grid,
                         TailModel tail, const std::vector<double>& times);

// Barrier pair
//   lower  w(x, t) = c_lower e^(-a0 t) / (1 + e^(-|lambda1| t) |x|^(d+alpha))
//   upper  W(x, t) = c_upper        / (1 + e^(-b0 t)        |x|^(d+alpha))
// with constants chosen so that w stays a subsolution, W a supersolution,
// and w(., 0) < u0 < W(., 0).
struct BarrierSet {
  double d_bound = 0.0;  // decay constant the recipe was fed
  double a0 = 0.0;
  double b0 = 0.0;
  double c_lower = 0.0;
  double c_upper = 0.0;
  double lambda1 = 0.0;
  int d = 1;
  double alpha = 1.0;

  double lower(double x, double t) const;
  double upper(double x, double t) const;
  double lower_time_derivative(double x, double t) const;
  double upper_time_derivative(double x, double t) const;
};

// Recipe: b0 = D + mu_max + 0.1; c_upper = max(1, b0/s) scaled by the
// smallest power of two exceeding the initial amplitude; a0 = |lambda1| +
// D - mu_min + 0.1; c_lower = min(|lambda1|/(2 s), largest dyadic under
// the initial amplitude).  Throws InputError when no admissible lower
// amplitude above 1e-8 exists.
BarrierSet barrier_constants(const ProblemSpec& problem, double d_bound, double lambda1);

struct BarrierWitness {
  double time = 0.0;
  double x = 0.0;
  double value = 0.0;    // solution or residual value at the witness
  double barrier = 0.0;  // barrier value there (0 for residual witnesses)
};

struct SandwichReport {
  std::vector<long> lower_counts;  // per snapshot: nodes with u < w - 1e-8
  std::vector<long> upper_counts;  // per snapshot: nodes with u > W + 1e-8
  long lower_total = 0;
  long upper_total = 0;
  BarrierWitness worst_lower;  // largest w - u excess, zeros when none
  BarrierWitness worst_upper;  // largest u - W excess, zeros when none
};

// Report-only comparison of a trajectory against the barrier pair.
SandwichReport sandwich_check(const Trajectory& trajectory, const BarrierSet& barriers);

struct ResidualReport {
  double upper_min = 0.0;    // min of W_t + L[W] - f(., W), wants >= -1e-6 scale
  double lower_max = 0.0;    // max of w_t + L[w] - f(., w), wants <= +1e-6 scale
  double upper_scale = 0.0;  // max of |W_t| + |L[W]| + |f(., W)| over the sample
  double lower_scale = 0.0;
  bool upper_ok = false;
  bool lower_ok = false;
  BarrierWitness upper_worst;
  BarrierWitness lower_worst;
  bool suggests_acc_rerun = false;  // a failed sign hints at an undersized decay constant
};

// Evaluates both barrier residuals on sampled rows of the line grid at the
// given times, with analytic time derivatives and the discrete operator.
ResidualReport barrier_residuals(const BarrierSet& barriers, const ProblemSpec& problem,
                                 const LineGrid& grid, TailModel tail,
                                 const std::vector<double>& times);

}  // namespace levyfront
