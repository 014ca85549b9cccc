// Small numerical utilities shared across the solvers: Gauss-Legendre
// quadrature rules, stable antiderivatives of power functions, compensated
// summation, periodic wrapping, and straight-line least squares.
#pragma once

#include <cstddef>
#include <vector>

namespace levyfront {

// Gauss-Legendre rule on [-1, 1].  Nodes and weights are computed once per
// order and cached; integrate() maps the rule onto [a, b].
class GaussLegendre {
public:
  static const GaussLegendre& order(int n);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      sum += weights_[i] * f(mid + half * nodes_[i]);
    }
    return half * sum;
  }

private:
  explicit GaussLegendre(int n);

  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Integral of y^p over [a, b] with 0 <= a < b, evaluated without the
// cancellation that the naive antiderivative difference suffers when
// p is close to -1.  a == 0 requires p > -1.
double integral_power(double p, double a, double b);

// Compensated (Kahan) accumulator.  Used wherever a long sum of signed
// terms must retain near-full double precision.
class KahanSum {
public:
  void add(double value) {
    const double y = value - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Fractional part of x in [0, 1).  Safe for negative arguments.
double periodic_frac(double x);

// Ordinary least squares y ~ slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_stderr = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace levyfront
