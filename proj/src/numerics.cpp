#include "levyfront/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "levyfront/errors.hpp"

namespace levyfront {

namespace {

// Legendre polynomial P_n and its derivative at x, by the three-term
// recurrence; used to place quadrature nodes with Newton's method.
void legendre_pair(int n, double x, double* value, double* derivative) {
  double p_prev = 1.0;
  double p = x;
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  *value = p;
  *derivative = n * (x * p - p_prev) / (x * x - 1.0);
}

}  // namespace

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw RangeError("quadrature order must be positive");
  nodes_.resize(static_cast<std::size_t>(n));
  weights_.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double value = 0.0;
    double derivative = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre_pair(n, x, &value, &derivative);
      const double dx = value / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, &value, &derivative);
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    nodes_[static_cast<std::size_t>(i)] = -x;
    weights_[static_cast<std::size_t>(i)] = w;
    nodes_[static_cast<std::size_t>(n - 1 - i)] = x;
    weights_[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes_[static_cast<std::size_t>(n / 2)] = 0.0;
}

const GaussLegendre& GaussLegendre::order(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
  return it->second;
}

double integral_power(double p, double a, double b) {
  if (!(a >= 0.0) || !(b > a)) throw RangeError("integral_power requires 0 <= a < b");
  const double q = p + 1.0;
  if (a == 0.0) {
    if (!(q > 0.0)) throw RangeError("integral_power at a = 0 requires p > -1");
    return std::pow(b, q) / q;
  }
  if (q == 0.0) return std::log(b / a);
  return std::pow(a, q) * std::expm1(q * std::log(b / a)) / q;
}

double periodic_frac(double x) {
  double frac = x - std::floor(x);
  if (frac >= 1.0) frac = 0.0;
  return frac;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3) throw FitError("fit_line needs at least three matched points");
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw FitError("fit_line abscissae are all identical");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += r * r;
  }
  fit.r2 = (syy > 0.0) ? 1.0 - ssr / syy : 1.0;
  const double variance = ssr / static_cast<double>(n - 2);
  fit.slope_stderr = std::sqrt(variance / sxx);
  return fit;
}

}  // namespace levyfront
