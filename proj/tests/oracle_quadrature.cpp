#include "oracle_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyfront::oracle {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tolerance, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  const double accept = std::max(tolerance, 1e-13 * std::abs(left + right));
  if (depth <= 0 || std::abs(delta) <= 15.0 * accept) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tolerance, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tolerance, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance) {
  if (!(b > a)) throw std::invalid_argument("adaptive_simpson needs a < b");
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, tolerance, 21);
}

double integrate_singular_left(const std::function<double(double)>& f, double a, double b,
                               double tolerance) {
  if (!(b > a)) throw std::invalid_argument("integrate_singular_left needs a < b");
  double total = 0.0;
  double width = b - a;
  double panel_prev = 0.0;
  bool have_prev = false;
  for (int k = 0; k < 200; ++k) {
    const double lo = a + 0.5 * width;
    const double hi = a + width;
    const double panel = adaptive_simpson(f, lo, hi, tolerance * 1e-3);
    total += panel;
    if (have_prev && std::abs(panel) > 0.0) {
      const double ratio = std::abs(panel) / std::abs(panel_prev);
      if (ratio < 0.95 && std::abs(panel) * ratio / (1.0 - ratio) < tolerance * 1e-3) {
        total += panel * ratio / (1.0 - ratio);
        return total;
      }
    }
    panel_prev = panel;
    have_prev = true;
    width *= 0.5;
  }
  return total;
}

double symmetric_difference_integral(const std::function<double(double)>& u, double x,
                                     double u_second, double u_fourth, double u_bound,
                                     double alpha, double b,
                                     const std::function<double(double)>& weight_remainder,
                                     double tolerance) {
  if (!(b > 0.0) || !(tolerance > 0.0)) {
    throw std::invalid_argument("symmetric_difference_integral needs b > 0 and a tolerance");
  }
  const double eps = std::numeric_limits<double>::epsilon();

  // Noise radius: below it, 2u(x) - u(x+y) - u(x-y) carries fewer correct
  // digits than the requested tolerance.  The first bound keeps the total
  // rounding mass integrated against the kernel under tolerance / 10, the
  // second keeps the signal at least a few times the rounding level.
  const double mass_radius =
      std::pow(40.0 * eps * u_bound / (alpha * tolerance), 1.0 / alpha);
  const double signal_radius =
      2.0 * std::sqrt(eps * u_bound / std::max(std::abs(u_second), 1e-6));
  const double y0 = std::min(std::max(mass_radius, signal_radius), 0.01 * b);

  // Fourth-order expansion against the power part of the kernel.
  const double moment2 = std::pow(y0, 2.0 - alpha) / (2.0 - alpha);
  const double moment4 = std::pow(y0, 4.0 - alpha) / (4.0 - alpha);
  double inner = -u_second * moment2 - u_fourth / 12.0 * moment4;

  // Same expansion against the smooth remainder of the kernel.
  if (weight_remainder) {
    const double mr2 = adaptive_simpson(
        [&](double y) { return y * y * weight_remainder(y); }, 0.0, y0, tolerance * 1e-3);
    inner += -u_second * mr2;
  }

  auto integrand = [&](double y) {
    const double w = std::pow(y, -1.0 - alpha) + (weight_remainder ? weight_remainder(y) : 0.0);
    return (2.0 * u(x) - u(x + y) - u(x - y)) * w;
  };
  return inner + integrate_singular_left(integrand, y0, b, tolerance);
}

double periodized_profile_direct(double alpha, double y, long terms) {
  if (!(y > 0.0 && y <= 0.5)) throw std::invalid_argument("profile argument must lie in (0, 1/2]");
  return std::pow(y, -1.0 - alpha) + periodized_remainder_direct(alpha, y, terms);
}

double periodized_remainder_direct(double alpha, double y, long terms) {
  if (!(y >= 0.0 && y <= 0.5)) {
    throw std::invalid_argument("remainder argument must lie in [0, 1/2]");
  }
  const double p = -1.0 - alpha;
  double sum = 0.0;
  for (long k = terms; k >= 1; --k) {
    sum += std::pow(static_cast<double>(k) + y, p) + std::pow(static_cast<double>(k) - y, p);
  }
  const double edge = static_cast<double>(terms) + 0.5;
  sum += (std::pow(edge + y, -alpha) + std::pow(edge - y, -alpha)) / alpha;
  return sum;
}

double symbol_eigenvalue(double alpha, int mode) {
  const double xi = 2.0 * M_PI * std::abs(static_cast<double>(mode));
  double constant;
  if (alpha == 1.0) {
    constant = M_PI;
  } else {
    constant = 2.0 * std::tgamma(1.0 - alpha) * std::cos(0.5 * M_PI * alpha) / alpha;
  }
  return std::pow(xi, alpha) * constant;
}

}  // namespace levyfront::oracle
