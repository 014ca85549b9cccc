#include "levyfront/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"
#include "levyfront/numerics.hpp"

namespace levyfront {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Euler-Maclaurin closure of sum_{k >= m} (k + shift)^(-1-alpha) starting
// from the first omitted index m, written in terms of z = m + shift.
double lattice_tail(double alpha, double z) {
  const double inv = 1.0 / z;
  const double base = std::pow(z, -alpha);
  double tail = base / alpha;
  tail += 0.5 * base * inv;
  tail += (1.0 + alpha) * base * inv * inv / 12.0;
  tail -= (1.0 + alpha) * (2.0 + alpha) * (3.0 + alpha) * base * inv * inv * inv * inv / 720.0;
  return tail;
}

double lattice_tail_error(double alpha, double z) {
  const double c = (1.0 + alpha) * (2.0 + alpha) * (3.0 + alpha) * (4.0 + alpha) * (5.0 + alpha);
  return c * std::pow(z, -6.0 - alpha) / 30240.0;
}

// Smooth part R(y) = S(y) - y^(-1-alpha), summed directly over the integer
// shifts; no cancellation is involved because the singular term is never
// added in.
double profile_remainder(double alpha, double y, int terms) {
  const double p = -1.0 - alpha;
  KahanSum sum;
  for (int k = terms; k >= 1; --k) {
    sum.add(std::pow(static_cast<double>(k) + y, p));
    sum.add(std::pow(static_cast<double>(k) - y, p));
  }
  const double m = static_cast<double>(terms) + 1.0;
  sum.add(lattice_tail(alpha, m + y));
  sum.add(lattice_tail(alpha, m - y));
  return sum.value();
}

double remainder_quadrature(double alpha, int terms, double a, double b,
                            const std::function<double(double)>& weight) {
  const auto& rule = GaussLegendre::order(4);
  return rule.integrate(
      [&](double y) { return weight(y) * profile_remainder(alpha, y, terms); }, a, b);
}

}  // namespace

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& u) const {
  const Eigen::Index n = w.rows();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    KahanSum sum;
    for (Eigen::Index j = 0; j < n; ++j) sum.add(w(i, j) * u[j]);
    out[i] = sum.value();
  }
  return out;
}

ProfileValue periodized_profile(double alpha, double y, int terms) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw RangeError("profile exponent must lie in (0, 2)");
  if (!(y > 0.0 && y <= 0.5)) throw RangeError("profile argument must lie in (0, 1/2]");
  if (terms < 4) throw RangeError("profile needs at least 4 direct terms");
  ProfileValue result;
  result.value = std::pow(y, -1.0 - alpha) + profile_remainder(alpha, y, terms);
  const double m = static_cast<double>(terms) + 1.0;
  result.truncation_bound = lattice_tail_error(alpha, m + y) + lattice_tail_error(alpha, m - y);
  return result;
}

OperatorMatrix assemble_torus_operator(const KernelSpec& kernel, const TorusGrid& grid,
                                       int profile_terms) {
  const int n = grid.n;
  const double h = grid.h;
  const double alpha = kernel.alpha;
  const int half = n / 2;

  // The symmetrized principal value over |y| < h reduces to a curvature
  // term carried by the second moment of the kernel there; beyond that,
  // the integrand is replaced by its piecewise-linear interpolant on the
  // offset panels [j h, (j+1) h] and integrated against exact kernel
  // moments (power part closed form, smooth periodization remainder by
  // fixed quadrature).  The leading interpolation defect -u'' s(h-s)/2 is
  // put back through a curvature stencil per panel; without it the symbol
  // carries an O(h^(2-alpha)) error that dominates for large exponents.
  const double window_moment =
      integral_power(1.0 - alpha, 0.0, h) +
      remainder_quadrature(alpha, profile_terms, 0.0, h, [](double y) { return y * y; });

  // Offset weights per node: the window acts on the first symmetric
  // difference, each panel on its two bracketing nodes and, through the
  // defect term, on their neighbors.
  std::vector<double> g(static_cast<std::size_t>(half) + 1, 0.0);
  g[1] += window_moment / (h * h);
  const auto& defect_rule = GaussLegendre::order(8);
  for (int j = 1; j < half; ++j) {
    const double a = j * h;
    const double b = (j + 1) * h;
    const double mass = integral_power(-1.0 - alpha, a, b) +
                        remainder_quadrature(alpha, profile_terms, a, b, [](double) { return 1.0; });
    const double first = integral_power(-alpha, a, b) - a * integral_power(-1.0 - alpha, a, b) +
                         remainder_quadrature(alpha, profile_terms, a, b,
                                              [a](double y) { return y - a; });
    const double defect = defect_rule.integrate(
        [&](double y) {
          const double s = y - a;
          return 0.5 * s * (b - y) *
                 (std::pow(y, -1.0 - alpha) + profile_remainder(alpha, y, profile_terms));
        },
        a, b);
    g[static_cast<std::size_t>(j)] += mass - first / h + 2.0 * defect / (h * h);
    g[static_cast<std::size_t>(j) + 1] += first / h - defect / (h * h);
    if (j >= 2) g[static_cast<std::size_t>(j) - 1] -= defect / (h * h);
  }

  // The curvature transfer misrepresents the first Fourier mode by about
  // (2 pi)^4 h^2 m_w / 12; reject grids where that exceeds a relative 1e-3.
  double symbol_one = 0.0;
  for (int j = 1; j <= half; ++j) {
    symbol_one += g[static_cast<std::size_t>(j)] * (2.0 - 2.0 * std::cos(kTwoPi * j * h));
  }
  const double closure_error = std::pow(kTwoPi, 4) * h * h * window_moment / 12.0;
  const double relative = closure_error / symbol_one;
  if (relative > 1e-3) {
    const int suggested =
        2 * static_cast<int>(std::ceil(0.5 * n * std::pow(relative / 1e-3, 1.0 / (4.0 - alpha))));
    throw ResolutionError(
        strprintf("torus grid n = %d is too coarse for alpha = %g "
                  "(near-field closure error %.2e relative to the first mode); use n >= %d",
                  n, alpha, relative, std::max(suggested, 16)));
  }

  OperatorMatrix op;
  op.w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double kappa = 1.0 + kernel.modulation(grid.nodes[i]);
    for (int j = 1; j <= half; ++j) {
      const double weight = kappa * g[static_cast<std::size_t>(j)];
      op.w(i, (i + j) % n) -= weight;
      op.w(i, (i - j + n) % n) -= weight;
    }
    KahanSum offdiag;
    for (int j = 0; j < n; ++j) {
      if (j != i) offdiag.add(op.w(i, j));
    }
    op.w(i, i) = -offdiag.value();
  }
  return op;
}

double fourier_symbol(const OperatorMatrix& op, const TorusGrid& grid, int mode) {
  Eigen::VectorXd v(grid.n);
  for (int i = 0; i < grid.n; ++i) v[i] = std::cos(kTwoPi * mode * grid.nodes[i]);
  const Eigen::VectorXd lv = op.apply(v);
  return v.dot(lv) / v.dot(v);
}

TailModel tail_model_from_string(const std::string& name) {
  if (name == "zero") return TailModel::zero;
  if (name == "algebraic") return TailModel::algebraic;
  if (name == "constant") return TailModel::constant;
  throw InputError("unknown tail model '" + name + "' (expected zero, algebraic, or constant)");
}

namespace {

// One row of the line operator.  Off-diagonal coefficients are accumulated
// first, the diagonal is set to their compensated negative sum (each
// interior piece annihilates constants identically, so this reproduces the
// exact diagonal), and the far-field closure is applied last.
void line_operator_row(const KernelSpec& kernel, const LineGrid& grid, TailModel tail, int i,
                       Eigen::VectorXd& row) {
  const int m_count = grid.size();
  const auto& x = grid.nodes;
  const double alpha = kernel.alpha;
  const double kappa = 1.0 + kernel.modulation(x[i]);
  const double xi = x[i];
  row.setZero();

  auto add_offdiag = [&](int col, double value) {
    if (col != i) row[col] += value;
  };

  // Symmetric near window (no pairing error): the principal value over
  // (-r, r) around x_i reduces to a curvature term, realized on a three
  // node divided-difference stencil.
  const double r_left = (i > 0) ? xi - x[i - 1] : xi - grid.cell_edges[0];
  const double r_right = (i + 1 < m_count) ? x[i + 1] - xi : grid.cell_edges[m_count] - xi;
  const double r = std::min(r_left, r_right);
  if (i > 0 && i + 1 < m_count) {
    // A one-sided stencil at the outermost rows would break the sign
    // structure of the row; the curvature there is negligible anyway, so
    // those two rows simply drop the window term.
    const double window_mass = kappa * integral_power(1.0 - alpha, 0.0, r);
    const double x0 = x[i - 1];
    const double x1 = x[i];
    const double x2 = x[i + 1];
    add_offdiag(i - 1, -window_mass * 2.0 / ((x0 - x1) * (x0 - x2)));
    add_offdiag(i, -window_mass * 2.0 / ((x1 - x0) * (x1 - x2)));
    add_offdiag(i + 1, -window_mass * 2.0 / ((x2 - x0) * (x2 - x1)));
  }

  // Piecewise-linear interpolation panels outside the window, with exact
  // kernel moments; s is the distance to x_i.
  for (int m = 0; m < m_count - 1; ++m) {
    const double width = x[m + 1] - x[m];
    double a0;
    double b0;
    bool left_side;
    if (x[m + 1] <= xi) {
      left_side = true;
      a0 = xi - x[m + 1];
      b0 = xi - x[m];
    } else if (x[m] >= xi) {
      left_side = false;
      a0 = x[m] - xi;
      b0 = x[m + 1] - xi;
    } else {
      continue;
    }
    const double a = std::max(a0, r);
    if (!(b0 > a)) continue;
    const double i0 = integral_power(-1.0 - alpha, a, b0);
    const double i1 = integral_power(-alpha, a, b0);
    const double toward_far = kappa * (i1 - a0 * i0) / width;
    const double toward_near = kappa * (b0 * i0 - i1) / width;
    if (left_side) {
      add_offdiag(m, -toward_far);
      add_offdiag(m + 1, -toward_near);
    } else {
      add_offdiag(m, -toward_near);
      add_offdiag(m + 1, -toward_far);
    }

    // Interpolation defect: linear interpolation misses the curvature of u
    // by (1/2)(s - a0)(b0 - s) u'', which integrates exactly against the
    // kernel; charging it to a three node stencil biased toward x_i lifts
    // the panel rule to the accuracy of quadratic interpolation.  Panels
    // whose stencil would run past the grid keep the plain rule so that
    // every coupling stays nonpositive.
    const int near_index = left_side ? m + 1 : m;
    const int js = near_index - 1;
    if (js >= 0 && js + 2 < m_count) {
      const double i2 = integral_power(1.0 - alpha, a, b0);
      const double defect =
          0.5 * kappa * (-i2 + (a0 + b0) * i1 - a0 * b0 * i0);
      const double x0 = x[js];
      const double x1 = x[js + 1];
      const double x2 = x[js + 2];
      add_offdiag(js, defect * 2.0 / ((x0 - x1) * (x0 - x2)));
      add_offdiag(js + 1, defect * 2.0 / ((x1 - x0) * (x1 - x2)));
      add_offdiag(js + 2, defect * 2.0 / ((x2 - x0) * (x2 - x1)));
    }
  }

  // Slabs between the outermost nodes and the outermost cell edges carry
  // the boundary node value.
  if (i < m_count - 1) {
    const double a = x[m_count - 1] - xi;
    const double b = grid.r_edge - xi;
    add_offdiag(m_count - 1, -kappa * integral_power(-1.0 - alpha, a, b));
  }
  if (i > 0) {
    const double a = xi + grid.r_edge;
    add_offdiag(0, -kappa * integral_power(-1.0 - alpha, xi - x[0], a));
  }

  KahanSum offdiag;
  for (int c = 0; c < m_count; ++c) {
    if (c != i) offdiag.add(row[c]);
  }
  row[i] = -offdiag.value();

  // Far field beyond the outermost cell edges.
  const double out_right = kappa * std::pow(grid.r_edge - xi, -alpha) / alpha;
  const double out_left = kappa * std::pow(grid.r_edge + xi, -alpha) / alpha;
  row[i] += out_right + out_left;
  switch (tail) {
    case TailModel::zero:
      break;
    case TailModel::constant:
      row[m_count - 1] -= out_right;
      row[0] -= out_left;
      break;
    case TailModel::algebraic: {
      // Inflow from the continued profile u(s) = u(boundary) (R/|s|)^(1+alpha),
      // integrated exactly in the variable t = r_edge / |s| with panels
      // graded toward t = 1 where the kernel factor peaks.
      const auto& rule = GaussLegendre::order(16);
      const double scale =
          std::pow(grid.r_max, 1.0 + alpha) * std::pow(grid.r_edge, -alpha);
      auto inflow = [&](double sign_x) {
        auto integrand = [&](double t) {
          return std::pow(t, 2.0 * alpha) *
                 std::pow(grid.r_edge - sign_x * xi * t, -1.0 - alpha);
        };
        KahanSum total;
        double lo = 0.0;
        double hi = 0.5;
        for (int k = 0; k < 40; ++k) {
          total.add(rule.integrate(integrand, lo, hi));
          lo = hi;
          hi = 0.5 * (hi + 1.0);
        }
        total.add(rule.integrate(integrand, lo, 1.0));
        return scale * total.value();
      };
      row[m_count - 1] -= kappa * inflow(1.0);
      row[0] -= kappa * inflow(-1.0);
      break;
    }
  }
}

}  // namespace

OperatorMatrix assemble_line_operator(const KernelSpec& kernel, const LineGrid& grid,
                                      TailModel tail) {
  if (kernel.amplitude != 0.0 && grid.r_max > 1e12) {
    throw InputError("modulated kernels lose their phase beyond |x| ~ 1e12; "
                     "use an unmodulated kernel on very large line grids");
  }
  const int m_count = grid.size();
  OperatorMatrix op;
  op.w.resize(m_count, m_count);
  Eigen::VectorXd row(m_count);
  for (int i = 0; i < m_count; ++i) {
    line_operator_row(kernel, grid, tail, i, row);
    op.w.row(i) = row;
  }
  return op;
}

Eigen::MatrixXd apply_line_operator_rows(const KernelSpec& kernel, const LineGrid& grid,
                                         TailModel tail, const Eigen::MatrixXd& u_columns,
                                         const std::vector<int>& rows) {
  if (u_columns.rows() != grid.size()) throw InputError("operator row application size mismatch");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), u_columns.cols());
  Eigen::VectorXd row(grid.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int i = rows[k];
    if (i < 0 || i >= grid.size()) throw InputError("operator row index out of range");
    line_operator_row(kernel, grid, tail, i, row);
    for (Eigen::Index c = 0; c < u_columns.cols(); ++c) {
      KahanSum sum;
      for (Eigen::Index j = 0; j < row.size(); ++j) sum.add(row[j] * u_columns(j, c));
      out(static_cast<Eigen::Index>(k), c) = sum.value();
    }
  }
  return out;
}

}  // namespace levyfront
