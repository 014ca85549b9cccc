// Dense discretizations of the nonlocal operator
//
//   L[u](x) = PV int (u(x) - u(x + y)) (1 + a(x)) |y|^(-1-alpha) dy
//
// in symmetrized form, on the unit torus (kernel periodized over integer
// shifts) and on a large symmetric interval (kernel kept on the full line,
// with an explicit closure for the truncated far field).  Both builds
// produce rows whose off-diagonal entries are nonpositive and whose
// diagonal is the compensated negative sum of the off-diagonal part, so
// constants are annihilated to machine precision before tail closures
// are added.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "levyfront/grids.hpp"
#include "levyfront/model.hpp"

namespace levyfront {

struct OperatorMatrix {
  Eigen::MatrixXd w;

  Eigen::Index size() const { return w.rows(); }

  // Matrix-vector product with per-row compensated summation; the plain
  // product loses one to two digits of the constants annihilation on
  // fine grids.
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
};

// Periodized kernel profile S(y) = sum_{k in Z} |y + k|^(-1-alpha) on
// (0, 1/2], evaluated by direct summation of the first `terms` shifts and
// an Euler-Maclaurin closure of the remainder; truncation_bound is an
// estimate of the neglected part.
struct ProfileValue {
  double value = 0.0;
  double truncation_bound = 0.0;
};

ProfileValue periodized_profile(double alpha, double y, int terms = 24);

// Dense operator on the uniform torus grid.  Throws ResolutionError when
// the near-singularity closure cannot represent the first Fourier mode to
// about three digits; the message suggests a sufficient grid size.
OperatorMatrix assemble_torus_operator(const KernelSpec& kernel, const TorusGrid& grid,
                                       int profile_terms = 24);

// Rayleigh quotient of the operator on the plane wave cos(2 pi m x);
// for the unmodulated kernel this is the discrete Fourier symbol.
double fourier_symbol(const OperatorMatrix& op, const TorusGrid& grid, int mode);

// Behaviour of the solution beyond the outermost cell edges:
//   zero       u vanishes outside (pure outflow),
//   algebraic  u continues from the boundary nodes with the |x|^(-1-alpha)
//              profile of the expected far field,
//   constant   u keeps its boundary value (diagnostic mode in which the
//              operator annihilates constants exactly, tail included).
enum class TailModel { zero, algebraic, constant };

TailModel tail_model_from_string(const std::string& name);

// Dense operator on the graded line grid.
OperatorMatrix assemble_line_operator(const KernelSpec& kernel, const LineGrid& grid,
                                      TailModel tail);

// Rows of the line operator applied to columns of u without storing the
// full matrix; rows lists the node indices to evaluate.  Result is
// rows.size() x u_columns.cols().
Eigen::MatrixXd apply_line_operator_rows(const KernelSpec& kernel, const LineGrid& grid,
                                         TailModel tail, const Eigen::MatrixXd& u_columns,
                                         const std::vector<int>& rows);

}  // namespace levyfront
