#include "levyfront/spectral.hpp"

#include <cmath>
#include <limits>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"

namespace levyfront {

EigenPair principal_eigenpair(const OperatorMatrix& op, const Eigen::VectorXd& mu,
                              double tolerance, int max_iterations) {
  const Eigen::Index n = op.size();
  if (mu.size() != n) throw InputError("reaction slope length does not match the operator");
  if (!(tolerance > 0.0)) throw InputError("eigen tolerance must be positive");

  // Shift so the matrix is a nonsingular M-matrix: diagonal dominance with
  // margin one, inverse entrywise nonnegative.
  const double mu_shift = mu.maxCoeff() + 1.0;
  Eigen::MatrixXd shifted = op.w;
  shifted.diagonal() += (mu_shift - mu.array()).matrix();
  const Eigen::PartialPivLU<Eigen::MatrixXd> solver(shifted);

  EigenPair result;
  Eigen::VectorXd phi = Eigen::VectorXd::Ones(n);
  double sigma = mu_shift;
  double last_residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
  while (iterations < max_iterations) {
    Eigen::VectorXd next = solver.solve(phi);
    const double scale = next.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw IterationError("inverse power iteration collapsed");
    }
    next /= scale;
    const double sigma_prev = sigma;
    // Rayleigh quotient of the shifted matrix on the current iterate.
    sigma = next.dot(shifted * next) / next.squaredNorm();
    phi = next;
    ++iterations;
    if (iterations < 2 || std::abs(sigma - sigma_prev) >= tolerance) continue;
    if (phi.sum() < 0.0) phi = -phi;
    result.lambda1 = sigma - mu_shift;
    result.eigenfunction = phi / phi.maxCoeff();
    last_residual = eigen_residual(op, mu, result);
    if (last_residual <= tolerance) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    throw IterationError(
        strprintf("eigen iteration stalled at residual %.3e after %d steps (tolerance %.1e)",
                  last_residual, iterations, tolerance));
  }
  result.residual = last_residual;
  result.iterations = iterations;
  if (result.eigenfunction.minCoeff() <= 0.0) {
    throw PositivityError("principal eigenfunction is not strictly positive");
  }
  result.log_eigenfunction = result.eigenfunction.array().log();
  return result;
}

double eigen_residual(const OperatorMatrix& op, const Eigen::VectorXd& mu,
                      const EigenPair& pair) {
  const Eigen::Index n = op.size();
  if (mu.size() != n || pair.eigenfunction.size() != n) {
    throw InputError("eigen residual inputs do not share a grid");
  }
  const Eigen::VectorXd defect = op.apply(pair.eigenfunction) -
                                 mu.cwiseProduct(pair.eigenfunction) -
                                 pair.lambda1 * pair.eigenfunction;
  return defect.cwiseAbs().maxCoeff() / pair.eigenfunction.cwiseAbs().maxCoeff();
}

SpectralGap spectral_gap_probe(const OperatorMatrix& op, const Eigen::VectorXd& mu) {
  const Eigen::Index n = op.size();
  if (mu.size() != n) throw InputError("reaction slope length does not match the operator");
  if (n > 2048) throw InputError("dense spectral probe is limited to 2048 nodes");

  Eigen::MatrixXd linearized = op.w;
  linearized.diagonal() -= mu;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(linearized);
  if (solver.info() != Eigen::Success) throw IterationError("dense eigensolver failed");

  const Eigen::VectorXd real_parts = solver.eigenvalues().real();
  const Eigen::VectorXd imag_parts = solver.eigenvalues().imag();
  Eigen::Index principal = 0;
  real_parts.minCoeff(&principal);

  SpectralGap result;
  result.lambda1 = real_parts[principal];
  result.imaginary_part = imag_parts[principal];
  // Next distinct real part; conjugate pairs and numerically repeated
  // roots are treated as one level.
  const double separation = 1e-9 * std::max(1.0, std::abs(result.lambda1));
  double next = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (real_parts[k] > result.lambda1 + separation) next = std::min(next, real_parts[k]);
  }
  result.lambda_next = next;
  result.gap = next - result.lambda1;
  return result;
}

}  // namespace levyfront
