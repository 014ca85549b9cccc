// Principal eigenpair of the linearization L - mu(x) of the reaction
// equation around zero.  The operator plus a constant shift is a
// nonsingular M-matrix, so inverse power iteration converges to a strictly
// positive eigenfunction whose eigenvalue lambda1 sits between -max mu and
// -mean mu; lambda1 < 0 is the invasion regime.
#pragma once

#include <Eigen/Dense>

#include "levyfront/operators.hpp"

namespace levyfront {

struct EigenPair {
  double lambda1 = 0.0;
  Eigen::VectorXd eigenfunction;      // strictly positive, sup norm 1
  Eigen::VectorXd log_eigenfunction;  // log of the above
  double residual = 0.0;              // sup norm of (L - mu) phi - lambda1 phi
  int iterations = 0;
};

// Inverse power iteration on L + (mu_shift - mu) with a single LU
// factorization; mu holds the reaction slope at the grid nodes.  Iterates
// until successive Rayleigh quotients differ by less than tolerance and the
// eigen residual drops below the same tolerance.  Throws IterationError when
// that has not happened within max_iterations and PositivityError if the
// converged vector is not strictly positive.
EigenPair principal_eigenpair(const OperatorMatrix& op, const Eigen::VectorXd& mu,
                              double tolerance = 1e-10, int max_iterations = 2000);

// Sup norm of (L - mu) phi - lambda1 phi divided by the sup norm of phi,
// recomputed from scratch so it checks a pair produced elsewhere.
double eigen_residual(const OperatorMatrix& op, const Eigen::VectorXd& mu,
                      const EigenPair& pair);

struct SpectralGap {
  double lambda1 = 0.0;        // smallest real part of the spectrum of L - mu
  double lambda_next = 0.0;    // next distinct real part
  double gap = 0.0;            // lambda_next - lambda1
  double imaginary_part = 0.0; // imaginary part carried by the principal eigenvalue
};

// Full dense spectrum as an independent cross-check of the iteration;
// refuses systems larger than 2048 nodes.
SpectralGap spectral_gap_probe(const OperatorMatrix& op, const Eigen::VectorXd& mu);

}  // namespace levyfront
