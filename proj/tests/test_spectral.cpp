#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "levyfront/errors.hpp"
#include "levyfront/grids.hpp"
#include "levyfront/model.hpp"
#include "levyfront/operators.hpp"
#include "levyfront/spectral.hpp"

using namespace levyfront;

namespace {

Eigen::VectorXd slope_field(const ReactionSpec& reaction, int n) {
  Eigen::VectorXd mu(n);
  for (int i = 0; i < n; ++i) mu[i] = reaction.mu(static_cast<double>(i) / n);
  return mu;
}

struct DenseReference {
  double lambda1 = 0.0;
  double imaginary = 0.0;
  Eigen::VectorXd phi;
};

// Full nonsymmetric eigendecomposition, normalized the same way as the
// iterative solver; serves as the independent reference below.
DenseReference dense_reference(const OperatorMatrix& op, const Eigen::VectorXd& mu) {
  Eigen::MatrixXd a = op.w;
  a.diagonal() -= mu;
  const Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  Eigen::Index k = 0;
  es.eigenvalues().real().minCoeff(&k);
  DenseReference ref;
  ref.lambda1 = es.eigenvalues().real()[k];
  ref.imaginary = es.eigenvalues().imag()[k];
  Eigen::VectorXd phi = es.eigenvectors().col(k).real();
  if (phi.sum() < 0.0) phi = -phi;
  ref.phi = phi / phi.maxCoeff();
  return ref;
}

}  // namespace

TEST_CASE("inverse power iteration matches a dense eigendecomposition") {
  const int n = 256;
  const auto reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  const auto grid = TorusGrid::make(n);
  const auto mu = slope_field(reaction, n);
  for (double amplitude : {0.0, 0.25}) {
    CAPTURE(amplitude);
    const auto kernel = KernelSpec::make(1, 1.0, amplitude);
    const auto op = assemble_torus_operator(kernel, grid);
    const auto ref = dense_reference(op, mu);
    const auto pair = principal_eigenpair(op, mu);
    CHECK(std::abs(ref.imaginary) < 1e-12);
    CHECK(std::abs(pair.lambda1 - ref.lambda1) < 1e-10);
    CHECK((pair.eigenfunction - ref.phi).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(pair.residual <= 1e-10);
  }
}

TEST_CASE("principal eigenvalue of the plain kernel sits in the slope bracket") {
  const int n = 256;
  const auto reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  const auto kernel = KernelSpec::make(1, 1.0, 0.0);
  const auto op = assemble_torus_operator(kernel, TorusGrid::make(n));
  const auto pair = principal_eigenpair(op, slope_field(reaction, n));
  CHECK(pair.lambda1 >= -reaction.mu_max());
  CHECK(pair.lambda1 <= -reaction.mu_mean);
  CHECK(pair.eigenfunction.minCoeff() > 0.0);
  CHECK(pair.eigenfunction.maxCoeff() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pair.log_eigenfunction.maxCoeff() <= 1e-14);
  for (int i = 0; i < n; ++i) {
    CHECK(std::exp(pair.log_eigenfunction[i]) ==
          doctest::Approx(pair.eigenfunction[i]).epsilon(1e-13));
  }
}

TEST_CASE("constant reaction slope reproduces the exact eigenpair") {
  const int n = 128;
  const auto kernel = KernelSpec::make(1, 0.7, 0.25);
  const auto op = assemble_torus_operator(kernel, TorusGrid::make(n));
  const Eigen::VectorXd mu = Eigen::VectorXd::Constant(n, 2.0);
  const auto pair = principal_eigenpair(op, mu);
  CHECK(std::abs(pair.lambda1 + 2.0) < 1e-12);
  CHECK((pair.eigenfunction.array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("adding a constant to the slope shifts the eigenvalue exactly") {
  const int n = 128;
  const auto reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  const auto kernel = KernelSpec::make(1, 1.2, 0.25);
  const auto op = assemble_torus_operator(kernel, TorusGrid::make(n));
  const auto mu = slope_field(reaction, n);
  const auto base = principal_eigenpair(op, mu);
  const auto lifted = principal_eigenpair(op, (mu.array() + 0.7).matrix());
  CHECK(std::abs(lifted.lambda1 - (base.lambda1 - 0.7)) < 1e-9);
}

TEST_CASE("eigenvalue decreases when the reaction slope increases") {
  const int n = 128;
  const auto reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  const auto kernel = KernelSpec::make(1, 1.2, 0.25);
  const auto op = assemble_torus_operator(kernel, TorusGrid::make(n));
  const auto mu = slope_field(reaction, n);
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5; ++k) {
    const auto pair = principal_eigenpair(op, (mu.array() + 0.1 * k).matrix());
    CHECK(pair.lambda1 <= previous + 1e-12);
    previous = pair.lambda1;
  }
}

TEST_CASE("eigenvalue settles geometrically under grid refinement") {
  const auto reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  const auto kernel = KernelSpec::make(1, 1.0, 0.0);
  double lambda[3] = {0.0, 0.0, 0.0};
  int idx = 0;
  for (int n : {128, 256, 512}) {
    const auto op = assemble_torus_operator(kernel, TorusGrid::make(n));
    lambda[idx++] = principal_eigenpair(op, slope_field(reaction, n)).lambda1;
  }
  const double coarse_step = std::abs(lambda[0] - lambda[1]);
  const double fine_step = std::abs(lambda[1] - lambda[2]);
  CHECK(coarse_step <= 10.0 * fine_step);
}

TEST_CASE("residual measure detects a perturbed eigenfunction") {
  const int n = 256;
  const auto reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  const auto kernel = KernelSpec::make(1, 1.0, 0.0);
  const auto op = assemble_torus_operator(kernel, TorusGrid::make(n));
  const auto mu = slope_field(reaction, n);
  const auto pair = principal_eigenpair(op, mu);
  CHECK(eigen_residual(op, mu, pair) <= 1e-10);

  EigenPair noisy = pair;
  for (int i = 0; i < n; ++i) {
    noisy.log_eigenfunction[i] += 1e-3 * std::cos(7.0 * i + 0.3);
    noisy.eigenfunction[i] = std::exp(noisy.log_eigenfunction[i]);
  }
  CHECK(eigen_residual(op, mu, noisy) >= 1e-4);
}

TEST_CASE("spectral gap probe matches the mode values of an unmodulated kernel") {
  const auto kernel = KernelSpec::make(1, 0.7, 0.0);
  const auto grid = TorusGrid::make(128);
  const auto op = assemble_torus_operator(kernel, grid);
  const Eigen::VectorXd mu = Eigen::VectorXd::Constant(128, 2.0);
  const auto probe = spectral_gap_probe(op, mu);
  CHECK(std::abs(probe.lambda1 + 2.0) < 1e-10);
  CHECK(std::abs(probe.gap - fourier_symbol(op, grid, 1)) < 1e-10);
  CHECK(std::abs(probe.imaginary_part) < 1e-12);

  const auto shifted = spectral_gap_probe(op, (mu.array() + 3.0).matrix());
  CHECK(std::abs(shifted.gap - probe.gap) < 1e-9);
}

TEST_CASE("spectral gap at the first mode approaches two pi squared") {
  const int n = 512;
  const auto kernel = KernelSpec::make(1, 1.0, 0.0);
  const auto op = assemble_torus_operator(kernel, TorusGrid::make(n));
  const Eigen::VectorXd mu = Eigen::VectorXd::Constant(n, 1.0);
  const auto probe = spectral_gap_probe(op, mu);
  const double two_pi_squared = 2.0 * M_PI * M_PI;
  CHECK(std::abs(probe.gap - two_pi_squared) / two_pi_squared < 1e-6);
}

TEST_CASE("spectral gap stays positive for a periodic slope") {
  const int n = 256;
  const auto reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  const auto kernel = KernelSpec::make(1, 1.0, 0.0);
  const auto op = assemble_torus_operator(kernel, TorusGrid::make(n));
  const auto probe = spectral_gap_probe(op, slope_field(reaction, n));
  CHECK(probe.gap > 0.0);
  CHECK(std::isfinite(probe.lambda_next));
}

TEST_CASE("spectral input validation") {
  const auto kernel = KernelSpec::make(1, 1.0, 0.0);
  const auto op = assemble_torus_operator(kernel, TorusGrid::make(64));
  const Eigen::VectorXd mu = Eigen::VectorXd::Constant(64, 1.0);
  CHECK_THROWS_AS(principal_eigenpair(op, Eigen::VectorXd::Constant(32, 1.0)), InputError);
  CHECK_THROWS_AS(principal_eigenpair(op, mu, 0.0), InputError);
  CHECK_THROWS_AS(spectral_gap_probe(op, Eigen::VectorXd::Constant(32, 1.0)), InputError);

  OperatorMatrix oversized;
  oversized.w = Eigen::MatrixXd::Zero(2050, 2050);
  CHECK_THROWS_AS(spectral_gap_probe(oversized, Eigen::VectorXd::Zero(2050)), InputError);
}
