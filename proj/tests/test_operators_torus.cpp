#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "levyfront/errors.hpp"
#include "levyfront/grids.hpp"
#include "levyfront/model.hpp"
#include "levyfront/operators.hpp"
#include "oracle_quadrature.hpp"

using namespace levyfront;

TEST_CASE("periodized profile matches direct summation") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    for (double y : {0.01, 0.1, 0.25, 0.5}) {
      const ProfileValue p = periodized_profile(alpha, y);
      const double reference = oracle::periodized_profile_direct(alpha, y);
      CHECK(std::abs(p.value - reference) <= p.truncation_bound + 1e-12 * reference);
      CHECK(p.truncation_bound < 1e-9);
    }
  }
}

TEST_CASE("periodized profile hits the closed form at alpha = 1, y = 1/2") {
  const ProfileValue p = periodized_profile(1.0, 0.5);
  CHECK(p.value == doctest::Approx(M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("periodized profile truncation bound brackets the term count effect") {
  const ProfileValue coarse = periodized_profile(0.5, 0.3, 8);
  const ProfileValue fine = periodized_profile(0.5, 0.3, 400);
  CHECK(std::abs(coarse.value - fine.value) <= coarse.truncation_bound + fine.truncation_bound);
  CHECK(fine.truncation_bound < coarse.truncation_bound);
}

TEST_CASE("periodized profile argument validation") {
  CHECK_THROWS_AS(periodized_profile(1.0, 0.0), RangeError);
  CHECK_THROWS_AS(periodized_profile(1.0, 0.6), RangeError);
  CHECK_THROWS_AS(periodized_profile(2.0, 0.3), RangeError);
  CHECK_THROWS_AS(periodized_profile(1.0, 0.3, 2), RangeError);
}

TEST_CASE("torus operator annihilates constants") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const TorusGrid grid = TorusGrid::make(256);
    const KernelSpec kernel = KernelSpec::make(1, alpha, 0.25);
    const OperatorMatrix op = assemble_torus_operator(kernel, grid);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.n);
    CHECK(op.apply(ones).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("torus operator is an M-matrix and symmetric when unmodulated") {
  const TorusGrid grid = TorusGrid::make(128);
  const KernelSpec kernel = KernelSpec::make(1, 1.0, 0.0);
  const OperatorMatrix op = assemble_torus_operator(kernel, grid);
  for (int i = 0; i < grid.n; ++i) {
    CHECK(op.w(i, i) > 0.0);
    for (int j = 0; j < grid.n; ++j) {
      if (j != i) CHECK(op.w(i, j) <= 0.0);
    }
  }
  CHECK((op.w - op.w.transpose()).cwiseAbs().maxCoeff() < 1e-14 * op.w(0, 0));
}

TEST_CASE("torus symbol matches the closed-form eigenvalues of the stable kernel") {
  const TorusGrid grid = TorusGrid::make(512);
  for (double alpha : {0.5, 1.0, 1.5}) {
    const KernelSpec kernel = KernelSpec::make(1, alpha, 0.0);
    const OperatorMatrix op = assemble_torus_operator(kernel, grid);
    for (int mode : {1, 2, 4}) {
      const double numeric = fourier_symbol(op, grid, mode);
      const double reference = oracle::symbol_eigenvalue(alpha, mode);
      const double tolerance = (mode == 4) ? 1e-3 : 2e-4;
      CHECK(std::abs(numeric / reference - 1.0) < tolerance);
    }
  }
}

TEST_CASE("torus symbol error decays at second order under refinement") {
  for (double alpha : {0.5, 1.5}) {
    const KernelSpec kernel = KernelSpec::make(1, alpha, 0.0);
    const double reference = oracle::symbol_eigenvalue(alpha, 1);
    const TorusGrid coarse_grid = TorusGrid::make(128);
    const TorusGrid fine_grid = TorusGrid::make(256);
    const double coarse_error =
        std::abs(fourier_symbol(assemble_torus_operator(kernel, coarse_grid), coarse_grid, 1) -
                 reference);
    const double fine_error =
        std::abs(fourier_symbol(assemble_torus_operator(kernel, fine_grid), fine_grid, 1) -
                 reference);
    CHECK(coarse_error / fine_error > 3.0);
    CHECK(coarse_error / fine_error < 12.0);
  }
}

TEST_CASE("modulation scales operator rows pointwise") {
  const TorusGrid grid = TorusGrid::make(128);
  const KernelSpec plain = KernelSpec::make(1, 1.5, 0.0);
  const KernelSpec modulated = KernelSpec::make(1, 1.5, 0.5);
  const OperatorMatrix base = assemble_torus_operator(plain, grid);
  const OperatorMatrix scaled = assemble_torus_operator(modulated, grid);
  for (int i = 0; i < grid.n; ++i) {
    const double kappa = 1.0 + modulated.modulation(grid.nodes[i]);
    const double row_error =
        (scaled.w.row(i) - kappa * base.w.row(i)).cwiseAbs().maxCoeff();
    CHECK(row_error < 1e-12 * scaled.w(i, i));
  }
}

TEST_CASE("torus operator row agrees with adaptive quadrature of the integral") {
  const TorusGrid grid = TorusGrid::make(256);
  const double w1 = 2.0 * M_PI;
  const double w2 = 4.0 * M_PI;
  auto u = [&](double x) { return std::cos(w1 * x) + 0.3 * std::sin(w2 * x); };
  Eigen::VectorXd samples(grid.n);
  for (int i = 0; i < grid.n; ++i) samples[i] = u(grid.nodes[i]);

  for (double alpha : {0.5, 1.5}) {
    const KernelSpec kernel = KernelSpec::make(1, alpha, 0.25);
    const OperatorMatrix op = assemble_torus_operator(kernel, grid);
    const Eigen::VectorXd lu = op.apply(samples);
    double scale = lu.cwiseAbs().maxCoeff();
    auto weight_remainder = [&](double y) {
      return oracle::periodized_remainder_direct(alpha, y, 200);
    };
    for (int i : {0, 17, 100}) {
      const double x = grid.nodes[i];
      const double u2 = -w1 * w1 * std::cos(w1 * x) - 0.3 * w2 * w2 * std::sin(w2 * x);
      const double u4 =
          w1 * w1 * w1 * w1 * std::cos(w1 * x) + 0.3 * w2 * w2 * w2 * w2 * std::sin(w2 * x);
      const double reference =
          (1.0 + kernel.modulation(x)) *
          oracle::symmetric_difference_integral(u, x, u2, u4, 1.3, alpha, 0.5,
                                                weight_remainder, 1e-9);
      CHECK(std::abs(lu[i] - reference) < 2e-3 * scale);
    }
  }
}

TEST_CASE("resolution guard rejects grids that cannot carry the exponent") {
  const TorusGrid coarse = TorusGrid::make(16);
  CHECK_THROWS_AS(assemble_torus_operator(KernelSpec::make(1, 1.95, 0.0), coarse),
                  ResolutionError);
  const TorusGrid fine = TorusGrid::make(256);
  CHECK_NOTHROW(assemble_torus_operator(KernelSpec::make(1, 1.9, 0.0), fine));
}

TEST_CASE("energy lower bound stays uniform under refinement") {
  const KernelSpec kernel = KernelSpec::make(1, 1.0, 0.5);
  double previous_min = 0.0;
  double first_min = 0.0;
  for (int n : {64, 128, 256}) {
    const TorusGrid grid = TorusGrid::make(n);
    const OperatorMatrix op = assemble_torus_operator(kernel, grid);
    const Eigen::MatrixXd sym = 0.5 * (op.w + op.w.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (n == 64) {
      first_min = min_eig;
    } else {
      CHECK(min_eig > 4.0 * std::min(first_min, 0.0) - 1.0);
    }
    previous_min = min_eig;
  }
  (void)previous_min;

  const KernelSpec plain = KernelSpec::make(1, 1.0, 0.0);
  const TorusGrid grid = TorusGrid::make(128);
  const OperatorMatrix op = assemble_torus_operator(plain, grid);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::VectorXd v(grid.n);
    for (int i = 0; i < grid.n; ++i) v[i] = dist(rng);
    CHECK(v.dot(op.apply(v)) > -1e-10 * v.squaredNorm());
  }
}
