// Problem data for the nonlocal reaction equation
//
//   u_t + L[u] = f(x, u),
//   L[u](x) = PV int (u(x) - u(x + y)) K(x, y) dy,
//
// with a periodically modulated stable-like kernel
//
//   K(x, y) = (1 + a(x)) |y|^(-d-alpha),   a(x) = A cos(2 pi x),  0 <= A < 1,
//
// Fisher-type reaction f(x, u) = mu(x) u - s u^2 with 1-periodic
// mu(x) = mu_mean + mu_amp cos(2 pi x), and algebraically decaying
// initial data u0(x) = c / (1 + |x|^(d+alpha)).
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace levyfront {

struct KernelSpec {
  int d = 1;
  double alpha = 1.0;
  double amplitude = 0.0;

  // Validates alpha in (0, 2), amplitude in [0, 1), d = 1.
  static KernelSpec make(int d, double alpha, double amplitude);

  // a(x), a'(x), a''(x) for the cosine modulation.
  double modulation(double x) const;
  double modulation_dx(double x) const;
  double modulation_dxx(double x) const;

  // K(x, y) away from y = 0.
  double density(double x, double y) const;

  // Two-sided elliptic bounds lambda <= (1 + a(x)) <= Lambda.
  double lower_ellipticity() const { return 1.0 - amplitude; }
  double upper_ellipticity() const { return 1.0 + amplitude; }

  // C such that K(x, y) <= C K(x', y) for all x, x', y.
  double comparability() const;
};

struct ReactionSpec {
  double mu_mean = 1.0;
  double mu_amp = 0.0;
  double saturation = 1.0;

  // Validates saturation > 0 and |mu_amp| <= mu_mean handling is left to
  // the solvers; only structural positivity is enforced here.
  static ReactionSpec make(double mu_mean, double mu_amp, double saturation);

  double mu(double x) const;
  double mu_min() const;
  double mu_max() const;

  double value(double x, double u) const;
  double du(double x, double u) const;

  // Smallest level above which the reaction is nonpositive for every x.
  double carrying_bound() const;
};

struct InitialData {
  double c = 0.5;

  static InitialData make(double c);

  // u0(x) = c / (1 + |x|^(d+alpha)); needs the kernel exponent.
  double value(double x, int d, double alpha) const;
};

struct ValidationSettings {
  int samples = 256;
  std::uint64_t seed = 12345;
};

struct ProblemSpec {
  KernelSpec kernel;
  ReactionSpec reaction;
  InitialData initial;
  ValidationSettings validation;
};

// Reads a problem description from a JSON file.
ProblemSpec load_problem(const std::filesystem::path& path);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
};

// Samples the structural hypotheses of the model (kernel symmetry, bounds
// and periodicity, reaction sign structure and concavity, initial decay)
// at randomized points and reports each check.
ValidationReport validate_assumptions(const ProblemSpec& problem);

}  // namespace levyfront
