#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"
#include "levyfront/model.hpp"

using namespace levyfront;

namespace {

ProblemSpec default_problem() {
  ProblemSpec problem;
  problem.kernel = KernelSpec::make(1, 1.0, 0.25);
  problem.reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  problem.initial = InitialData::make(0.5);
  return problem;
}

}  // namespace

TEST_CASE("kernel parameter validation") {
  CHECK_THROWS_AS(KernelSpec::make(1, 0.0, 0.0), SpecError);
  CHECK_THROWS_AS(KernelSpec::make(1, 2.0, 0.0), SpecError);
  CHECK_THROWS_AS(KernelSpec::make(1, -0.5, 0.0), SpecError);
  CHECK_THROWS_AS(KernelSpec::make(1, 1.0, 1.0), SpecError);
  CHECK_THROWS_AS(KernelSpec::make(1, 1.0, -0.1), SpecError);
  CHECK_THROWS_AS(KernelSpec::make(2, 1.0, 0.0), UnsupportedError);
  CHECK_THROWS_AS(KernelSpec::make(3, 1.0, 0.0), SpecError);
}

TEST_CASE("kernel density and modulation values") {
  const KernelSpec plain = KernelSpec::make(1, 0.5, 0.0);
  CHECK(plain.density(0.3, 2.0) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));
  CHECK(plain.density(0.3, -2.0) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));

  const KernelSpec modulated = KernelSpec::make(1, 1.0, 0.5);
  CHECK(modulated.modulation(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(modulated.modulation(0.5) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(modulated.modulation(7.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(modulated.density(0.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(modulated.comparability() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(modulated.lower_ellipticity() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(modulated.upper_ellipticity() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("reaction structure") {
  const ReactionSpec reaction = ReactionSpec::make(1.0, 0.5, 1.0);
  CHECK(reaction.mu(0.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(reaction.mu(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(reaction.mu_min() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(reaction.mu_max() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(reaction.carrying_bound() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(reaction.value(0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(reaction.du(0.0, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(reaction.value(0.25, 0.0) == 0.0);

  CHECK_THROWS_AS(ReactionSpec::make(1.0, 0.0, 0.0), SpecError);
  CHECK_THROWS_AS(ReactionSpec::make(1.0, 0.0, -1.0), SpecError);
}

TEST_CASE("initial data shape") {
  const InitialData initial = InitialData::make(0.5);
  CHECK(initial.value(0.0, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(initial.value(1.0, 1, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(initial.value(-1.0, 1, 1.0) == initial.value(1.0, 1, 1.0));
  CHECK(initial.value(1e308, 1, 1.0) == 0.0);
  CHECK_THROWS_AS(InitialData::make(0.0), SpecError);
  CHECK_THROWS_AS(InitialData::make(-1.0), SpecError);
}

TEST_CASE("problem file round trip and error reporting") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "levyfront_model_test";
  ensure_dir(dir);
  const std::filesystem::path good = dir / "problem.json";
  write_text_file(good, R"({
    "d": 1, "alpha": 1.5,
    "kernel": {"amplitude": 0.25},
    "reaction": {"mu_mean": 1.0, "mu_amp": 0.5, "saturation": 1.0},
    "initial": {"c": 0.5},
    "validation": {"samples": 64, "seed": 7}
  })");
  const ProblemSpec problem = load_problem(good);
  CHECK(problem.kernel.alpha == doctest::Approx(1.5));
  CHECK(problem.kernel.amplitude == doctest::Approx(0.25));
  CHECK(problem.reaction.mu_amp == doctest::Approx(0.5));
  CHECK(problem.initial.c == doctest::Approx(0.5));
  CHECK(problem.validation.samples == 64);
  CHECK(problem.validation.seed == 7);

  const std::filesystem::path missing = dir / "missing_key.json";
  write_text_file(missing, R"({"d": 1, "alpha": 1.0, "kernel": {"amplitude": 0.0}})");
  CHECK_THROWS_AS(load_problem(missing), ConfigError);

  const std::filesystem::path mangled = dir / "mangled.json";
  write_text_file(mangled, "{ not json");
  CHECK_THROWS_AS(load_problem(mangled), ConfigError);

  CHECK_THROWS_AS(load_problem(dir / "absent.json"), IoError);
}

TEST_CASE("structural assumptions hold for a representative problem") {
  const ValidationReport report = validate_assumptions(default_problem());
  CHECK(report.checks.size() == 11);
  for (const auto& check : report.checks) {
    INFO(check.name, ": ", check.detail);
    CHECK(check.passed);
  }
  CHECK(report.all_passed());
}

TEST_CASE("validation is deterministic for a fixed seed") {
  const ProblemSpec problem = default_problem();
  const ValidationReport first = validate_assumptions(problem);
  const ValidationReport second = validate_assumptions(problem);
  REQUIRE(first.checks.size() == second.checks.size());
  for (std::size_t i = 0; i < first.checks.size(); ++i) {
    CHECK(first.checks[i].detail == second.checks[i].detail);
  }
}
