#include "levyfront/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"
#include "levyfront/numerics.hpp"

namespace levyfront {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

}  // namespace

KernelSpec KernelSpec::make(int d, double alpha, double amplitude) {
  if (d == 2) throw UnsupportedError("two-dimensional kernels are not implemented; use d = 1");
  if (d != 1) throw SpecError(strprintf("dimension must be 1, got %d", d));
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw SpecError(strprintf("singularity exponent must lie in (0, 2), got %g", alpha));
  }
  if (!(amplitude >= 0.0 && amplitude < 1.0)) {
    throw SpecError(strprintf("modulation amplitude must lie in [0, 1), got %g", amplitude));
  }
  KernelSpec spec;
  spec.d = d;
  spec.alpha = alpha;
  spec.amplitude = amplitude;
  return spec;
}

double KernelSpec::modulation(double x) const {
  return amplitude * std::cos(kTwoPi * periodic_frac(x));
}

double KernelSpec::modulation_dx(double x) const {
  return -amplitude * kTwoPi * std::sin(kTwoPi * periodic_frac(x));
}

double KernelSpec::modulation_dxx(double x) const {
  return -amplitude * kTwoPi * kTwoPi * std::cos(kTwoPi * periodic_frac(x));
}

double KernelSpec::density(double x, double y) const {
  return (1.0 + modulation(x)) * std::pow(std::abs(y), -static_cast<double>(d) - alpha);
}

double KernelSpec::comparability() const {
  return std::max(1.0 + amplitude, 1.0 / (1.0 - amplitude));
}

ReactionSpec ReactionSpec::make(double mu_mean, double mu_amp, double saturation) {
  if (!std::isfinite(mu_mean) || !std::isfinite(mu_amp)) {
    throw SpecError("reaction rates must be finite");
  }
  if (!(saturation > 0.0)) {
    throw SpecError(strprintf("saturation coefficient must be positive, got %g", saturation));
  }
  ReactionSpec spec;
  spec.mu_mean = mu_mean;
  spec.mu_amp = mu_amp;
  spec.saturation = saturation;
  return spec;
}

double ReactionSpec::mu(double x) const {
  return mu_mean + mu_amp * std::cos(kTwoPi * periodic_frac(x));
}

double ReactionSpec::mu_min() const { return mu_mean - std::abs(mu_amp); }

double ReactionSpec::mu_max() const { return mu_mean + std::abs(mu_amp); }

double ReactionSpec::value(double x, double u) const {
  return u * (mu(x) - saturation * u);
}

double ReactionSpec::du(double x, double u) const {
  return mu(x) - 2.0 * saturation * u;
}

double ReactionSpec::carrying_bound() const {
  return std::max(mu_max(), 0.0) / saturation;
}

InitialData InitialData::make(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw SpecError(strprintf("initial amplitude must be positive, got %g", c));
  }
  InitialData data;
  data.c = c;
  return data;
}

double InitialData::value(double x, int d, double alpha) const {
  return c / (1.0 + std::pow(std::abs(x), static_cast<double>(d) + alpha));
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  try {
    ProblemSpec problem;
    problem.kernel = KernelSpec::make(j.at("d").get<int>(), j.at("alpha").get<double>(),
                                      j.at("kernel").at("amplitude").get<double>());
    const auto& r = j.at("reaction");
    problem.reaction = ReactionSpec::make(r.at("mu_mean").get<double>(), r.at("mu_amp").get<double>(),
                                          r.at("saturation").get<double>());
    problem.initial = InitialData::make(j.at("initial").at("c").get<double>());
    if (j.contains("validation")) {
      const auto& v = j.at("validation");
      if (v.contains("samples")) problem.validation.samples = v.at("samples").get<int>();
      if (v.contains("seed")) problem.validation.seed = v.at("seed").get<std::uint64_t>();
    }
    if (problem.validation.samples < 1) throw ConfigError("validation.samples must be positive");
    return problem;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad problem file " + path.string() + ": " + e.what());
  }
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

namespace {

ValidationCheck summarize(const std::string& name, double max_deviation, double tolerance) {
  ValidationCheck check;
  check.name = name;
  check.passed = max_deviation <= tolerance;
  check.detail = strprintf("max deviation %.3g (tolerance %.3g)", max_deviation, tolerance);
  return check;
}

}  // namespace

ValidationReport validate_assumptions(const ProblemSpec& problem) {
  const KernelSpec& kernel = problem.kernel;
  const ReactionSpec& reaction = problem.reaction;
  const InitialData& initial = problem.initial;
  const int samples = problem.validation.samples;
  std::mt19937_64 rng(problem.validation.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto sample_x = [&]() { return -3.0 + 6.0 * unit(rng); };
  auto sample_y = [&]() {
    const double magnitude = std::pow(10.0, -6.0 + 9.0 * unit(rng));
    return (unit(rng) < 0.5) ? -magnitude : magnitude;
  };

  const double dim_exp = static_cast<double>(kernel.d) + kernel.alpha;
  const double cap = std::max(reaction.carrying_bound(), 1.0);

  ValidationReport report;

  double dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = sample_x();
    const double y = std::abs(sample_y());
    const double k_plus = kernel.density(x, y);
    const double k_minus = kernel.density(x, -y);
    dev = std::max(dev, std::abs(k_plus - k_minus) / k_plus);
  }
  report.checks.push_back(summarize("kernel symmetry in y", dev, 1e-12));

  dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = sample_x();
    const double y = sample_y();
    const double ratio = kernel.density(x, y) * std::pow(std::abs(y), dim_exp);
    dev = std::max(dev, std::max(kernel.lower_ellipticity() - ratio,
                                 ratio - kernel.upper_ellipticity()));
  }
  report.checks.push_back(summarize("kernel two-sided bounds", dev, 1e-12));

  dev = 0.0;
  const double comparability = kernel.comparability();
  for (int s = 0; s < samples; ++s) {
    const double y = sample_y();
    const double x = sample_x();
    const double reference = std::pow(std::abs(y), -dim_exp);
    const double ratio = kernel.density(x, y) / reference;
    dev = std::max(dev, std::max(ratio - comparability, 1.0 / ratio - comparability));
  }
  report.checks.push_back(summarize("kernel comparability to the stable kernel", dev, 1e-12));

  dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = sample_x();
    const double y = sample_y();
    const double base = kernel.density(x, y);
    dev = std::max(dev, std::abs(kernel.density(x + 1.0, y) - base) / base);
  }
  report.checks.push_back(summarize("kernel periodicity in x", dev, 1e-9));

  dev = 0.0;
  const double fd_step = 1e-6;
  for (int s = 0; s < samples; ++s) {
    const double x = sample_x();
    const double fd = (kernel.modulation(x + fd_step) - kernel.modulation(x - fd_step)) / (2.0 * fd_step);
    dev = std::max(dev, std::abs(kernel.modulation_dx(x) - fd));
  }
  report.checks.push_back(summarize("kernel modulation derivative", dev, 1e-7));

  dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    dev = std::max(dev, std::abs(reaction.value(sample_x(), 0.0)));
  }
  report.checks.push_back(summarize("reaction vanishes at zero", dev, 1e-15));

  dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = sample_x();
    const double u = cap * std::max(unit(rng), 1e-12);
    dev = std::max(dev, reaction.value(x, u) - reaction.mu(x) * u);
  }
  report.checks.push_back(summarize("reaction below its linearization", dev, 1e-12));

  dev = 0.0;
  const double u_step = 1e-7;
  for (int s = 0; s < samples; ++s) {
    const double x = sample_x();
    const double fd = (reaction.value(x, u_step) - reaction.value(x, -u_step)) / (2.0 * u_step);
    dev = std::max(dev, std::abs(fd - reaction.mu(x)));
    dev = std::max(dev, std::abs(reaction.du(x, 0.0) - reaction.mu(x)));
  }
  report.checks.push_back(summarize("reaction linearization at zero", dev, 1e-8));

  dev = -1.0;
  for (int s = 0; s < samples; ++s) {
    const double u = cap * (1.0 + unit(rng));
    dev = std::max(dev, reaction.value(sample_x(), u));
  }
  report.checks.push_back(summarize("reaction negative above carrying level", dev, 1e-12));

  dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = sample_x();
    const double u_low = cap * unit(rng);
    const double u_high = u_low + cap * std::max(unit(rng), 1e-12);
    dev = std::max(dev, reaction.du(x, u_high) - reaction.du(x, u_low));
  }
  report.checks.push_back(summarize("reaction slope decreasing in u", dev, 1e-12));

  dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = std::pow(10.0, 4.0 + 4.0 * unit(rng));
    const double value = initial.value(x, kernel.d, kernel.alpha);
    if (!(value > 0.0)) dev = std::max(dev, 1.0);
    dev = std::max(dev, std::abs(initial.value(-x, kernel.d, kernel.alpha) - value));
    const double tail_ratio = value * std::pow(x, dim_exp) / initial.c;
    dev = std::max(dev, std::abs(tail_ratio - 1.0));
    const double closer = initial.value(0.5 * x, kernel.d, kernel.alpha);
    if (closer <= value) dev = std::max(dev, 1.0);
  }
  report.checks.push_back(summarize("initial data symmetry and tail decay", dev, 1e-6));

  return report;
}

}  // namespace levyfront
