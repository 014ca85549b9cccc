#include "levyfront/config.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"

namespace levyfront {

namespace {

using nlohmann::json;

double positive_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const double value = j.at(key).get<double>();
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(strprintf("field '%s' must be positive and finite", key));
  }
  return value;
}

std::vector<double> sorted_schedule(const json& j, const char* key, bool descending,
                                    const std::vector<double>& fallback) {
  if (!j.contains(key)) return fallback;
  auto values = j.at(key).get<std::vector<double>>();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ConfigError(strprintf("schedule '%s' holds a non-finite entry", key));
    }
    if (i > 0) {
      const bool ordered = descending ? values[i] < values[i - 1] : values[i] > values[i - 1];
      if (!ordered) {
        throw ConfigError(strprintf("schedule '%s' must be strictly %s", key,
                                    descending ? "decreasing" : "increasing"));
      }
    }
  }
  return values;
}

}  // namespace

std::vector<double> ExperimentConfig::snapshot_times() const {
  std::vector<double> times{0.0};
  if (evolve.snapshot_every > 0.0) {
    const long count = std::lround(std::floor(evolve.horizon / evolve.snapshot_every + 1e-9));
    for (long k = 1; k <= count; ++k) times.push_back(k * evolve.snapshot_every);
  } else if (evolve.horizon > 0.0) {
    times.push_back(evolve.horizon);
  }
  return times;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }

  ExperimentConfig config;
  config.config_path = path;
  try {
    config.name = j.at("name").get<std::string>();
    if (config.name.empty()) throw ConfigError("experiment name must not be empty");

    const auto problem_ref = std::filesystem::path(j.at("problem").get<std::string>());
    config.problem_path =
        problem_ref.is_absolute() ? problem_ref : path.parent_path() / problem_ref;
    if (!std::filesystem::exists(config.problem_path)) {
      throw ConfigError("problem file does not exist: " + config.problem_path.string());
    }
    config.problem = load_problem(config.problem_path);

    if (j.contains("eigen")) {
      const auto& e = j.at("eigen");
      if (e.contains("n")) config.eigen.n = e.at("n").get<int>();
      if (config.eigen.n < 4) throw ConfigError("eigen resolution must be at least 4");
      config.eigen.tolerance = positive_field(e, "tolerance", config.eigen.tolerance);
    }
    if (j.contains("steady")) {
      config.steady.tolerance =
          positive_field(j.at("steady"), "tolerance", config.steady.tolerance);
    }

    const auto& ev = j.at("evolve");
    if (!ev.contains("r_max")) throw ConfigError("field 'r_max' is required");
    config.evolve.r_max = positive_field(ev, "r_max", 0.0);
    config.evolve.core_half_width =
        positive_field(ev, "core_half_width", config.evolve.core_half_width);
    config.evolve.core_spacing = positive_field(ev, "core_spacing", config.evolve.core_spacing);
    config.evolve.log_nodes_per_side = ev.at("log_nodes_per_side").get<int>();
    if (config.evolve.log_nodes_per_side < 1) {
      throw ConfigError("field 'log_nodes_per_side' must be at least 1");
    }
    if (ev.contains("tail")) {
      config.evolve.tail = tail_model_from_string(ev.at("tail").get<std::string>());
    }
    if (ev.contains("scheme")) {
      config.evolve.scheme = scheme_from_string(ev.at("scheme").get<std::string>());
    }
    if (ev.contains("dt")) {
      config.evolve.dt = ev.at("dt").get<double>();
      if (config.evolve.dt < 0.0 || !std::isfinite(config.evolve.dt)) {
        throw ConfigError("field 'dt' must be zero or positive");
      }
    }
    if (!ev.contains("horizon")) throw ConfigError("field 'horizon' is required");
    config.evolve.horizon = positive_field(ev, "horizon", 0.0);
    config.evolve.snapshot_every = positive_field(ev, "snapshot_every", config.evolve.horizon);
    if (config.evolve.snapshot_every > config.evolve.horizon) {
      throw ConfigError("field 'snapshot_every' must not exceed the horizon");
    }
    if (ev.contains("stored_snapshots")) {
      config.evolve.stored_snapshots = ev.at("stored_snapshots").get<int>();
      if (config.evolve.stored_snapshots < 2) {
        throw ConfigError("field 'stored_snapshots' must be at least 2");
      }
    }

    if (j.contains("front")) {
      const auto& f = j.at("front");
      config.front.levels = sorted_schedule(f, "levels", true, {});
      for (double level : config.front.levels) {
        if (!(level > 0.0)) throw ConfigError("front levels must be positive");
      }
      if (f.contains("fit_window")) {
        const auto w = f.at("fit_window").get<std::vector<double>>();
        if (w.size() != 2 || !(0.0 <= w[0]) || !(w[0] < w[1]) || !(w[1] <= 1.0)) {
          throw ConfigError("field 'fit_window' must be two increasing fractions of the horizon");
        }
        config.front.fit_begin_fraction = w[0];
        config.front.fit_end_fraction = w[1];
      }
    }

    if (j.contains("rescale")) {
      const auto& r = j.at("rescale");
      config.rescale.epsilons = sorted_schedule(r, "epsilons", true, {});
      for (double eps : config.rescale.epsilons) {
        if (!(eps > 0.0) || eps > 1.0) throw ConfigError("epsilons must lie in (0, 1]");
      }
      if (r.contains("window")) {
        const auto& w = r.at("window");
        config.rescale.window.x_min = w.at("x_min").get<double>();
        config.rescale.window.x_max = w.at("x_max").get<double>();
        config.rescale.window.t_min = w.at("t_min").get<double>();
        config.rescale.window.t_max = w.at("t_max").get<double>();
        config.rescale.window.nx = w.value("nx", config.rescale.window.nx);
        config.rescale.window.nt = w.value("nt", config.rescale.window.nt);
        if (!(config.rescale.window.x_min <= config.rescale.window.x_max) ||
            !(config.rescale.window.t_min <= config.rescale.window.t_max) ||
            config.rescale.window.nx < 1 || config.rescale.window.nt < 1) {
          throw ConfigError("field 'window' must hold ordered bounds and positive counts");
        }
      }
    }

    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      config.bounds.acc_times = sorted_schedule(b, "acc_times", false, config.bounds.acc_times);
      config.bounds.residual_times =
          sorted_schedule(b, "residual_times", false, config.bounds.residual_times);
      for (double t : config.bounds.acc_times) {
        if (t < 0.0) throw ConfigError("acc_times must be nonnegative");
      }
      for (double t : config.bounds.residual_times) {
        if (t < 0.0) throw ConfigError("residual_times must be nonnegative");
      }
    }

    if (j.contains("out_dir")) {
      const auto out_ref = std::filesystem::path(j.at("out_dir").get<std::string>());
      config.out_dir = out_ref.is_absolute() ? out_ref : path.parent_path() / out_ref;
    }
  } catch (const json::exception& e) {
    throw ConfigError("bad experiment file " + path.string() + ": " + e.what());
  }
  return config;
}

std::string experiment_digest(const ExperimentConfig& config) {
  std::string blob = read_text_file(config.config_path);
  blob += '\n';
  blob += read_text_file(config.problem_path);
  blob += '\n';
  blob += strprintf("seed=%llu",
                    static_cast<unsigned long long>(config.problem.validation.seed));
  return hex64(fnv1a64(blob));
}

}  // namespace levyfront
