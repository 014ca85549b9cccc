#include "levyfront/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"
#include "levyfront/svg.hpp"

namespace levyfront {

namespace {

using nlohmann::json;

constexpr double kSteadyResidualBound = 1e-6;
constexpr double kRateRelTolerance = 0.10;
constexpr double kFitQualityFloor = 0.99;
constexpr double kLevelSpreadTolerance = 0.05;

const char* const kSeriesColors[] = {"#1f6feb", "#d29922", "#2da44e", "#da3633", "#8957e5"};
constexpr int kSeriesColorCount = 5;

std::string escape_html(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double value) { return escape_html(strprintf("%.6g", value)); }

bool stage_completed(const RunManifest& manifest, const std::string& name) {
  const StageResult* stage = manifest.find(name);
  return stage != nullptr && stage->status == "completed";
}

json load_artifact_json(const RunManifest& manifest, const std::string& file) {
  const auto path = manifest.out_dir / file;
  try {
    return json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw IoError("bad artifact " + path.string() + ": " + e.what());
  }
}

std::string front_plot(const json& rates, const CsvTable& fronts) {
  const std::size_t level_col = fronts.column("level");
  const std::size_t time_col = fronts.column("time");
  const std::size_t radius_col = fronts.column("radius");

  std::vector<PlotSeries> series;
  int color_index = 0;
  for (const auto& fit : rates.at("fits")) {
    const double level = fit.at("level").get<double>();
    const std::string color = kSeriesColors[color_index % kSeriesColorCount];
    ++color_index;

    PlotSeries points;
    points.label = strprintf("level %.3g", level);
    points.color = color;
    points.draw_line = false;
    points.draw_markers = true;
    for (const auto& row : fronts.rows) {
      if (row[level_col] == level && row[radius_col] > 0.0) {
        points.xs.push_back(row[time_col]);
        points.ys.push_back(std::log(row[radius_col]));
      }
    }

    const double slope = fit.at("slope").get<double>();
    const double intercept = fit.at("intercept").get<double>();
    const double t0 = fit.at("t_begin").get<double>();
    const double t1 = fit.at("t_end").get<double>();
    PlotSeries line;
    line.label = strprintf("fit slope %.4g", slope);
    line.color = color;
    line.xs = {t0, t1};
    line.ys = {slope * t0 + intercept, slope * t1 + intercept};

    series.push_back(std::move(points));
    series.push_back(std::move(line));
  }

  PlotLayout layout;
  layout.title = "Front spreading on the log-radius scale";
  layout.x_label = "time t";
  layout.y_label = "log r_h(t)";
  return line_plot_svg(layout, series);
}

std::string deviation_plot(const CsvTable& deviations) {
  const std::size_t eps_col = deviations.column("epsilon");
  const std::size_t dev_col = deviations.column("deviation");

  PlotSeries series;
  series.label = "sup deviation";
  series.draw_markers = true;
  for (const auto& row : deviations.rows) {
    series.xs.push_back(row[eps_col]);
    series.ys.push_back(row[dev_col]);
  }

  PlotLayout layout;
  layout.title = "Rescaled profile deviation per epsilon";
  layout.x_label = "epsilon";
  layout.y_label = "sup deviation";
  return line_plot_svg(layout, {series});
}

void append_figure(std::ostringstream& html, const std::string& svg) {
  html << "<figure>" << svg << "</figure>\n";
}

}  // namespace

bool ReportSummary::all_passed() const {
  for (const auto& row : rows) {
    if (!row.passed) return false;
  }
  return true;
}

ReportSummary write_report(const ExperimentConfig& config, const RunManifest& manifest) {
  std::string missing;
  for (const auto& [file, checksum] : manifest.artifacts) {
    (void)checksum;
    if (file == "report.html" || file == "report.json") continue;
    const auto path = manifest.out_dir / file;
    if (!std::filesystem::exists(path)) missing += "\n  " + path.string();
  }
  if (!missing.empty()) {
    throw IoError("report inputs missing on disk:" + missing);
  }

  ReportSummary summary;
  std::ostringstream sections;

  if (stage_completed(manifest, "eigen")) {
    const json eigen = load_artifact_json(manifest, "eigen.json");
    const double lambda1 = eigen.at("lambda1").get<double>();
    const double residual = eigen.at("residual").get<double>();
    const double tolerance = eigen.at("tolerance").get<double>();
    summary.rows.push_back(
        {"principal eigenvalue", residual <= tolerance,
         strprintf("lambda1 = %.9g, residual %.3g within tolerance %.3g after %d iterations",
                   lambda1, residual, tolerance, eigen.at("iterations").get<int>())});
    sections << "<h2>Principal eigenvalue</h2>\n<table>\n"
             << "<tr><th>lambda1</th><th>residual</th><th>iterations</th><th>grid</th></tr>\n"
             << "<tr><td class=\"num\">" << escape_html(fmt17(lambda1)) << "</td><td class=\"num\">"
             << num(residual) << "</td><td class=\"num\">" << eigen.at("iterations").get<int>()
             << "</td><td class=\"num\">" << eigen.at("n").get<int>() << "</td></tr>\n</table>\n";
  }

  if (stage_completed(manifest, "steady")) {
    const json steady = load_artifact_json(manifest, "steady.json");
    const double lo = steady.at("min").get<double>();
    const double hi = steady.at("max").get<double>();
    const double mean = steady.at("weak_mean").get<double>();
    const double residual = steady.at("residual").get<double>();
    summary.rows.push_back(
        {"positive steady state", residual < kSteadyResidualBound && lo > 0.0,
         strprintf("residual %.3g below %.0e, range [%.6g, %.6g], weak mean %.6g", residual,
                   kSteadyResidualBound, lo, hi, mean)});
    sections << "<h2>Positive steady state</h2>\n<table>\n"
             << "<tr><th>min</th><th>max</th><th>weak mean</th><th>residual</th>"
             << "<th>iterations</th></tr>\n"
             << "<tr><td class=\"num\">" << num(lo) << "</td><td class=\"num\">" << num(hi)
             << "</td><td class=\"num\">" << escape_html(fmt17(mean)) << "</td><td class=\"num\">"
             << num(residual) << "</td><td class=\"num\">" << steady.at("iterations").get<int>()
             << "</td></tr>\n</table>\n";
  }

  if (stage_completed(manifest, "front")) {
    const json rates = load_artifact_json(manifest, "rates.json");
    const double prediction = rates.at("prediction").get<double>();
    sections << "<h2>Front spreading</h2>\n"
             << "<p>Predicted exponential rate |lambda1|/(d+alpha) = " << num(prediction)
             << ".</p>\n<table>\n"
             << "<tr><th>level</th><th>slope</th><th>std. error</th><th>r&sup2;</th>"
             << "<th>points</th><th>window</th><th>rel. error</th></tr>\n";
    std::vector<double> slopes;
    for (const auto& fit : rates.at("fits")) {
      const double level = fit.at("level").get<double>();
      const double slope = fit.at("slope").get<double>();
      const double r_squared = fit.at("r_squared").get<double>();
      const double rel_error = fit.at("rel_error").get<double>();
      slopes.push_back(slope);
      summary.rows.push_back(
          {strprintf("front rate, level %.3g", level),
           rel_error <= kRateRelTolerance && r_squared >= kFitQualityFloor,
           strprintf("slope %.6g vs predicted %.6g (%.1f%% off), r^2 = %.6f over %d points",
                     slope, prediction, 100.0 * rel_error, r_squared,
                     fit.at("points").get<int>())});
      sections << "<tr><td class=\"num\">" << num(level) << "</td><td class=\"num\">"
               << num(slope) << "</td><td class=\"num\">"
               << num(fit.at("slope_stderr").get<double>()) << "</td><td class=\"num\">"
               << strprintf("%.6f", r_squared) << "</td><td class=\"num\">"
               << fit.at("points").get<int>() << "</td><td class=\"num\">["
               << num(fit.at("t_begin").get<double>()) << ", "
               << num(fit.at("t_end").get<double>()) << "]</td><td class=\"num\">"
               << strprintf("%.2f%%", 100.0 * rel_error) << "</td></tr>\n";
    }
    sections << "</table>\n";
    if (slopes.size() >= 2) {
      const double lo = *std::min_element(slopes.begin(), slopes.end());
      const double hi = *std::max_element(slopes.begin(), slopes.end());
      const double mean = 0.5 * (lo + hi);
      const double spread = mean > 0.0 ? (hi - lo) / mean : 0.0;
      summary.rows.push_back({"front level invariance", spread <= kLevelSpreadTolerance,
                              strprintf("slopes span [%.6g, %.6g], spread %.2f%% of their mean",
                                        lo, hi, 100.0 * spread)});
    }
    try {
      append_figure(sections, front_plot(rates, read_csv_file(manifest.out_dir / "fronts.csv")));
    } catch (const InputError& e) {
      sections << "<p class=\"note\">front plot omitted: " << escape_html(e.what()) << "</p>\n";
    }

    if (config.rescale.epsilons.empty()) {
      sections << "<h2>Homogenization cascade</h2>\n<p class=\"note\">No epsilon schedule was"
               << " configured, so the rescaled-profile comparison is omitted.</p>\n";
    } else {
      const CsvTable deviations = read_csv_file(manifest.out_dir / "deviations.csv");
      const std::size_t eps_col = deviations.column("epsilon");
      const std::size_t dev_col = deviations.column("deviation");
      bool decreasing = !deviations.rows.empty();
      std::string cascade;
      for (std::size_t k = 0; k < deviations.rows.size(); ++k) {
        if (k > 0) {
          cascade += "; ";
          if (deviations.rows[k][dev_col] >= deviations.rows[k - 1][dev_col]) decreasing = false;
        }
        cascade += strprintf("%.4g -> %.5g", deviations.rows[k][eps_col],
                             deviations.rows[k][dev_col]);
      }
      summary.rows.push_back({"profile deviations decreasing", decreasing, cascade});
      sections << "<h2>Homogenization cascade</h2>\n<table>\n"
               << "<tr><th>epsilon</th><th>sup deviation</th></tr>\n";
      for (const auto& row : deviations.rows) {
        sections << "<tr><td class=\"num\">" << num(row[eps_col]) << "</td><td class=\"num\">"
                 << escape_html(fmt17(row[dev_col])) << "</td></tr>\n";
      }
      sections << "</table>\n";
      try {
        append_figure(sections, deviation_plot(deviations));
      } catch (const InputError& e) {
        sections << "<p class=\"note\">deviation plot omitted: " << escape_html(e.what())
                 << "</p>\n";
      }
    }
  }

  if (stage_completed(manifest, "bounds")) {
    const json bounds = load_artifact_json(manifest, "bounds.json");
    const json& barriers = bounds.at("barriers");
    const json& sandwich = bounds.at("sandwich");
    const json& residuals = bounds.at("residuals");
    const double d_hat = bounds.at("d_hat").get<double>();
    const bool truncation = bounds.at("truncation_flag").get<bool>();
    const long lower_total = sandwich.at("lower_total").get<long>();
    const long upper_total = sandwich.at("upper_total").get<long>();
    const bool upper_ok = residuals.at("upper_ok").get<bool>();
    const bool lower_ok = residuals.at("lower_ok").get<bool>();

    summary.rows.push_back(
        {"comparison constant", !truncation,
         truncation ? strprintf("D = %.6g, but the tail weight window was truncated", d_hat)
                    : strprintf("D = %.6g with the tail weight window fully resolved", d_hat)});
    std::string witness_note = strprintf("%ld lower and %ld upper violations", lower_total,
                                         upper_total);
    if (lower_total > 0) {
      witness_note += strprintf(", worst lower gap %.3g at t = %.4g, x = %.4g",
                                sandwich.at("worst_lower").at("barrier").get<double>() -
                                    sandwich.at("worst_lower").at("value").get<double>(),
                                sandwich.at("worst_lower").at("time").get<double>(),
                                sandwich.at("worst_lower").at("x").get<double>());
    }
    if (upper_total > 0) {
      witness_note += strprintf(", worst upper gap %.3g at t = %.4g, x = %.4g",
                                sandwich.at("worst_upper").at("value").get<double>() -
                                    sandwich.at("worst_upper").at("barrier").get<double>(),
                                sandwich.at("worst_upper").at("time").get<double>(),
                                sandwich.at("worst_upper").at("x").get<double>());
    }
    summary.rows.push_back(
        {"barrier sandwich", lower_total == 0 && upper_total == 0, witness_note});
    std::string residual_note = strprintf(
        "upper residual min %.3g against scale %.3g, lower residual max %.3g against scale %.3g",
        residuals.at("upper_min").get<double>(), residuals.at("upper_scale").get<double>(),
        residuals.at("lower_max").get<double>(), residuals.at("lower_scale").get<double>());
    if (residuals.at("suggests_acc_rerun").get<bool>()) {
      residual_note += "; the growth constant looks undersized, recompute the comparison constant";
    }
    summary.rows.push_back({"barrier residuals one-signed", upper_ok && lower_ok, residual_note});

    sections << "<h2>Barrier verification</h2>\n<table>\n"
             << "<tr><th>D</th><th>a0</th><th>b0</th><th>c_lower</th><th>c_upper</th>"
             << "<th>lambda1</th></tr>\n"
             << "<tr><td class=\"num\">" << escape_html(fmt17(d_hat)) << "</td><td class=\"num\">"
             << num(barriers.at("a0").get<double>()) << "</td><td class=\"num\">"
             << num(barriers.at("b0").get<double>()) << "</td><td class=\"num\">"
             << num(barriers.at("c_lower").get<double>()) << "</td><td class=\"num\">"
             << num(barriers.at("c_upper").get<double>()) << "</td><td class=\"num\">"
             << num(barriers.at("lambda1").get<double>()) << "</td></tr>\n</table>\n"
             << "<p>Sandwich check: " << escape_html(witness_note) << ".<br>Residual signs: "
             << escape_html(residual_note) << ".</p>\n";
  }

  {
    std::string incomplete;
    int counted = 0;
    for (const auto& stage : manifest.stages) {
      if (stage.name == "report") continue;
      ++counted;
      if (stage.status != "completed") {
        if (!incomplete.empty()) incomplete += "; ";
        incomplete += stage.name + " " + stage.status;
        if (!stage.detail.empty()) incomplete += " (" + stage.detail + ")";
      }
    }
    if (counted == 0) {
      summary.rows.push_back({"pipeline", false, "no stages recorded"});
    } else if (incomplete.empty()) {
      summary.rows.push_back(
          {"pipeline", true, strprintf("all %d computation stages completed", counted)});
    } else {
      summary.rows.push_back({"pipeline", false, incomplete});
    }
  }

  std::ostringstream html;
  html << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>"
       << escape_html(manifest.experiment) << "</title>\n<style>\n"
       << "body{font-family:system-ui,sans-serif;margin:2rem auto;max-width:62rem;"
       << "padding:0 1rem;color:#1f2328}\n"
       << "h1{font-size:1.5rem}h2{font-size:1.15rem;margin-top:2rem}\n"
       << "table{border-collapse:collapse;margin:0.75rem 0}\n"
       << "th,td{border:1px solid #d0d7de;padding:0.3rem 0.6rem;text-align:left;"
       << "font-size:0.9rem}\nth{background:#f6f8fa}\n"
       << "td.num{font-family:ui-monospace,SFMono-Regular,monospace;text-align:right}\n"
       << ".pass{color:#116329;font-weight:600}.fail{color:#a40e26;font-weight:600}\n"
       << ".note{color:#57606a;font-style:italic}\n"
       << ".gap{background:#fff8c5;border:1px solid #d4a72c;padding:0.6rem 0.8rem}\n"
       << "figure{margin:1.25rem 0}\n</style>\n</head>\n<body>\n"
       << "<h1>Invasion run report: " << escape_html(manifest.experiment) << "</h1>\n"
       << "<p class=\"note\">configuration hash " << escape_html(manifest.config_hash)
       << ", code version " << escape_html(manifest.version) << "</p>\n";

  bool has_gap = false;
  for (const auto& stage : manifest.stages) {
    if (stage.name != "report" && stage.status != "completed") has_gap = true;
  }
  if (has_gap) {
    html << "<p class=\"gap\">This run is incomplete; sections whose stage failed or was"
         << " skipped are absent below. See the stage table for the failure detail.</p>\n";
  }

  html << "<h2>Verdicts</h2>\n<table>\n<tr><th>check</th><th>verdict</th><th>detail</th></tr>\n";
  for (const auto& row : summary.rows) {
    html << "<tr><td>" << escape_html(row.name) << "</td><td class=\""
         << (row.passed ? "pass\">pass" : "fail\">fail") << "</td><td>"
         << escape_html(row.detail) << "</td></tr>\n";
  }
  html << "</table>\n";

  html << "<h2>Stages</h2>\n<table>\n"
       << "<tr><th>stage</th><th>status</th><th>wall time</th><th>detail</th></tr>\n";
  for (const auto& stage : manifest.stages) {
    if (stage.name == "report") continue;
    html << "<tr><td>" << escape_html(stage.name) << "</td><td>" << escape_html(stage.status)
         << "</td><td class=\"num\">" << strprintf("%.2fs", stage.wall_seconds) << "</td><td>"
         << escape_html(stage.detail) << "</td></tr>\n";
  }
  html << "</table>\n" << sections.str();

  html << "<h2>Artifacts</h2>\n<table>\n<tr><th>file</th><th>checksum</th></tr>\n";
  for (const auto& [file, checksum] : manifest.artifacts) {
    if (file == "report.html" || file == "report.json") continue;
    html << "<tr><td>" << escape_html(file) << "</td><td class=\"num\">"
         << escape_html(checksum) << "</td></tr>\n";
  }
  html << "</table>\n</body>\n</html>\n";

  summary.document = manifest.out_dir / "report.html";
  write_text_file(summary.document, html.str());

  json rows = json::array();
  for (const auto& row : summary.rows) {
    rows.push_back({{"name", row.name}, {"passed", row.passed}, {"detail", row.detail}});
  }
  write_text_file(manifest.out_dir / "report.json",
                  json{{"experiment", manifest.experiment},
                       {"config_hash", manifest.config_hash},
                       {"version", manifest.version},
                       {"all_passed", summary.all_passed()},
                       {"rows", rows}}
                          .dump(2) +
                      "\n");
  return summary;
}

}  // namespace levyfront
