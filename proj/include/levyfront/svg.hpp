// Small self-contained SVG line plots for the run report: linear axes
// with tick labels, one polyline per series, and an inline legend.  The
// output is a complete <svg> element with no external references.
#pragma once

#include <string>
#include <vector>

namespace levyfront {

struct PlotSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
  std::string color = "#1f6feb";
  bool draw_line = true;
  bool draw_markers = false;
};

struct PlotLayout {
  int width = 640;
  int height = 400;
  std::string title;
  std::string x_label;
  std::string y_label;
};

// Renders the series into one SVG element.  Non-finite points are
// dropped; an empty or degenerate data range raises InputError.
std::string line_plot_svg(const PlotLayout& layout, const std::vector<PlotSeries>& series);

}  // namespace levyfront
