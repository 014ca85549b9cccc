#include "levyfront/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"

namespace levyfront {

namespace {

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void pad() {
    if (lo > hi) return;
    if (lo == hi) {
      const double margin = std::abs(lo) > 0.0 ? 0.1 * std::abs(lo) : 1.0;
      lo -= margin;
      hi += margin;
    } else {
      const double margin = 0.04 * (hi - lo);
      lo -= margin;
      hi += margin;
    }
  }
};

std::string escape_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Tick label with enough digits to distinguish neighbours without the
// full 17-digit form.
std::string tick_label(double value) {
  if (value == 0.0) return "0";
  const double mag = std::abs(value);
  if (mag >= 1e4 || mag < 1e-3) return strprintf("%.2e", value);
  return strprintf("%.4g", value);
}

std::vector<double> tick_positions(double lo, double hi, int target) {
  const double span = hi - lo;
  const double raw = span / target;
  const double power = std::pow(10.0, std::floor(std::log10(raw)));
  double step = power;
  for (double mult : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (power * mult >= raw) {
      step = power * mult;
      break;
    }
  }
  std::vector<double> ticks;
  double first = std::ceil(lo / step) * step;
  for (double v = first; v <= hi + 0.5 * step; v += step) {
    ticks.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  }
  return ticks;
}

}  // namespace

std::string line_plot_svg(const PlotLayout& layout, const std::vector<PlotSeries>& series) {
  Range xr;
  Range yr;
  for (const auto& s : series) {
    if (s.xs.size() != s.ys.size()) {
      throw InputError("plot series '" + s.label + "' has mismatched lengths");
    }
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (std::isfinite(s.xs[i]) && std::isfinite(s.ys[i])) {
        xr.include(s.xs[i]);
        yr.include(s.ys[i]);
      }
    }
  }
  if (xr.lo > xr.hi) {
    throw InputError("plot has no finite data points");
  }
  xr.pad();
  yr.pad();

  const int w = layout.width;
  const int h = layout.height;
  const double left = 64.0;
  const double right = w - 16.0;
  const double top = 34.0;
  const double bottom = h - 44.0;
  const auto to_px_x = [&](double v) {
    return left + (v - xr.lo) / (xr.hi - xr.lo) * (right - left);
  };
  const auto to_px_y = [&](double v) {
    return bottom - (v - yr.lo) / (yr.hi - yr.lo) * (bottom - top);
  };

  std::string out = strprintf(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
      "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n",
      w, h, w, h);
  out += strprintf("<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", w, h);
  out += strprintf(
      "<text x=\"%.1f\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
      0.5 * (left + right), escape_text(layout.title).c_str());

  for (double tick : tick_positions(xr.lo, xr.hi, 6)) {
    const double px = to_px_x(tick);
    out += strprintf(
        "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n", px, top,
        px, bottom);
    out += strprintf(
        "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n", px, bottom + 16.0,
        tick_label(tick).c_str());
  }
  for (double tick : tick_positions(yr.lo, yr.hi, 6)) {
    const double py = to_px_y(tick);
    out += strprintf(
        "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n", left, py,
        right, py);
    out += strprintf(
        "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%s</text>\n", left - 6.0, py + 4.0,
        tick_label(tick).c_str());
  }
  out += strprintf(
      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
      "stroke=\"#555\"/>\n",
      left, top, right - left, bottom - top);
  out += strprintf(
      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n", 0.5 * (left + right),
      static_cast<double>(h) - 8.0, escape_text(layout.x_label).c_str());
  out += strprintf(
      "<text x=\"14\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 14 %.1f)\">"
      "%s</text>\n",
      0.5 * (top + bottom), 0.5 * (top + bottom), escape_text(layout.y_label).c_str());

  double legend_y = top + 14.0;
  for (const auto& s : series) {
    std::string points;
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      points += strprintf("%.2f,%.2f ", to_px_x(s.xs[i]), to_px_y(s.ys[i]));
      if (s.draw_markers) {
        out += strprintf("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.6\" fill=\"%s\"/>\n",
                         to_px_x(s.xs[i]), to_px_y(s.ys[i]), s.color.c_str());
      }
    }
    if (s.draw_line && !points.empty()) {
      out += strprintf(
          "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.6\"/>\n",
          points.c_str(), s.color.c_str());
    }
    if (!s.label.empty()) {
      out += strprintf(
          "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
          "stroke-width=\"3\"/>\n",
          left + 10.0, legend_y - 4.0, left + 30.0, legend_y - 4.0, s.color.c_str());
      out += strprintf("<text x=\"%.1f\" y=\"%.1f\">%s</text>\n", left + 36.0, legend_y,
                       escape_text(s.label).c_str());
      legend_y += 16.0;
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace levyfront
