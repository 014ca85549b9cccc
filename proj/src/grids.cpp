#include "levyfront/grids.hpp"

#include <cmath>
#include <vector>

#include "levyfront/errors.hpp"
#include "levyfront/io.hpp"

namespace levyfront {

TorusGrid TorusGrid::make(int n) {
  if (n < 16 || n % 2 != 0) {
    throw InputError(strprintf("torus grid size must be even and at least 16, got %d", n));
  }
  TorusGrid grid;
  grid.n = n;
  grid.h = 1.0 / static_cast<double>(n);
  grid.nodes = Eigen::VectorXd::LinSpaced(n, 0.0, (n - 1) * grid.h);
  return grid;
}

LineGrid LineGrid::build(double r_max, double core_half_width, double core_spacing,
                         int log_points_per_side) {
  if (!(core_half_width > 0.0) || !(core_spacing > 0.0)) {
    throw InputError("line grid core width and spacing must be positive");
  }
  if (!(r_max > 2.0 * core_half_width)) {
    throw InputError(strprintf("line grid extent %g must exceed twice the core half width %g",
                               r_max, core_half_width));
  }
  if (log_points_per_side < 8) {
    throw InputError("line grid needs at least 8 stretched points per side");
  }

  const int core_half_count = static_cast<int>(std::lround(core_half_width / core_spacing));
  if (core_half_count < 4) {
    throw InputError("line grid core must contain at least 4 spacings per side");
  }
  const double spacing = core_half_width / core_half_count;

  std::vector<double> right;
  right.reserve(static_cast<std::size_t>(core_half_count + log_points_per_side) + 1);
  for (int i = 0; i <= core_half_count; ++i) {
    right.push_back(i * spacing);
  }
  const double stretch = std::pow(r_max / core_half_width, 1.0 / log_points_per_side);
  if (!(stretch > 1.0) || !std::isfinite(stretch)) {
    throw InputError("line grid stretch factor is degenerate");
  }
  for (int k = 1; k <= log_points_per_side; ++k) {
    double x = core_half_width * std::pow(stretch, k);
    if (k == log_points_per_side) x = r_max;
    right.push_back(x);
  }
  for (std::size_t i = 1; i < right.size(); ++i) {
    if (!(right[i] > right[i - 1])) {
      throw InputError("line grid nodes are not strictly increasing; reduce stretched points or coarsen the core");
    }
  }

  const int side = static_cast<int>(right.size()) - 1;
  const int total = 2 * side + 1;
  LineGrid grid;
  grid.nodes.resize(total);
  for (int i = 0; i < side; ++i) grid.nodes[i] = -right[static_cast<std::size_t>(side - i)];
  for (int i = 0; i <= side; ++i) grid.nodes[side + i] = right[static_cast<std::size_t>(i)];

  grid.cell_edges.resize(total + 1);
  for (int i = 1; i < total; ++i) {
    grid.cell_edges[i] = 0.5 * (grid.nodes[i - 1] + grid.nodes[i]);
  }
  const double outer_gap = right[static_cast<std::size_t>(side)] - right[static_cast<std::size_t>(side - 1)];
  grid.r_max = r_max;
  grid.r_edge = r_max + 0.5 * outer_gap;
  grid.core_half_width = core_half_width;
  grid.cell_edges[0] = -grid.r_edge;
  grid.cell_edges[total] = grid.r_edge;
  return grid;
}

}  // namespace levyfront
