// Spatial meshes: a uniform grid on the unit torus for cell-problem and
// eigenvalue work, and a symmetric graded grid on a large interval for
// Cauchy evolution, with a uniform core around the origin and
// geometrically stretched cells toward the far field.
#pragma once

#include <Eigen/Core>

namespace levyfront {

struct TorusGrid {
  int n = 0;
  double h = 0.0;
  Eigen::VectorXd nodes;

  // n must be even and at least 16; nodes are x_i = i / n.
  static TorusGrid make(int n);
};

struct LineGrid {
  Eigen::VectorXd nodes;
  Eigen::VectorXd cell_edges;
  double r_max = 0.0;
  double r_edge = 0.0;
  double core_half_width = 0.0;

  // Symmetric about 0: uniform nodes with the given spacing on
  // [-core_half_width, core_half_width], then log_points_per_side
  // geometrically spaced nodes per side out to r_max.  Cell edges are
  // Voronoi midpoints; the outermost edges extend half the last gap
  // beyond the outermost nodes.
  static LineGrid build(double r_max, double core_half_width, double core_spacing,
                        int log_points_per_side);

  int size() const { return static_cast<int>(nodes.size()); }
  double cell_width(int i) const { return cell_edges[i + 1] - cell_edges[i]; }
};

}  // namespace levyfront
