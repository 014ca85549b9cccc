#include <doctest.h>

#include <cmath>

#include "levyfront/errors.hpp"
#include "levyfront/grids.hpp"

using namespace levyfront;

TEST_CASE("torus grid layout") {
  const TorusGrid grid = TorusGrid::make(32);
  CHECK(grid.n == 32);
  CHECK(grid.h == doctest::Approx(1.0 / 32.0).epsilon(1e-16));
  CHECK(grid.nodes.size() == 32);
  CHECK(grid.nodes[0] == 0.0);
  CHECK(grid.nodes[31] == doctest::Approx(31.0 / 32.0).epsilon(1e-15));

  CHECK_THROWS_AS(TorusGrid::make(15), InputError);
  CHECK_THROWS_AS(TorusGrid::make(8), InputError);
  CHECK_THROWS_AS(TorusGrid::make(17), InputError);
}

TEST_CASE("line grid symmetry and monotonicity") {
  const LineGrid grid = LineGrid::build(1e4, 2.0, 0.25, 40);
  const int m = grid.size();
  CHECK(m % 2 == 1);
  CHECK(grid.nodes[m / 2] == 0.0);
  for (int i = 0; i < m; ++i) {
    CHECK(grid.nodes[i] == -grid.nodes[m - 1 - i]);
    if (i > 0) CHECK(grid.nodes[i] > grid.nodes[i - 1]);
  }
  CHECK(grid.nodes[m - 1] == doctest::Approx(1e4).epsilon(1e-14));
  CHECK(grid.r_max == doctest::Approx(1e4).epsilon(1e-14));
  CHECK(grid.r_edge > grid.r_max);

  CHECK(grid.cell_edges.size() == m + 1);
  for (int i = 0; i < m; ++i) {
    CHECK(grid.cell_edges[i] < grid.nodes[i]);
    CHECK(grid.nodes[i] < grid.cell_edges[i + 1]);
    CHECK(grid.cell_width(i) > 0.0);
  }
  CHECK(grid.cell_edges[0] == -grid.r_edge);
  CHECK(grid.cell_edges[m] == grid.r_edge);
}

TEST_CASE("line grid core spacing is uniform") {
  const LineGrid grid = LineGrid::build(1e3, 1.0, 0.125, 30);
  const int center = grid.size() / 2;
  for (int i = -7; i < 7; ++i) {
    const double gap = grid.nodes[center + i + 1] - grid.nodes[center + i];
    CHECK(gap == doctest::Approx(0.125).epsilon(1e-12));
  }
}

TEST_CASE("line grid stretched zone is geometric") {
  const LineGrid grid = LineGrid::build(1e6, 1.0, 0.25, 100);
  const int m = grid.size();
  const double ratio_expected = std::pow(1e6, 1.0 / 100.0);
  for (int i = m - 50; i < m - 1; ++i) {
    const double ratio = grid.nodes[i + 1] / grid.nodes[i];
    CHECK(ratio == doctest::Approx(ratio_expected).epsilon(1e-10));
  }
}

TEST_CASE("line grid input validation") {
  CHECK_THROWS_AS(LineGrid::build(1.0, 2.0, 0.25, 40), InputError);
  CHECK_THROWS_AS(LineGrid::build(1e4, -1.0, 0.25, 40), InputError);
  CHECK_THROWS_AS(LineGrid::build(1e4, 2.0, 0.0, 40), InputError);
  CHECK_THROWS_AS(LineGrid::build(1e4, 2.0, 0.25, 4), InputError);
  CHECK_THROWS_AS(LineGrid::build(1e4, 0.5, 0.25, 40), InputError);
}
