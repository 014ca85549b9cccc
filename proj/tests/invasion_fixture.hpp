// Shared slow-growth invasion run on the truncated line, computed once
// and reused by the trajectory-analysis and barrier tests.
#pragma once

#include "levyfront/evolve.hpp"
#include "levyfront/grids.hpp"
#include "levyfront/model.hpp"

namespace levyfront::testing {

// Flat medium, unit growth rate, small algebraic seed: c = 0.01, alpha = 1.
const ProblemSpec& invasion_problem();

// Half-width 1e6 with a +-6 core at spacing 0.06 and 810 log nodes per side.
const LineGrid& invasion_grid();

// Horizon 12 at dt = 0.005 with snapshots every 0.025 up to 1.5, then 0.25.
const Trajectory& invasion_trajectory();

}  // namespace levyfront::testing
