#pragma once

#include "centralkit/grid.hpp"

namespace centralkit {

/// -sgn(x) cos(x + x sgn(x) / 2) on [-pi, pi]; a single jump of -2 at 0.
double edge_test_function(double x);

/// 1 on |x| < pi/2, 0 elsewhere in [-pi, pi); edges at +-pi/2.
double step_function(double x);

/// Sod shock tube in conserved variables on `grid`, split at the midpoint:
/// (rho, u, p) = (1, 0, 1) on the left and (0.125, 0, 0.1) on the right.
CellAverages sod_initial(const Grid1D& grid, double gamma = 1.4);

}  // namespace centralkit
