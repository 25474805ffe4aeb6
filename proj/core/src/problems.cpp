#include "centralkit/problems.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>

#include "centralkit/flux_models.hpp"

namespace centralkit {

double edge_test_function(double x) {
  if (x == 0.0) return 0.0;
  const double s = x > 0.0 ? 1.0 : -1.0;
  return -s * std::cos(x + 0.5 * x * s);
}

double step_function(double x) { return std::abs(x) < 0.5 * std::numbers::pi ? 1.0 : 0.0; }

CellAverages sod_initial(const Grid1D& grid, double gamma) {
  CellAverages u(grid, 3);
  const double mid = 0.5 * (grid.x_min() + grid.x_max());
  const auto left = euler_conserved(1.0, 0.0, 1.0, gamma);
  const auto right = euler_conserved(0.125, 0.0, 0.1, gamma);
  for (std::size_t nu = 0; nu < grid.n_cells(); ++nu) {
    const double xl = grid.center(nu) - 0.5 * grid.h();
    const double xr = xl + grid.h();
    // fraction of the cell left of the diaphragm
    const double w = std::clamp((mid - xl) / (xr - xl), 0.0, 1.0);
    for (std::size_t c = 0; c < 3; ++c) u(nu, c) = w * left[c] + (1.0 - w) * right[c];
  }
  return u;
}

}  // namespace centralkit
