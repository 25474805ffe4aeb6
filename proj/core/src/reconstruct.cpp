#include "centralkit/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace centralkit {

namespace {

double sgn(double z) { return static_cast<double>((z > 0.0) - (z < 0.0)); }

void check_size(const Grid1D& grid) {
  const std::size_t needed = grid.boundary() == Boundary::Periodic ? 3 : 2;
  if (grid.n_cells() < needed) {
    throw std::invalid_argument("reconstruction needs at least " + std::to_string(needed) +
                                " cells, got " + std::to_string(grid.n_cells()));
  }
}

}  // namespace

double minmod(double a, double b) {
  return 0.5 * (sgn(a) + sgn(b)) * std::min(std::abs(a), std::abs(b));
}

double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

double limited_slope(double backward, double forward, const LimiterOptions& opt) {
  if (opt.first_order) return 0.0;
  if (opt.theta == 1.0) return minmod(forward, backward);
  return minmod(opt.theta * backward, 0.5 * (backward + forward), opt.theta * forward);
}

std::vector<double> limited_differences(const Grid1D& grid, std::size_t components,
                                        std::span<const double> values,
                                        const LimiterOptions& opt) {
  check_size(grid);
  if (opt.theta < 1.0 || opt.theta > 2.0) {
    throw std::invalid_argument("limiter theta must lie in [1, 2]");
  }
  const std::size_t n = grid.n_cells();
  std::vector<double> out(n * components, 0.0);
  for (std::size_t nu = 0; nu < n; ++nu) {
    const std::size_t left = grid.neighbor(nu, -1);
    const std::size_t right = grid.neighbor(nu, +1);
    for (std::size_t c = 0; c < components; ++c) {
      const double v = values[nu * components + c];
      const double forward = values[right * components + c] - v;
      const double backward = v - values[left * components + c];
      out[nu * components + c] = limited_slope(backward, forward, opt);
    }
  }
  return out;
}

double PiecewiseLinear::evaluate(std::size_t nu, std::size_t c, double x) const {
  return value(nu, c) + slope(nu, c) * (x - grid.center(nu)) / grid.h();
}

double PiecewiseLinear::cell_mean(std::size_t nu, std::size_t c) const {
  // The linear term integrates to zero over the symmetric cell.
  return value(nu, c);
}

PiecewiseLinear reconstruct_linear(const CellAverages& u, const LimiterOptions& opt) {
  PiecewiseLinear r{u.grid(), u.components(), u.data(),
                    limited_differences(u.grid(), u.components(), u.data(), opt)};
  return r;
}

InterfaceStates interface_states(const PiecewiseLinear& r, long nu) {
  const long n = static_cast<long>(r.grid.n_cells());
  if (nu < -1 || nu >= n) {
    throw std::out_of_range("interface index " + std::to_string(nu) + " outside [-1, " +
                            std::to_string(n - 1) + "]");
  }
  const std::size_t m = r.components;
  InterfaceStates s{std::vector<double>(m), std::vector<double>(m)};
  const bool periodic = r.grid.boundary() == Boundary::Periodic;
  for (std::size_t c = 0; c < m; ++c) {
    if (nu == -1 && !periodic) {
      s.minus[c] = r.value(0, c);  // ghost: copy of cell 0 with zero slope
    } else {
      const std::size_t left = r.grid.neighbor(0, nu);
      s.minus[c] = r.value(left, c) + 0.5 * r.slope(left, c);
    }
    if (nu == n - 1 && !periodic) {
      s.plus[c] = r.value(static_cast<std::size_t>(n - 1), c);
    } else {
      const std::size_t right = r.grid.neighbor(0, nu + 1);
      s.plus[c] = r.value(right, c) - 0.5 * r.slope(right, c);
    }
  }
  return s;
}

double total_variation(const CellAverages& u) {
  const std::size_t n = u.size();
  const std::size_t last = u.grid().boundary() == Boundary::Periodic ? n : n - 1;
  double tv = 0.0;
  for (std::size_t nu = 0; nu < last; ++nu) {
    const std::size_t next = (nu + 1) % n;
    for (std::size_t c = 0; c < u.components(); ++c) tv += std::abs(u(next, c) - u(nu, c));
  }
  return tv;
}

double total_variation(const PiecewiseLinear& r) {
  const std::size_t n = r.grid.n_cells();
  const bool periodic = r.grid.boundary() == Boundary::Periodic;
  double tv = 0.0;
  for (std::size_t c = 0; c < r.components; ++c) {
    for (std::size_t nu = 0; nu < n; ++nu) {
      tv += std::abs(r.slope(nu, c));
      if (nu + 1 < n || periodic) {
        const std::size_t next = (nu + 1) % n;
        const double left = r.value(nu, c) + 0.5 * r.slope(nu, c);
        const double right = r.value(next, c) - 0.5 * r.slope(next, c);
        tv += std::abs(right - left);
      }
    }
    if (!periodic) {
      // jumps to the ghost cells, which carry the boundary value
      tv += std::abs(0.5 * r.slope(0, c)) + std::abs(0.5 * r.slope(n - 1, c));
    }
  }
  return tv;
}

}  // namespace centralkit
