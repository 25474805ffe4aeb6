#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "centralkit/grid.hpp"

namespace centralkit {

/// Minmod of two numbers: the smaller modulus if the signs agree, else 0.
double minmod(double a, double b);
double minmod(double a, double b, double c);

/// Slope limiter options. theta = 1 is the classic two-argument minmod;
/// theta in (1, 2] selects the generalized minmod-theta limiter
/// mm(theta*D-, (D- + D+)/2, theta*D+). `first_order` forces all slopes to zero.
struct LimiterOptions {
  double theta = 1.0;
  bool first_order = false;
};

double limited_slope(double backward, double forward, const LimiterOptions& opt);

/// Piecewise-linear reconstruction p_nu(x) = v_nu + s_nu (x - x_nu)/h.
/// Slopes are stored scaled by h (s_nu ~ h * dv/dx).
struct PiecewiseLinear {
  Grid1D grid;
  std::size_t components;
  std::vector<double> values;
  std::vector<double> slopes;

  double value(std::size_t nu, std::size_t c) const { return values[nu * components + c]; }
  double slope(std::size_t nu, std::size_t c) const { return slopes[nu * components + c]; }
  /// Evaluates p_nu at x, with x expected in I_nu.
  double evaluate(std::size_t nu, std::size_t c, double x) const;
  /// Mean of p_nu over its cell; equals value(nu, c).
  double cell_mean(std::size_t nu, std::size_t c) const;
};

/// Componentwise limited reconstruction of cell averages.
PiecewiseLinear reconstruct_linear(const CellAverages& u, const LimiterOptions& opt = {});

/// Limited numerical derivative (scaled by h) of an arbitrary gridfunction
/// laid out like CellAverages data. Used for slopes and for flux derivatives.
std::vector<double> limited_differences(const Grid1D& grid, std::size_t components,
                                        std::span<const double> values,
                                        const LimiterOptions& opt = {});

/// Interface states at x_{nu+1/2}. nu ranges over [-1, n-1]; for Periodic,
/// -1 is the same interface as n-1. Under ZeroGradient the ghost cells carry
/// the boundary value and a zero slope.
struct InterfaceStates {
  std::vector<double> minus;
  std::vector<double> plus;
};
InterfaceStates interface_states(const PiecewiseLinear& r, long nu);

/// Discrete total variation sum_nu |v_{nu+1} - v_nu| summed over components.
/// The periodic wrap-around difference is included for Periodic grids.
double total_variation(const CellAverages& u);

/// Total variation of the broken-line graph of a reconstruction: jumps at
/// interfaces plus variation inside each cell.
double total_variation(const PiecewiseLinear& r);

}  // namespace centralkit
