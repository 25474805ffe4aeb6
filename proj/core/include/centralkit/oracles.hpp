#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "centralkit/grid.hpp"

namespace centralkit {

/// Raised when a smooth-solution oracle is asked for a time past breakdown.
class BreakdownError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Smooth initial data u0 with its derivative and range.
struct SmoothProfile {
  std::function<double(double)> u0;
  std::function<double(double)> du0;
  double u_min;
  double u_max;
  double min_slope;  ///< min u0'
};

/// u0 = a + b sin x
SmoothProfile sine_profile(double a, double b);

/// -1 / min u0' when min u0' < 0, otherwise +inf.
double breakdown_time(const SmoothProfile& profile);

/// Solves u = u0(x - u t) for Burgers with safeguarded Newton iteration.
/// Throws BreakdownError when t >= breakdown_time(profile).
double burgers_characteristics(const SmoothProfile& profile, double x, double t);

/// Entropy solution of the Burgers Riemann problem centred at x = 0.
double burgers_riemann(double u_left, double u_right, double x, double t);

/// Reference solution of a scalar problem.
class ExactSolution {
 public:
  virtual ~ExactSolution() = default;
  virtual double evaluate(double x, double t) const = 0;
  /// Shock positions at time t, inside the reference period when periodic.
  virtual std::vector<double> shock_locations(double t) const = 0;
  /// Breakdown time of the smooth branch, if any.
  virtual std::optional<double> valid_until() const { return std::nullopt; }
  /// Spatial period for periodic problems.
  virtual std::optional<double> period() const { return std::nullopt; }

  /// Distance from x to the nearest shock (periodic when applicable).
  double shock_distance(double x, double t) const;
  /// Exact average over [a, b], integrating piecewise between shocks.
  double average(double a, double b, double t) const;
  CellAverages cell_averages(const Grid1D& grid, double t) const;
};

/// Entropy solution of Burgers with u0 = a + b sin x on a 2 pi period, for all
/// t >= 0. Before breakdown it is the characteristic solution; afterwards a
/// single stationary-in-the-moving-frame shock sits at x = pi + a t (b > 0).
class BurgersSineSolution final : public ExactSolution {
 public:
  BurgersSineSolution(double a, double b);
  double evaluate(double x, double t) const override;
  std::vector<double> shock_locations(double t) const override;
  std::optional<double> valid_until() const override;
  std::optional<double> period() const override;
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_;
  double b_;
};

/// Burgers Riemann problem with the jump initially at x0.
class BurgersRiemannSolution final : public ExactSolution {
 public:
  BurgersRiemannSolution(double u_left, double u_right, double x0 = 0.0);
  double evaluate(double x, double t) const override;
  std::vector<double> shock_locations(double t) const override;

 private:
  double ul_;
  double ur_;
  double x0_;
};

struct ErrorNorms {
  double l1 = 0.0;
  double l1_loc = 0.0;       ///< L1 over points at least `exclusion` from every shock
  double linf_smooth = 0.0;  ///< max error over the same points
  double pointwise_ratio = 0.0;  ///< max |error| d / h over the same points
};

/// L1 distance between the limited piecewise-linear reconstruction of the
/// cell averages and the exact solution at time t, by Gauss quadrature in
/// each cell. A cell counts as smooth when its centre is at least `exclusion`
/// from every shock; the max norms are taken over quadrature points.
ErrorNorms error_norms(const CellAverages& numeric, const ExactSolution& exact, double t,
                       double exclusion);

/// Compares point values at equispaced points x (spacing h) with exact values.
ErrorNorms error_norms(std::span<const double> x, std::span<const double> values,
                       const ExactSolution& exact, double t, double h, double exclusion);

struct ConvergenceRow {
  std::size_t n;
  ErrorNorms errors;
  double order;  ///< log2(e_l1(previous) / e_l1(this)); NaN on the first row
};

class ConvergenceTable {
 public:
  void add(std::size_t n, const ErrorNorms& errors);
  const std::vector<ConvergenceRow>& rows() const { return rows_; }
  /// Observed L1 order between the last two rows.
  double final_order() const;
  /// Header "n,e_l1,e_l1loc,e_linf_smooth,order", 17 significant digits.
  void write_csv(std::ostream& os) const;

 private:
  std::vector<ConvergenceRow> rows_;
};

/// Runs `run(n)` for each resolution and tabulates the results in input order.
/// Resolutions must number at least three, each double the previous. Up to
/// `threads` runs are evaluated concurrently.
ConvergenceTable convergence_study(const std::function<ErrorNorms(std::size_t)>& run,
                                   std::span<const std::size_t> resolutions,
                                   std::size_t threads = 1);

}  // namespace centralkit
