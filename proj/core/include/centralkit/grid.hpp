#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace centralkit {

enum class Boundary { Periodic, ZeroGradient };

/// Uniform 1D grid of `n_cells` cells covering [x_min, x_max].
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t n_cells,
         Boundary boundary = Boundary::Periodic);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t n_cells() const { return n_cells_; }
  Boundary boundary() const { return boundary_; }
  double h() const { return h_; }
  double length() const { return x_max_ - x_min_; }

  /// Center x_nu = x_min + (nu + 1/2) h.
  double center(std::size_t nu) const;
  /// Right interface x_{nu+1/2}.
  double right_face(std::size_t nu) const;

  /// Resolves cell nu + offset under the boundary rule. ZeroGradient clamps
  /// to the boundary cell, which is how ghost cells are realised.
  std::size_t neighbor(std::size_t nu, long offset) const;

  bool operator==(const Grid1D&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_cells_;
  Boundary boundary_;
  double h_;
};

/// Per-cell state vectors of m components, stored cell-major.
class CellAverages {
 public:
  CellAverages(Grid1D grid, std::size_t components);
  CellAverages(Grid1D grid, std::size_t components, std::vector<double> data);

  /// Fills each cell with the exact cell average of a scalar profile using
  /// Gauss-Legendre quadrature.
  template <typename F>
  static CellAverages from_average(const Grid1D& grid, F&& profile);
  /// Samples a scalar profile at cell centers.
  template <typename F>
  static CellAverages from_centers(const Grid1D& grid, F&& profile);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return grid_.n_cells(); }
  std::size_t components() const { return m_; }

  std::span<double> cell(std::size_t nu) { return {data_.data() + nu * m_, m_}; }
  std::span<const double> cell(std::size_t nu) const {
    return {data_.data() + nu * m_, m_};
  }
  double& operator()(std::size_t nu, std::size_t c) { return data_[nu * m_ + c]; }
  double operator()(std::size_t nu, std::size_t c) const { return data_[nu * m_ + c]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool all_finite() const;
  /// Sum over cells of value * h, for one component.
  double mass(std::size_t component = 0) const;

 private:
  Grid1D grid_;
  std::size_t m_;
  std::vector<double> data_;
};

namespace detail {
// 5-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr double kGaussNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                          0.5384693101056831, 0.9061798459386640};
inline constexpr double kGaussWeights[5] = {0.2369268850561891, 0.4786286704993665,
                                            0.5688888888888889, 0.4786286704993665,
                                            0.2369268850561891};
}  // namespace detail

template <typename F>
CellAverages CellAverages::from_average(const Grid1D& grid, F&& profile) {
  CellAverages out(grid, 1);
  const double half = 0.5 * grid.h();
  for (std::size_t nu = 0; nu < grid.n_cells(); ++nu) {
    const double xc = grid.center(nu);
    double acc = 0.0;
    for (int q = 0; q < 5; ++q) acc += detail::kGaussWeights[q] * profile(xc + half * detail::kGaussNodes[q]);
    out(nu, 0) = 0.5 * acc;
  }
  return out;
}

template <typename F>
CellAverages CellAverages::from_centers(const Grid1D& grid, F&& profile) {
  CellAverages out(grid, 1);
  for (std::size_t nu = 0; nu < grid.n_cells(); ++nu) out(nu, 0) = profile(grid.center(nu));
  return out;
}

}  // namespace centralkit
