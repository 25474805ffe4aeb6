#include "centralkit/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace centralkit {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_cells, Boundary boundary)
    : x_min_(x_min), x_max_(x_max), n_cells_(n_cells), boundary_(boundary) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw std::invalid_argument("Grid1D: require finite x_min < x_max");
  }
  if (n_cells == 0) throw std::invalid_argument("Grid1D: n_cells must be positive");
  h_ = (x_max - x_min) / static_cast<double>(n_cells);
}

double Grid1D::center(std::size_t nu) const {
  return x_min_ + (static_cast<double>(nu) + 0.5) * h_;
}

double Grid1D::right_face(std::size_t nu) const {
  return x_min_ + static_cast<double>(nu + 1) * h_;
}

std::size_t Grid1D::neighbor(std::size_t nu, long offset) const {
  const long n = static_cast<long>(n_cells_);
  long j = static_cast<long>(nu) + offset;
  if (boundary_ == Boundary::Periodic) {
    j %= n;
    if (j < 0) j += n;
    return static_cast<std::size_t>(j);
  }
  if (j < 0) return 0;
  if (j >= n) return n_cells_ - 1;
  return static_cast<std::size_t>(j);
}

CellAverages::CellAverages(Grid1D grid, std::size_t components)
    : grid_(grid), m_(components), data_(grid.n_cells() * components, 0.0) {
  if (components == 0) throw std::invalid_argument("CellAverages: need at least one component");
}

CellAverages::CellAverages(Grid1D grid, std::size_t components, std::vector<double> data)
    : grid_(grid), m_(components), data_(std::move(data)) {
  if (components == 0) throw std::invalid_argument("CellAverages: need at least one component");
  if (data_.size() != grid_.n_cells() * m_) {
    throw std::invalid_argument("CellAverages: data size " + std::to_string(data_.size()) +
                                " does not match n_cells * components = " +
                                std::to_string(grid_.n_cells() * m_));
  }
}

bool CellAverages::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double CellAverages::mass(std::size_t component) const {
  double acc = 0.0;
  for (std::size_t nu = 0; nu < size(); ++nu) acc += (*this)(nu, component);
  return acc * grid_.h();
}

}  // namespace centralkit
