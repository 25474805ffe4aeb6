#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace centralkit {

/// One step of the strong-stability-preserving Runge-Kutta method of the
/// requested order (1: forward Euler, 2: Heun/SSP-RK2, 3: Shu-Osher SSP-RK3).
/// Every stage is a convex combination of forward-Euler steps. `rhs` maps a
/// state vector to its time derivative.
template <typename T, typename Rhs>
std::vector<T> ssp_rk_step(const std::vector<T>& u, Rhs&& rhs, double dt, int order) {
  const std::size_t n = u.size();
  auto euler = [&](const std::vector<T>& v) {
    std::vector<T> out = rhs(v);
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i] + dt * out[i];
    return out;
  };
  switch (order) {
    case 1:
      return euler(u);
    case 2: {
      std::vector<T> u1 = euler(u);
      std::vector<T> u2 = euler(u1);
      for (std::size_t i = 0; i < n; ++i) u2[i] = 0.5 * u[i] + 0.5 * u2[i];
      return u2;
    }
    case 3: {
      std::vector<T> u1 = euler(u);
      std::vector<T> u2 = euler(u1);
      for (std::size_t i = 0; i < n; ++i) u2[i] = 0.75 * u[i] + 0.25 * u2[i];
      std::vector<T> u3 = euler(u2);
      for (std::size_t i = 0; i < n; ++i) u3[i] = (1.0 / 3.0) * u[i] + (2.0 / 3.0) * u3[i];
      return u3;
    }
    default:
      throw std::invalid_argument("ssp_rk_step: order must be 1, 2 or 3");
  }
}

}  // namespace centralkit
