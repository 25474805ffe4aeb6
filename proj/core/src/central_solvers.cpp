#include "centralkit/central_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "centralkit/errors.hpp"
#include "centralkit/ssp_rk.hpp"

namespace centralkit {

namespace {

constexpr double kCflSlack = 1e-12;

/// Flux gridfunction f(u_nu), laid out like the data.
std::vector<double> flux_gridfunction(const CellAverages& u, const FluxModel& f) {
  const std::size_t m = u.components();
  std::vector<double> out(u.data().size());
  for (std::size_t nu = 0; nu < u.size(); ++nu) {
    f.flux(u.cell(nu), std::span<double>(out.data() + nu * m, m));
  }
  return out;
}

/// Output grid of a staggered step; see nt_corrector.
Grid1D staggered_grid(const Grid1D& g, StaggerPhase phase) {
  const double half = 0.5 * g.h();
  if (g.boundary() == Boundary::Periodic) {
    return Grid1D(g.x_min() + half, g.x_max() + half, g.n_cells(), Boundary::Periodic);
  }
  if (phase == StaggerPhase::OnGrid) {
    return Grid1D(g.x_min() - half, g.x_max() + half, g.n_cells() + 1, Boundary::ZeroGradient);
  }
  if (g.n_cells() < 3) throw std::invalid_argument("staggered step: grid too small");
  return Grid1D(g.x_min() + half, g.x_max() - half, g.n_cells() - 1, Boundary::ZeroGradient);
}

/// Cell indices (left, right) adjacent to output interface j.
struct InterfaceMap {
  long first;  // first interface index nu (interface nu + 1/2)
  std::size_t count;
};

InterfaceMap staggered_interfaces(const Grid1D& g, StaggerPhase phase) {
  const std::size_t n = g.n_cells();
  if (g.boundary() == Boundary::Periodic) return {0, n};
  if (phase == StaggerPhase::OnGrid) return {-1, n + 1};
  return {0, n - 1};
}

void require_same_layout(const CellAverages& a, const CellAverages& b, const char* what) {
  if (a.size() != b.size() || a.components() != b.components()) {
    throw std::invalid_argument(std::string("nt_corrector: ") + what + " layout mismatch");
  }
}

void require_finite(const CellAverages& u, double t) {
  if (!u.all_finite()) {
    std::ostringstream msg;
    msg << "non-finite cell average produced at t = " << t;
    throw SolverError(msg.str());
  }
}

}  // namespace

double max_wave_speed(const CellAverages& u, const FluxModel& f) {
  double s = 0.0;
  for (std::size_t nu = 0; nu < u.size(); ++nu) s = std::max(s, f.max_speed(u.cell(nu)));
  return s;
}

void check_cfl(const CellAverages& u, const FluxModel& f, double dt, double limit) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw CflError("time step must be positive and finite");
  }
  const double speed = max_wave_speed(u, f);
  if (dt * speed > limit * u.grid().h() * (1.0 + kCflSlack)) {
    std::ostringstream msg;
    msg << "CFL violation: dt * max|lambda| / h = " << dt * speed / u.grid().h()
        << " exceeds " << limit;
    throw CflError(msg.str());
  }
}

CellAverages nt_predictor(const CellAverages& u, const FluxModel& f, double dt,
                          const LimiterOptions& limiter) {
  check_cfl(u, f, dt, kNtCflLimit);
  const std::vector<double> fluxes = flux_gridfunction(u, f);
  const std::vector<double> dflux =
      limited_differences(u.grid(), u.components(), fluxes, limiter);
  const double half_lambda = 0.5 * dt / u.grid().h();
  CellAverages mid(u.grid(), u.components(), u.data());
  auto& d = mid.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= half_lambda * dflux[i];
  return mid;
}

CellAverages nt_corrector(const CellAverages& u, const PiecewiseLinear& slopes,
                          const CellAverages& midpoints, const FluxModel& f, double dt,
                          StaggerPhase phase) {
  require_same_layout(u, midpoints, "midpoint");
  if (slopes.slopes.size() != u.data().size()) {
    throw std::invalid_argument("nt_corrector: slope layout mismatch");
  }
  check_cfl(u, f, dt, kNtCflLimit);
  const Grid1D& g = u.grid();
  const std::size_t m = u.components();
  const double lambda = dt / g.h();
  const std::vector<double> mid_flux = flux_gridfunction(midpoints, f);

  const InterfaceMap map = staggered_interfaces(g, phase);
  CellAverages out(staggered_grid(g, phase), m);
  for (std::size_t j = 0; j < map.count; ++j) {
    const long nu = map.first + static_cast<long>(j);
    const std::size_t left = nu < 0 ? 0 : g.neighbor(static_cast<std::size_t>(nu), 0);
    const std::size_t right = nu < 0 ? 0 : g.neighbor(static_cast<std::size_t>(nu), 1);
    for (std::size_t c = 0; c < m; ++c) {
      const double avg = 0.5 * (u(left, c) + u(right, c));
      const double slope_term = 0.125 * (slopes.slope(left, c) - slopes.slope(right, c));
      const double flux_diff = mid_flux[right * m + c] - mid_flux[left * m + c];
      out(j, c) = avg + slope_term - lambda * flux_diff;
    }
  }
  return out;
}

CellAverages staggered_lax_friedrichs(const CellAverages& u, const FluxModel& f, double dt,
                                      StaggerPhase phase) {
  check_cfl(u, f, dt, kNtCflLimit);
  const Grid1D& g = u.grid();
  const std::size_t m = u.components();
  const double lambda = dt / g.h();
  const std::vector<double> fluxes = flux_gridfunction(u, f);
  const InterfaceMap map = staggered_interfaces(g, phase);
  CellAverages out(staggered_grid(g, phase), m);
  for (std::size_t j = 0; j < map.count; ++j) {
    const long nu = map.first + static_cast<long>(j);
    const std::size_t left = nu < 0 ? 0 : g.neighbor(static_cast<std::size_t>(nu), 0);
    const std::size_t right = nu < 0 ? 0 : g.neighbor(static_cast<std::size_t>(nu), 1);
    for (std::size_t c = 0; c < m; ++c) {
      out(j, c) = 0.5 * (u(left, c) + u(right, c)) -
                  lambda * (fluxes[right * m + c] - fluxes[left * m + c]);
    }
  }
  return out;
}

void nt_step(NtState& state, const FluxModel& f, double dt, const LimiterOptions& limiter) {
  const PiecewiseLinear slopes = reconstruct_linear(state.u, limiter);
  const CellAverages mid = nt_predictor(state.u, f, dt, limiter);
  CellAverages next = nt_corrector(state.u, slopes, mid, f, dt, state.phase);

  if (state.phase == StaggerPhase::OnGrid) {
    state.u = std::move(next);
    state.phase = StaggerPhase::Staggered;
    return;
  }
  // Back on grid. Periodic output cell j is centered on home cell j+1.
  const std::size_t m = next.components();
  std::vector<double> data(next.data().size());
  if (state.home.boundary() == Boundary::Periodic) {
    const std::size_t n = next.size();
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t target = (j + 1) % n;
      std::copy_n(next.data().begin() + j * m, m, data.begin() + target * m);
    }
  } else {
    data = std::move(next.data());
  }
  state.u = CellAverages(state.home, m, std::move(data));
  state.phase = StaggerPhase::OnGrid;
}

CellAverages nt_double_step(const CellAverages& u, const FluxModel& f, const CflPolicy& policy,
                            const LimiterOptions& limiter, double* elapsed) {
  SolverOptions opt;
  opt.scheme = Scheme::NT;
  opt.policy = policy;
  opt.limiter = limiter;
  NtState state(u);
  double t = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double dt = select_dt(state.u, f, opt);
    if (!std::isfinite(dt)) throw CflError("nt_double_step: no finite time step for zero speeds");
    nt_step(state, f, dt, limiter);
    t += dt;
  }
  if (elapsed != nullptr) *elapsed = t;
  return std::move(state.u);
}

LocalSpeeds local_speeds(std::span<const double> v_minus, std::span<const double> v_plus,
                         const FluxModel& f) {
  const WaveSpeeds left = f.speeds(v_minus);
  const WaveSpeeds right = f.speeds(v_plus);
  return {std::min({left.min, right.min, 0.0}), std::max({left.max, right.max, 0.0})};
}

namespace {

void kt_flux_impl(std::span<const double> v_minus, std::span<const double> v_plus,
                  const FluxModel& f, std::span<double> out, std::span<double> scratch) {
  const std::size_t m = f.components();
  const LocalSpeeds a = local_speeds(v_minus, v_plus, f);
  std::span<double> f_minus = scratch.subspan(0, m);
  std::span<double> f_plus = scratch.subspan(m, m);
  f.flux(v_minus, f_minus);
  f.flux(v_plus, f_plus);
  const double width = a.a_plus - a.a_minus;
  if (width == 0.0) {
    for (std::size_t c = 0; c < m; ++c) out[c] = 0.5 * (f_minus[c] + f_plus[c]);
    return;
  }
  for (std::size_t c = 0; c < m; ++c) {
    out[c] = (a.a_plus * f_minus[c] - a.a_minus * f_plus[c]) / width +
             a.a_plus * a.a_minus * (v_plus[c] - v_minus[c]) / width;
  }
}

}  // namespace

void kt_flux(std::span<const double> v_minus, std::span<const double> v_plus, const FluxModel& f,
             std::span<double> out) {
  std::vector<double> scratch(2 * f.components());
  kt_flux_impl(v_minus, v_plus, f, out, scratch);
}

std::vector<double> kt_flux(std::span<const double> v_minus, std::span<const double> v_plus,
                            const FluxModel& f) {
  std::vector<double> out(f.components());
  kt_flux(v_minus, v_plus, f, out);
  return out;
}

std::vector<double> kt_interface_fluxes(const CellAverages& u, const FluxModel& f,
                                        const LimiterOptions& limiter) {
  const PiecewiseLinear r = reconstruct_linear(u, limiter);
  const Grid1D& g = u.grid();
  const std::size_t n = g.n_cells();
  const std::size_t m = u.components();
  const bool periodic = g.boundary() == Boundary::Periodic;
  const long first = periodic ? 0 : -1;
  const std::size_t count = periodic ? n : n + 1;

  std::vector<double> out(count * m);
  std::vector<double> v_minus(m), v_plus(m), scratch(2 * m);
  for (std::size_t j = 0; j < count; ++j) {
    const long nu = first + static_cast<long>(j);
    for (std::size_t c = 0; c < m; ++c) {
      if (nu < 0) {
        v_minus[c] = r.value(0, c);
      } else {
        const std::size_t left = static_cast<std::size_t>(nu);
        v_minus[c] = r.value(left, c) + 0.5 * r.slope(left, c);
      }
      if (!periodic && nu == static_cast<long>(n) - 1) {
        v_plus[c] = r.value(n - 1, c);
      } else {
        const std::size_t right = g.neighbor(0, nu + 1);
        v_plus[c] = r.value(right, c) - 0.5 * r.slope(right, c);
      }
    }
    kt_flux_impl(v_minus, v_plus, f, std::span<double>(out.data() + j * m, m), scratch);
  }
  return out;
}

CellAverages kt_rhs(const CellAverages& u, const FluxModel& f, const DiffusionModel* diffusion,
                    const LimiterOptions& limiter) {
  const std::vector<double> H = kt_interface_fluxes(u, f, limiter);
  const Grid1D& g = u.grid();
  const std::size_t n = g.n_cells();
  const std::size_t m = u.components();
  const bool periodic = g.boundary() == Boundary::Periodic;
  const double inv_h = 1.0 / g.h();

  CellAverages rhs(g, m);
  for (std::size_t nu = 0; nu < n; ++nu) {
    // H index of interfaces nu+1/2 and nu-1/2
    const std::size_t right = periodic ? nu : nu + 1;
    const std::size_t left = periodic ? (nu + n - 1) % n : nu;
    for (std::size_t c = 0; c < m; ++c) {
      rhs(nu, c) = -(H[right * m + c] - H[left * m + c]) * inv_h;
    }
  }
  if (diffusion != nullptr) {
    std::vector<double> Q(n * m);  // Q at interface nu+1/2
    for (std::size_t nu = 0; nu < n; ++nu) {
      const std::size_t next = g.neighbor(nu, 1);
      for (std::size_t c = 0; c < m; ++c) {
        Q[nu * m + c] = diffusion->q((u(next, c) - u(nu, c)) * inv_h);
      }
    }
    for (std::size_t nu = 0; nu < n; ++nu) {
      for (std::size_t c = 0; c < m; ++c) {
        const double q_right = Q[nu * m + c];
        double q_left;
        if (nu > 0) {
          q_left = Q[(nu - 1) * m + c];
        } else {
          q_left = periodic ? Q[(n - 1) * m + c] : 0.0;
        }
        rhs(nu, c) += (q_right - q_left) * inv_h;
      }
    }
  }
  return rhs;
}

CellAverages kt_step(const CellAverages& u, const FluxModel& f, double dt, int rk_order,
                     const DiffusionModel* diffusion, const LimiterOptions& limiter) {
  const Grid1D& g = u.grid();
  const std::size_t m = u.components();
  auto rhs = [&](const std::vector<double>& v) {
    return kt_rhs(CellAverages(g, m, v), f, diffusion, limiter).data();
  };
  return CellAverages(g, m, ssp_rk_step(u.data(), rhs, dt, rk_order));
}

double select_dt(const CellAverages& u, const FluxModel& f, const SolverOptions& options) {
  if (options.policy.dt_fixed) return *options.policy.dt_fixed;
  const double h = u.grid().h();
  const double speed = max_wave_speed(u, f);
  double dt = speed > 0.0 ? options.policy.cfl * h / speed
                          : std::numeric_limits<double>::infinity();
  if (options.diffusion) {
    dt = std::min(dt, kDiffusionDtFactor * h * h / options.diffusion->max_slope);
  }
  return dt;
}

RunResult solve(const CellAverages& u0, const FluxModel& f, double t_start, double t_final,
                const SolverOptions& options, const StepObserver& observer) {
  if (u0.components() != f.components()) {
    throw std::invalid_argument("solve: data has " + std::to_string(u0.components()) +
                                " components, model expects " +
                                std::to_string(f.components()));
  }
  if (!(t_final >= t_start)) throw std::invalid_argument("solve: t_final < t_start");
  const double tol = 1e-14 * std::max(1.0, std::abs(t_final));
  double t = t_start;
  std::size_t steps = 0;

  auto next_dt = [&](const CellAverages& u, double cap) {
    const double dt = select_dt(u, f, options);
    if (dt >= cap) return cap;
    if (!(dt > 0.0)) throw CflError("solve: nonpositive time step selected");
    return dt;
  };
  auto bump = [&](double dt, double remaining) {
    t = (dt == remaining) ? t_final : t + dt;
    if (++steps > options.max_steps) throw SolverError("solve: exceeded max_steps");
  };

  if (options.scheme == Scheme::NT) {
    if (options.diffusion) throw std::invalid_argument("NT scheme does not support diffusion");
    NtState state(u0);
    while (state.phase == StaggerPhase::Staggered || t_final - t > tol) {
      const double remaining = t_final - t;
      const bool on_grid = state.phase == StaggerPhase::OnGrid;
      const double dt = next_dt(state.u, on_grid ? 0.5 * remaining : remaining);
      const CellAverages before = observer ? state.u : CellAverages(state.u.grid(), 1);
      nt_step(state, f, dt, options.limiter);
      bump(dt, remaining);
      require_finite(state.u, t);
      if (observer) observer(before, state.u, t, dt);
    }
    return {std::move(state.u), t_final, steps};
  }

  const DiffusionModel* diffusion = options.diffusion ? &*options.diffusion : nullptr;
  CellAverages u = u0;
  const double limit = kKtCflLimit;
  while (t_final - t > tol) {
    const double remaining = t_final - t;
    const double dt = next_dt(u, remaining);
    check_cfl(u, f, dt, limit);
    CellAverages next = kt_step(u, f, dt, options.rk_order, diffusion, options.limiter);
    bump(dt, remaining);
    require_finite(next, t);
    if (observer) observer(u, next, t, dt);
    u = std::move(next);
  }
  return {std::move(u), t_final, steps};
}

}  // namespace centralkit
