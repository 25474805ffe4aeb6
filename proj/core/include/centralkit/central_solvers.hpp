#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "centralkit/flux_models.hpp"
#include "centralkit/grid.hpp"
#include "centralkit/reconstruct.hpp"

namespace centralkit {

/// Time-step policy: dt = cfl * h / max|lambda| unless dt_fixed is set.
struct CflPolicy {
  double cfl;
  std::optional<double> dt_fixed;
};

inline constexpr double kNtDefaultCfl = 0.45;
inline constexpr double kKtDefaultCfl = 0.9;
/// Courant limits enforced at step time (NT: half-cell cone, KT: one cell).
inline constexpr double kNtCflLimit = 0.5;
inline constexpr double kKtCflLimit = 1.0;
/// Explicit parabolic restriction dt <= kDiffusionDtFactor * h^2 / max q'.
inline constexpr double kDiffusionDtFactor = 0.25;

/// Whether a staggered scheme's current data lives on I_nu or I_{nu+1/2}.
enum class StaggerPhase { OnGrid, Staggered };

/// max_nu max(|lambda_min|, |lambda_max|)(u_nu)
double max_wave_speed(const CellAverages& u, const FluxModel& f);

/// Throws CflError if dt * max speed exceeds limit * h.
void check_cfl(const CellAverages& u, const FluxModel& f, double dt, double limit);

// ---------------------------------------------------------------------------
// Nessyahu-Tadmor staggered scheme

/// Midpoint values v_nu - dt/(2h) f(v_nu)', with f(v)' the limited numerical
/// derivative of the flux gridfunction.
CellAverages nt_predictor(const CellAverages& u, const FluxModel& f, double dt,
                          const LimiterOptions& limiter = {});

/// Staggered averages at the interfaces x_{nu+1/2}:
///   1/2 (v_nu + v_{nu+1}) + 1/8 (s_nu - s_{nu+1}) - dt/h (f(m_{nu+1}) - f(m_nu)).
///
/// Output cell j sits on interface j+1/2 of the input grid. For Periodic grids
/// the output has n cells on the grid shifted by h/2. For ZeroGradient grids
/// the output depends on `phase`: from OnGrid data all n+1 interfaces
/// (including the two ghost interfaces) are produced, from Staggered data only
/// the n-1 interior interfaces, so two steps return to the original cells.
CellAverages nt_corrector(const CellAverages& u, const PiecewiseLinear& slopes,
                          const CellAverages& midpoints, const FluxModel& f, double dt,
                          StaggerPhase phase = StaggerPhase::OnGrid);

/// Staggered Lax-Friedrichs: 1/2 (v_nu + v_{nu+1}) - dt/h (f(v_{nu+1}) - f(v_nu)).
CellAverages staggered_lax_friedrichs(const CellAverages& u, const FluxModel& f, double dt,
                                      StaggerPhase phase = StaggerPhase::OnGrid);

/// Data of a staggered run. `home` is the on-grid mesh the run reports on.
struct NtState {
  CellAverages u;
  StaggerPhase phase;
  Grid1D home;

  explicit NtState(CellAverages on_grid)
      : u(std::move(on_grid)), phase(StaggerPhase::OnGrid), home(u.grid()) {}
};

/// One predictor-corrector step; toggles the phase. A Staggered -> OnGrid step
/// re-indexes periodic data back onto `home`.
void nt_step(NtState& state, const FluxModel& f, double dt, const LimiterOptions& limiter = {});

/// Two NT steps with independent CFL-selected time steps. Returns the
/// on-grid result and the elapsed time through `elapsed`.
CellAverages nt_double_step(const CellAverages& u, const FluxModel& f, const CflPolicy& policy,
                            const LimiterOptions& limiter = {}, double* elapsed = nullptr);

// ---------------------------------------------------------------------------
// Kurganov-Tadmor semi-discrete scheme

struct LocalSpeeds {
  double a_minus;  ///< <= 0
  double a_plus;   ///< >= 0
};

LocalSpeeds local_speeds(std::span<const double> v_minus, std::span<const double> v_plus,
                         const FluxModel& f);

/// Semi-discrete central flux across one interface.
void kt_flux(std::span<const double> v_minus, std::span<const double> v_plus, const FluxModel& f,
             std::span<double> out);
std::vector<double> kt_flux(std::span<const double> v_minus, std::span<const double> v_plus,
                            const FluxModel& f);

/// Numerical fluxes H_{nu+1/2}, interface-major. Periodic: n interfaces
/// (nu = 0..n-1). ZeroGradient: n+1 interfaces (nu = -1..n-1).
std::vector<double> kt_interface_fluxes(const CellAverages& u, const FluxModel& f,
                                        const LimiterOptions& limiter = {});

/// Semi-discrete right-hand side -(H_{nu+1/2} - H_{nu-1/2})/h, plus
/// (Q_{nu+1/2} - Q_{nu-1/2})/h with Q = q((v_{nu+1} - v_nu)/h) when a
/// diffusion model is given (component 0 only for systems).
CellAverages kt_rhs(const CellAverages& u, const FluxModel& f,
                    const DiffusionModel* diffusion = nullptr, const LimiterOptions& limiter = {});

/// SSP-RK step of the KT semi-discretisation.
CellAverages kt_step(const CellAverages& u, const FluxModel& f, double dt, int rk_order,
                     const DiffusionModel* diffusion = nullptr,
                     const LimiterOptions& limiter = {});

// ---------------------------------------------------------------------------
// Drivers

enum class Scheme { NT, KT };

struct SolverOptions {
  Scheme scheme = Scheme::NT;
  CflPolicy policy{kNtDefaultCfl, std::nullopt};
  LimiterOptions limiter{};
  int rk_order = 2;
  std::optional<DiffusionModel> diffusion;
  std::size_t max_steps = 10'000'000;
};

/// Called after every accepted step with the states before and after, the
/// time reached and the step size. For NT both states may be staggered.
using StepObserver =
    std::function<void(const CellAverages& before, const CellAverages& after, double t, double dt)>;

struct RunResult {
  CellAverages u;
  double t;
  std::size_t steps;
};

/// Advances on-grid data from t_start to t_final. NT runs always end on grid.
RunResult solve(const CellAverages& u0, const FluxModel& f, double t_start, double t_final,
                const SolverOptions& options, const StepObserver& observer = {});

/// Time step chosen by the policy for the given data.
double select_dt(const CellAverages& u, const FluxModel& f, const SolverOptions& options);

}  // namespace centralkit
