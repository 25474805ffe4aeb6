#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace centralkit {

struct WaveSpeeds {
  double min;
  double max;
};

/// A 1D conservation law u_t + f(u)_x = 0 with analytic extreme wave speeds.
class FluxModel {
 public:
  virtual ~FluxModel() = default;

  virtual std::size_t components() const = 0;
  virtual std::string_view name() const = 0;

  /// Writes f(u) into `out`. Throws AdmissibilityError for states outside
  /// the model's admissible set.
  virtual void flux(std::span<const double> u, std::span<double> out) const = 0;
  /// Smallest and largest eigenvalue of the flux Jacobian at u.
  virtual WaveSpeeds speeds(std::span<const double> u) const = 0;

  std::vector<double> flux(std::span<const double> u) const;
  double lambda_min(std::span<const double> u) const { return speeds(u).min; }
  double lambda_max(std::span<const double> u) const { return speeds(u).max; }
  /// max(|lambda_min|, |lambda_max|)
  double max_speed(std::span<const double> u) const;
};

using FluxModelPtr = std::shared_ptr<const FluxModel>;

/// f(u) = u^2 / 2
FluxModelPtr burgers();
/// f(u) = a u
FluxModelPtr linear_advection(double a);
/// Gas dynamics in conserved variables (rho, rho u, E), ideal gas law.
FluxModelPtr euler_1d(double gamma = 1.4);

/// Conserved state from primitive (rho, u, p).
std::array<double, 3> euler_conserved(double rho, double u, double p, double gamma);
/// Pressure of a conserved Euler state.
double euler_pressure(std::span<const double> u, double gamma);

/// Diffusive flux q(u_x) for u_t + f(u)_x = q(u_x)_x.
struct DiffusionModel {
  std::string name;
  std::function<double(double)> q;
  /// Upper bound on q'(s), used in the parabolic time-step restriction.
  double max_slope = 1.0;
};

/// q(s) = s / sqrt(1 + s^2)
DiffusionModel saturating_diffusion();

/// A flux plus an optional diffusion term, resolved from a model name.
struct ModelSpec {
  FluxModelPtr flux;
  std::optional<DiffusionModel> diffusion;
};

/// burgers | advection | euler | burgers_diffusion
ModelSpec make_model(std::string_view name, double advection_speed = 1.0, double gamma = 1.4);

}  // namespace centralkit
