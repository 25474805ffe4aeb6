#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "centralkit/spectral.hpp"

namespace centralkit {

enum class SvProfile {
  Sharp,  ///< sigma = xi^{2s} above the activation threshold, 0 below
  Ramp,   ///< sigma = (xi^{2s} - xi_m^{2s}) / (1 - xi_m^{2s}) above the threshold
};

/// Spectral viscosity parameters. The viscosity acts only on modes above
/// m_N = floor(beta^{1/2s} N^{(2s-1)/2s}), i.e. floor(sqrt(beta N)) for s = 1.
struct SvConfig {
  bool enabled = true;
  std::size_t s = 1;
  double beta = 1.0;
  SvProfile profile = SvProfile::Sharp;

  std::size_t activation(std::size_t N) const;
  /// sigma(|k|/N) for mode k of an N-mode projection.
  double sigma(long k, std::size_t N) const;
  /// Throws std::invalid_argument on s == 0 or beta <= 0.
  void validate() const;
};

/// Pseudospectral evaluation of the Burgers nonlinearity with exact quadratic
/// dealiasing (zero-padded real transforms of length M >= 3N+1).
class BurgersSpectralOperator {
 public:
  explicit BurgersSpectralOperator(std::size_t N);
  ~BurgersSpectralOperator();
  BurgersSpectralOperator(const BurgersSpectralOperator&) = delete;
  BurgersSpectralOperator& operator=(const BurgersSpectralOperator&) = delete;
  BurgersSpectralOperator(BurgersSpectralOperator&&) noexcept;
  BurgersSpectralOperator& operator=(BurgersSpectralOperator&&) noexcept;

  std::size_t modes() const { return N_; }
  std::size_t padded_size() const { return M_; }

  /// Coefficients of P_N(v^2) for |k| <= N, from coefficients of v.
  std::vector<Complex> square(std::span<const Complex> v) const;
  /// -ik/2 * P_N(v^2)_k
  std::vector<Complex> galerkin_rhs(std::span<const Complex> v) const;
  /// max_x |v(x)| on the padded grid.
  double max_abs(std::span<const Complex> v) const;

 private:
  struct Plans;
  std::size_t N_;
  std::size_t M_;
  std::unique_ptr<Plans> plans_;
};

/// Time derivative of the plain Fourier-Galerkin method for Burgers.
FourierProjection galerkin_rhs(const FourierProjection& p);
/// Galerkin derivative minus N sigma(|k|/N) c_k.
FourierProjection sv_rhs(const FourierProjection& p, const SvConfig& cfg);
/// Contribution of the viscosity term to d/dt sum |c_k|^2, i.e.
/// -2N sum sigma(|k|/N) |c_k|^2.
double sv_dissipation_rate(const FourierProjection& p, const SvConfig& cfg);

struct SvRunOptions {
  double c_advective = 1.0;  ///< dt <= c_advective / (N max(1, max|v|))
  double c_viscous = 0.5;    ///< dt <= c_viscous / (N^2 max sigma), explicit mode only
  std::optional<double> dt_fixed;
  /// Integrate the linear viscosity exactly (integrating-factor SSP-RK3).
  bool integrating_factor = false;
  double instability_factor = 10.0;
  std::size_t max_steps = 50'000'000;
};

struct SvSnapshot {
  double t;
  FourierProjection projection;
};

/// Called after every accepted step: time reached, step size, state.
using SvObserver = std::function<void(double t, double dt, const FourierProjection& state)>;

/// Evolves 2N+1 initial samples with SSP-RK3 and returns projections at the
/// requested output times (sorted, each <= t_final). With cfg.enabled = false
/// this is the plain Fourier method.
std::vector<SvSnapshot> sv_evolve(std::span<const double> initial_samples, const SvConfig& cfg,
                                  double t_final, std::span<const double> output_times,
                                  const SvRunOptions& options = {},
                                  const SvObserver& observer = {});

/// Time step selected for the current state.
double sv_select_dt(const BurgersSpectralOperator& op, const FourierProjection& p,
                    const SvConfig& cfg, const SvRunOptions& options);

}  // namespace centralkit
