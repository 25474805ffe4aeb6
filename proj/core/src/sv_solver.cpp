#include "centralkit/sv_solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "centralkit/errors.hpp"
#include "centralkit/ssp_rk.hpp"

namespace centralkit {

std::size_t SvConfig::activation(std::size_t N) const {
  const double n = static_cast<double>(N);
  if (s == 1) return static_cast<std::size_t>(std::floor(std::sqrt(beta * n)));
  const double two_s = 2.0 * static_cast<double>(s);
  return static_cast<std::size_t>(
      std::floor(std::pow(beta, 1.0 / two_s) * std::pow(n, (two_s - 1.0) / two_s)));
}

double SvConfig::sigma(long k, std::size_t N) const {
  if (!enabled) return 0.0;
  const std::size_t ak = static_cast<std::size_t>(k < 0 ? -k : k);
  const std::size_t m = activation(N);
  if (ak <= m) return 0.0;
  const double two_s = 2.0 * static_cast<double>(s);
  const double xi = static_cast<double>(ak) / static_cast<double>(N);
  const double base = std::pow(xi, two_s);
  if (profile == SvProfile::Sharp) return base;
  const double floor_m = std::pow(static_cast<double>(m) / static_cast<double>(N), two_s);
  return (base - floor_m) / (1.0 - floor_m);
}

void SvConfig::validate() const {
  if (s == 0) throw std::invalid_argument("sv: dissipation order s must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("sv: beta must be positive");
}

// ---------------------------------------------------------------------------

namespace {

bool smooth_size(std::size_t n) {
  for (std::size_t f : {2, 3, 5, 7}) {
    while (n % f == 0) n /= f;
  }
  return n == 1;
}

std::size_t padded_length(std::size_t N) {
  std::size_t M = 3 * N + 1;
  while (!smooth_size(M)) ++M;
  return M;
}

}  // namespace

struct BurgersSpectralOperator::Plans {
  std::size_t M;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan to_physical = nullptr;
  fftw_plan to_spectral = nullptr;

  explicit Plans(std::size_t m) : M(m) {
    real = fftw_alloc_real(M);
    spec = fftw_alloc_complex(M / 2 + 1);
    const int n = static_cast<int>(M);
    // FFTW_ESTIMATE keeps plan selection, and hence round-off, reproducible.
    to_physical = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    to_spectral = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
    if (to_physical == nullptr || to_spectral == nullptr) {
      throw std::runtime_error("fftw: plan creation failed");
    }
  }
  ~Plans() {
    fftw_destroy_plan(to_physical);
    fftw_destroy_plan(to_spectral);
    fftw_free(real);
    fftw_free(spec);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  /// Loads c_0..c_N into the half spectrum and transforms to M point values.
  void load_physical(std::span<const Complex> v, std::size_t N) {
    for (std::size_t k = 0; k <= M / 2; ++k) spec[k][0] = spec[k][1] = 0.0;
    for (std::size_t k = 0; k <= N; ++k) {
      spec[k][0] = v[N + k].real();
      spec[k][1] = v[N + k].imag();
    }
    spec[0][1] = 0.0;
    fftw_execute(to_physical);
  }
};

BurgersSpectralOperator::BurgersSpectralOperator(std::size_t N)
    : N_(N), M_(padded_length(N)), plans_(std::make_unique<Plans>(M_)) {
  if (N == 0) throw std::invalid_argument("spectral operator: N must be positive");
}

BurgersSpectralOperator::~BurgersSpectralOperator() = default;
BurgersSpectralOperator::BurgersSpectralOperator(BurgersSpectralOperator&&) noexcept = default;
BurgersSpectralOperator& BurgersSpectralOperator::operator=(BurgersSpectralOperator&&) noexcept =
    default;

std::vector<Complex> BurgersSpectralOperator::square(std::span<const Complex> v) const {
  if (v.size() != 2 * N_ + 1) throw std::invalid_argument("spectral operator: size mismatch");
  Plans& P = *plans_;
  P.load_physical(v, N_);
  for (std::size_t j = 0; j < M_; ++j) P.real[j] *= P.real[j];
  fftw_execute(P.to_spectral);
  std::vector<Complex> out(2 * N_ + 1);
  const double inv_m = 1.0 / static_cast<double>(M_);
  for (std::size_t k = 0; k <= N_; ++k) {
    const Complex c{P.spec[k][0] * inv_m, P.spec[k][1] * inv_m};
    out[N_ + k] = c;
    out[N_ - k] = std::conj(c);
  }
  out[N_] = Complex{out[N_].real(), 0.0};
  return out;
}

std::vector<Complex> BurgersSpectralOperator::galerkin_rhs(std::span<const Complex> v) const {
  std::vector<Complex> sq = square(v);
  for (long k = -static_cast<long>(N_); k <= static_cast<long>(N_); ++k) {
    Complex& c = sq[static_cast<std::size_t>(k + static_cast<long>(N_))];
    c *= Complex{0.0, -0.5 * static_cast<double>(k)};
  }
  return sq;
}

double BurgersSpectralOperator::max_abs(std::span<const Complex> v) const {
  Plans& P = *plans_;
  P.load_physical(v, N_);
  double m = 0.0;
  for (std::size_t j = 0; j < M_; ++j) m = std::max(m, std::abs(P.real[j]));
  return m;
}

// ---------------------------------------------------------------------------

FourierProjection galerkin_rhs(const FourierProjection& p) {
  BurgersSpectralOperator op(p.N);
  return FourierProjection(p.N, op.galerkin_rhs(p.coeffs), false);
}

namespace {

void add_viscosity(std::vector<Complex>& rhs, std::span<const Complex> v, std::size_t N,
                   const SvConfig& cfg) {
  if (!cfg.enabled) return;
  const double n = static_cast<double>(N);
  for (long k = -static_cast<long>(N); k <= static_cast<long>(N); ++k) {
    const std::size_t idx = static_cast<std::size_t>(k + static_cast<long>(N));
    rhs[idx] -= n * cfg.sigma(k, N) * v[idx];
  }
}

}  // namespace

FourierProjection sv_rhs(const FourierProjection& p, const SvConfig& cfg) {
  cfg.validate();
  BurgersSpectralOperator op(p.N);
  std::vector<Complex> rhs = op.galerkin_rhs(p.coeffs);
  add_viscosity(rhs, p.coeffs, p.N, cfg);
  return FourierProjection(p.N, std::move(rhs), false);
}

double sv_dissipation_rate(const FourierProjection& p, const SvConfig& cfg) {
  double acc = 0.0;
  for (long k = -static_cast<long>(p.N); k <= static_cast<long>(p.N); ++k) {
    acc += cfg.sigma(k, p.N) * std::norm(p[k]);
  }
  return -2.0 * static_cast<double>(p.N) * acc;
}

double sv_select_dt(const BurgersSpectralOperator& op, const FourierProjection& p,
                    const SvConfig& cfg, const SvRunOptions& options) {
  if (options.dt_fixed) return *options.dt_fixed;
  const double n = static_cast<double>(p.N);
  double dt = options.c_advective / (n * std::max(1.0, op.max_abs(p.coeffs)));
  if (cfg.enabled && !options.integrating_factor) {
    double max_sigma = 0.0;
    for (long k = 0; k <= static_cast<long>(p.N); ++k) max_sigma = std::max(max_sigma, cfg.sigma(k, p.N));
    if (max_sigma > 0.0) dt = std::min(dt, options.c_viscous / (n * n * max_sigma));
  }
  return dt;
}

std::vector<SvSnapshot> sv_evolve(std::span<const double> initial_samples, const SvConfig& cfg,
                                  double t_final, std::span<const double> output_times,
                                  const SvRunOptions& options, const SvObserver& observer) {
  cfg.validate();
  FourierProjection state = project(initial_samples);
  const std::size_t N = state.N;
  // enforce exact real-data symmetry
  for (long k = 1; k <= static_cast<long>(N); ++k) state[-k] = std::conj(state[k]);
  state[0] = Complex{state[0].real(), 0.0};
  state.interpolated = false;

  std::vector<double> targets(output_times.begin(), output_times.end());
  std::sort(targets.begin(), targets.end());
  for (double t : targets) {
    if (t < 0.0 || t > t_final) throw std::invalid_argument("sv_evolve: output time outside [0, t_final]");
  }
  if (targets.empty() || targets.back() != t_final) targets.push_back(t_final);

  BurgersSpectralOperator op(N);
  std::vector<double> decay(2 * N + 1);
  auto update_decay = [&](double tau) {
    for (long k = -static_cast<long>(N); k <= static_cast<long>(N); ++k) {
      decay[static_cast<std::size_t>(k + static_cast<long>(N))] =
          std::exp(-static_cast<double>(N) * cfg.sigma(k, N) * tau);
    }
  };

  auto full_rhs = [&](const std::vector<Complex>& v) {
    std::vector<Complex> r = op.galerkin_rhs(v);
    add_viscosity(r, v, N, cfg);
    return r;
  };
  auto advect = [&](const std::vector<Complex>& v) { return op.galerkin_rhs(v); };

  const double norm0 = state.l2_norm();
  double t = 0.0;
  std::size_t steps = 0;
  std::vector<SvSnapshot> out;
  for (double target : targets) {
    while (target - t > 1e-14 * std::max(1.0, target)) {
      const double remaining = target - t;
      double dt = sv_select_dt(op, state, cfg, options);
      const bool last = dt >= remaining;
      if (last) dt = remaining;

      std::vector<Complex>& c = state.coeffs;
      if (options.integrating_factor && cfg.enabled) {
        // Shu-Osher stages with the viscosity propagated exactly.
        auto scale = [&](std::vector<Complex>& v, double tau) {
          update_decay(tau);
          for (std::size_t i = 0; i < v.size(); ++i) v[i] *= decay[i];
        };
        auto euler = [&](const std::vector<Complex>& v) {
          std::vector<Complex> r = advect(v);
          for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] + dt * r[i];
          return r;
        };
        std::vector<Complex> u1 = euler(c);
        scale(u1, dt);
        std::vector<Complex> a = c;
        scale(a, 0.5 * dt);
        std::vector<Complex> b = euler(u1);
        scale(b, -0.5 * dt);
        std::vector<Complex> u2(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) u2[i] = 0.75 * a[i] + 0.25 * b[i];
        std::vector<Complex> a3 = c;
        scale(a3, dt);
        std::vector<Complex> b3 = euler(u2);
        scale(b3, 0.5 * dt);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = (1.0 / 3.0) * a3[i] + (2.0 / 3.0) * b3[i];
      } else {
        c = ssp_rk_step(c, full_rhs, dt, 3);
      }
      t = last ? target : t + dt;

      const double norm = state.l2_norm();
      if (!std::isfinite(norm)) {
        std::ostringstream msg;
        msg << "sv_evolve: non-finite coefficients at t = " << t;
        throw InstabilityError(msg.str());
      }
      if (norm0 > 0.0 && norm > options.instability_factor * norm0) {
        std::ostringstream msg;
        msg << "sv_evolve: L2 norm grew from " << norm0 << " to " << norm << " by t = " << t;
        throw InstabilityError(msg.str());
      }
      if (++steps > options.max_steps) throw SolverError("sv_evolve: exceeded max_steps");
      if (observer) observer(t, dt, state);
    }
    out.push_back({target, state});
  }
  // drop the implicit final snapshot if it was not requested
  if (std::find(output_times.begin(), output_times.end(), t_final) == output_times.end() &&
      !out.empty() && !output_times.empty()) {
    out.pop_back();
  }
  return out;
}

}  // namespace centralkit
