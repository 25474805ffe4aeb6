#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "centralkit/errors.hpp"
#include "centralkit/oracles.hpp"
#include "centralkit/sv_solver.hpp"

using namespace centralkit;

namespace {

constexpr double kPi = std::numbers::pi;

FourierProjection random_real_projection(std::size_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  auto p = FourierProjection::zero(N);
  p[0] = d(rng);
  for (long k = 1; k <= static_cast<long>(N); ++k) {
    const Complex c(d(rng) / k, d(rng) / k);
    p[k] = c;
    p[-k] = std::conj(c);
  }
  return p;
}

std::vector<double> samples(std::size_t N, double (*f)(double)) {
  std::vector<double> v;
  for (double x : collocation_points(N)) v.push_back(f(x));
  return v;
}

}  // namespace

TEST(SvConfig, ActivationThresholds) {
  SvConfig c;
  EXPECT_EQ(c.activation(64), 8u);
  EXPECT_EQ(c.activation(100), 10u);
  c.beta = 4.0;
  EXPECT_EQ(c.activation(64), 16u);
  c = SvConfig{};
  c.s = 2;
  EXPECT_EQ(c.activation(64), 22u);  // floor(64^(3/4))
}

TEST(SvConfig, SigmaProfiles) {
  SvConfig sharp;
  const std::size_t N = 64;
  EXPECT_EQ(sharp.sigma(8, N), 0.0);
  EXPECT_EQ(sharp.sigma(-8, N), 0.0);
  EXPECT_DOUBLE_EQ(sharp.sigma(9, N), (9.0 / 64) * (9.0 / 64));
  EXPECT_DOUBLE_EQ(sharp.sigma(64, N), 1.0);

  SvConfig ramp;
  ramp.profile = SvProfile::Ramp;
  EXPECT_EQ(ramp.sigma(8, N), 0.0);
  EXPECT_DOUBLE_EQ(ramp.sigma(64, N), 1.0);
  double prev = 0.0;
  for (long k = 9; k <= 64; ++k) {
    const double s = ramp.sigma(k, N);
    EXPECT_GT(s, prev);
    EXPECT_LE(s, sharp.sigma(k, N));
    prev = s;
  }
  SvConfig off;
  off.enabled = false;
  EXPECT_EQ(off.sigma(64, N), 0.0);

  SvConfig bad;
  bad.s = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = SvConfig{};
  bad.beta = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(SpectralOperator, PaddedLength) {
  EXPECT_EQ(BurgersSpectralOperator(10).padded_size(), 32u);
  EXPECT_EQ(BurgersSpectralOperator(64).padded_size(), 196u);
  EXPECT_EQ(BurgersSpectralOperator(128).padded_size(), 392u);
  EXPECT_THROW(BurgersSpectralOperator(0), std::invalid_argument);
}

TEST(SpectralOperator, SquareMatchesDirectConvolution) {
  const std::size_t N = 9;
  const auto p = random_real_projection(N, 11);
  const BurgersSpectralOperator op(N);
  const auto sq = op.square(p.coeffs);
  const long n = static_cast<long>(N);
  for (long k = -n; k <= n; ++k) {
    Complex direct{};
    for (long q = -n; q <= n; ++q) {
      const long r = k - q;
      if (r >= -n && r <= n) direct += p[q] * p[r];
    }
    EXPECT_NEAR(std::abs(sq[static_cast<std::size_t>(k + n)] - direct), 0.0, 1e-12) << k;
  }
  const auto rhs = op.galerkin_rhs(p.coeffs);
  for (long k = -n; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k + n);
    EXPECT_NEAR(std::abs(rhs[i] - Complex(0.0, -0.5 * k) * sq[i]), 0.0, 1e-12);
  }
}

TEST(SpectralOperator, MaxAbsOnPaddedGrid) {
  auto p = FourierProjection::zero(5);
  p[1] = Complex(0.0, -0.5);  // sin x
  p[-1] = Complex(0.0, 0.5);
  p[0] = 0.25;
  const BurgersSpectralOperator op(5);
  // the padded grid of 16 points hits x = pi/2
  EXPECT_NEAR(op.max_abs(p.coeffs), 1.25, 1e-14);
}

TEST(Galerkin, ConservesMassAndEnergy) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = random_real_projection(32, seed);
    const auto r = galerkin_rhs(p);
    EXPECT_NEAR(std::abs(r[0]), 0.0, 1e-14);
    double energy_rate = 0.0;
    for (long k = -32; k <= 32; ++k) energy_rate += (std::conj(p[k]) * r[k]).real();
    EXPECT_NEAR(energy_rate, 0.0, 1e-12);
  }
}

TEST(SpectralViscosity, DissipationRateMatchesRhs) {
  SvConfig cfg;
  const auto p = random_real_projection(32, 5);
  const auto g = galerkin_rhs(p);
  const auto s = sv_rhs(p, cfg);
  double rate = 0.0;
  for (long k = -32; k <= 32; ++k) {
    const Complex visc = s[k] - g[k];
    EXPECT_NEAR(std::abs(visc + 32.0 * cfg.sigma(k, 32) * p[k]), 0.0, 1e-12);
    rate += 2.0 * (std::conj(p[k]) * visc).real();
  }
  EXPECT_NEAR(sv_dissipation_rate(p, cfg), rate, 1e-10);
  EXPECT_LT(sv_dissipation_rate(p, cfg), 0.0);
}

TEST(SvEvolve, SmoothSolutionBeforeBreakdown) {
  const std::size_t N = 64;
  const auto v0 = samples(N, [](double x) { return 0.5 + 0.3 * std::sin(x); });
  SvConfig cfg;
  cfg.enabled = false;
  const double t_out[] = {0.0, 1.5};
  const auto snaps = sv_evolve(v0, cfg, 1.5, t_out);
  ASSERT_EQ(snaps.size(), 2u);
  EXPECT_EQ(snaps[0].t, 0.0);
  EXPECT_DOUBLE_EQ(snaps[1].t, 1.5);
  const auto prof = sine_profile(0.5, 0.3);
  const auto x = collocation_points(N);
  for (std::size_t j = 0; j < x.size(); ++j) {
    EXPECT_NEAR(snaps[0].projection.evaluate(x[j]), v0[j], 1e-13);
    EXPECT_NEAR(snaps[1].projection.evaluate(x[j]), burgers_characteristics(prof, x[j], 1.5), 1e-6);
  }
  EXPECT_NEAR(snaps[1].projection[0].real(), 0.5, 1e-13);
}

TEST(SvEvolve, ConstantStateAndOrdering) {
  const std::vector<double> v0(33, 0.75);
  const double t_out[] = {1.0, 0.25};
  const auto snaps = sv_evolve(v0, SvConfig{}, 1.0, t_out);
  ASSERT_EQ(snaps.size(), 2u);
  EXPECT_EQ(snaps[0].t, 0.25);
  for (const auto& s : snaps) {
    EXPECT_NEAR(s.projection[0].real(), 0.75, 1e-14);
    for (long k = 1; k <= 16; ++k) EXPECT_LT(std::abs(s.projection[k]), 1e-14);
  }
  const double bad[] = {2.0};
  EXPECT_THROW(sv_evolve(v0, SvConfig{}, 1.0, bad), std::invalid_argument);
}

TEST(SvEvolve, ViscosityDissipatesAfterShock) {
  const std::size_t N = 64;
  const auto v0 = samples(N, [](double x) { return std::sin(x); });
  const double t_out[] = {2.0};
  SvConfig cfg;
  const double e0 = project(v0).l2_norm();
  double last = e0;
  bool monotone = true;
  SvRunOptions opt;
  const auto snaps = sv_evolve(v0, cfg, 2.0, t_out, opt,
                               [&](double, double, const FourierProjection& p) {
                                 const double e = p.l2_norm();
                                 if (e > last * (1 + 1e-12)) monotone = false;
                                 last = e;
                               });
  EXPECT_TRUE(monotone);
  EXPECT_LT(snaps[0].projection.l2_norm(), e0);
  EXPECT_LT(std::abs(snaps[0].projection[0]), 1e-13);
}

TEST(SvEvolve, IntegratingFactorAgreesWithExplicit) {
  const std::size_t N = 32;
  const auto v0 = samples(N, [](double x) { return 0.2 + std::sin(x); });
  const double t_out[] = {0.5};
  SvRunOptions explicit_opt;
  SvRunOptions if_opt;
  if_opt.integrating_factor = true;
  if_opt.c_advective = 0.05;
  explicit_opt.c_advective = 0.05;
  const auto a = sv_evolve(v0, SvConfig{}, 0.5, t_out, explicit_opt);
  const auto b = sv_evolve(v0, SvConfig{}, 0.5, t_out, if_opt);
  const auto x = collocation_points(N);
  for (double xi : x) {
    EXPECT_NEAR(a[0].projection.evaluate(xi), b[0].projection.evaluate(xi), 1e-5);
  }
}

TEST(SvEvolve, SelectDtBounds) {
  const std::size_t N = 64;
  auto p = FourierProjection::zero(N);
  p[1] = Complex(0.0, -1.0);  // 2 sin x
  p[-1] = Complex(0.0, 1.0);
  const BurgersSpectralOperator op(N);
  SvRunOptions opt;
  SvConfig cfg;
  EXPECT_NEAR(sv_select_dt(op, p, cfg, opt), 0.5 / (64.0 * 64.0), 1e-15);
  opt.integrating_factor = true;
  EXPECT_NEAR(sv_select_dt(op, p, cfg, opt), 1.0 / (64.0 * 2.0), 1e-12);
  opt.dt_fixed = 1e-3;
  EXPECT_EQ(sv_select_dt(op, p, cfg, opt), 1e-3);
}

TEST(SvEvolve, BlowUpIsReported) {
  const auto v0 = samples(32, [](double x) { return std::sin(x); });
  SvConfig cfg;
  cfg.enabled = false;
  SvRunOptions opt;
  opt.dt_fixed = 2.0;
  const double t_out[] = {200.0};
  EXPECT_THROW(sv_evolve(v0, cfg, 200.0, t_out, opt), InstabilityError);
}
