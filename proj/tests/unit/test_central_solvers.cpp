#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "centralkit/central_solvers.hpp"
#include "centralkit/errors.hpp"
#include "centralkit/oracles.hpp"
#include "centralkit/ssp_rk.hpp"

using namespace centralkit;

namespace {

constexpr double kPi = std::numbers::pi;

CellAverages random_periodic(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  CellAverages u(Grid1D(-kPi, kPi, n, Boundary::Periodic), 1);
  for (double& v : u.data()) v = d(rng);
  return u;
}

LimiterOptions zero_slopes() {
  LimiterOptions o;
  o.first_order = true;
  return o;
}

double mm(double a, double b) { return a * b <= 0.0 ? 0.0 : (a > 0 ? std::min(a, b) : std::max(a, b)); }

}  // namespace

TEST(NtPredictor, ConstantAndExtremum) {
  const auto f = burgers();
  CellAverages c(Grid1D(0.0, 1.0, 6), 1, std::vector<double>(6, 0.7));
  const auto cm = nt_predictor(c, *f, 0.01);
  for (double v : cm.data()) EXPECT_EQ(v, 0.7);

  const auto adv = linear_advection(1.0);
  CellAverages u(Grid1D(0.0, 5.0, 5), 1, {0.0, 1.0, 2.0, 3.0, 1.0});
  const double dt = 0.2;
  const auto mid = nt_predictor(u, *adv, dt);
  // equal differences d = 1 at cells 1 and 2
  EXPECT_DOUBLE_EQ(mid(1, 0), 1.0 - dt / 2.0 * 1.0);
  EXPECT_DOUBLE_EQ(mid(2, 0), 2.0 - dt / 2.0 * 1.0);
  // cell 3 is a local maximum: derivative clipped
  EXPECT_EQ(mid(3, 0), 3.0);
}

TEST(NtCorrector, HandComputedBurgersStep) {
  const auto f = burgers();
  const CellAverages u = random_periodic(7, 42);
  const double h = u.grid().h();
  const double dt = 0.3 * h;
  const std::size_t n = u.size();
  auto at = [&](long i) { return u((static_cast<std::size_t>(i) + n) % n, 0); };
  std::vector<double> s(n), fp(n), m(n);
  for (long i = 0; i < static_cast<long>(n); ++i) {
    s[i] = mm(at(i) - at(i - 1), at(i + 1) - at(i));
    const double fl = 0.5 * at(i - 1) * at(i - 1), fc = 0.5 * at(i) * at(i), fr = 0.5 * at(i + 1) * at(i + 1);
    fp[i] = mm(fc - fl, fr - fc);
    m[i] = at(i) - dt / (2 * h) * fp[i];
  }
  const auto slopes = reconstruct_linear(u);
  const auto mid = nt_predictor(u, *f, dt);
  const auto out = nt_corrector(u, slopes, mid, *f, dt);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + 1) % n;
    const double ref = 0.5 * (u(j, 0) + u(k, 0)) + 0.125 * (s[j] - s[k]) -
                       dt / h * (0.5 * m[k] * m[k] - 0.5 * m[j] * m[j]);
    EXPECT_NEAR(out(j, 0), ref, 1e-15);
  }
}

TEST(NtCorrector, ExactHalfCellShift) {
  const auto adv = linear_advection(1.0);
  const CellAverages u(Grid1D(0.0, 8.0, 8), 1, {0, 0, 0, 1, 1, 1, 1, 0});
  const double dt = 0.5 * u.grid().h();
  const auto slopes = reconstruct_linear(u, zero_slopes());
  const auto mid = nt_predictor(u, *adv, dt, zero_slopes());
  const auto out = nt_corrector(u, slopes, mid, *adv, dt);
  for (std::size_t j = 0; j < u.size(); ++j) EXPECT_EQ(out(j, 0), u(j, 0));
}

TEST(NtCorrector, ConstantAndConservation) {
  const auto f = burgers();
  CellAverages c(Grid1D(0.0, 1.0, 9), 1, std::vector<double>(9, -0.3));
  const auto cs = nt_corrector(c, reconstruct_linear(c), nt_predictor(c, *f, 0.01), *f, 0.01);
  for (double v : cs.data()) EXPECT_EQ(v, -0.3);

  const CellAverages u = random_periodic(50, 9);
  const double dt = 0.4 * u.grid().h() / max_wave_speed(u, *f);
  const auto out = nt_corrector(u, reconstruct_linear(u), nt_predictor(u, *f, dt), *f, dt);
  EXPECT_NEAR(out.mass(), u.mass(), 1e-14);
}

TEST(NtStep, ZeroSlopesIsStaggeredLaxFriedrichs) {
  const auto f = burgers();
  const CellAverages u = random_periodic(31, 5);
  const double dt = 0.45 * u.grid().h() / max_wave_speed(u, *f);
  NtState st(u);
  nt_step(st, *f, dt, zero_slopes());
  const auto lf = staggered_lax_friedrichs(u, *f, dt);
  ASSERT_EQ(lf.data().size(), st.u.data().size());
  for (std::size_t i = 0; i < lf.data().size(); ++i) EXPECT_EQ(lf.data()[i], st.u.data()[i]);
}

TEST(NtStep, CflViolation) {
  const auto f = burgers();
  const CellAverages u = random_periodic(20, 1);
  const double dt = 0.6 * u.grid().h() / max_wave_speed(u, *f);
  NtState st(u);
  EXPECT_THROW(nt_step(st, *f, dt), CflError);
}

TEST(NtDoubleStep, ConstantTvdAndConservation) {
  const auto f = burgers();
  CellAverages c(Grid1D(0.0, 1.0, 10), 1, std::vector<double>(10, 1.25));
  const CflPolicy policy{kNtDefaultCfl, std::nullopt};
  const auto cs = nt_double_step(c, *f, policy);
  for (double v : cs.data()) EXPECT_DOUBLE_EQ(v, 1.25);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CellAverages u = random_periodic(64, seed);
    for (int k = 0; k < 10; ++k) {
      double elapsed = 0.0;
      CellAverages next = nt_double_step(u, *f, policy, {}, &elapsed);
      EXPECT_GT(elapsed, 0.0);
      EXPECT_LE(total_variation(next), total_variation(u) + 1e-12);
      EXPECT_NEAR(next.mass(), u.mass(), 1e-12 * std::max(1.0, std::abs(u.mass())) + 1e-14);
      u = std::move(next);
    }
  }
}

TEST(NtStep, ZeroGradientGridsGrowAndShrink) {
  const auto f = burgers();
  const Grid1D g(0.0, 1.0, 10, Boundary::ZeroGradient);
  CellAverages u(g, 1, std::vector<double>(10, 0.5));
  NtState st(u);
  nt_step(st, *f, 0.01);
  EXPECT_EQ(st.u.size(), 11u);
  EXPECT_EQ(st.phase, StaggerPhase::Staggered);
  nt_step(st, *f, 0.01);
  EXPECT_EQ(st.u.size(), 10u);
  EXPECT_EQ(st.phase, StaggerPhase::OnGrid);
  EXPECT_EQ(st.u.grid(), g);
  for (double v : st.u.data()) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(LocalSpeeds, Examples) {
  const auto b = burgers();
  const double one[] = {1.0}, mone[] = {-1.0}, zero[] = {0.0}, five[] = {5.0};
  auto s = local_speeds(one, mone, *b);
  EXPECT_EQ(s.a_minus, -1.0);
  EXPECT_EQ(s.a_plus, 1.0);
  s = local_speeds(zero, five, *linear_advection(1.0));
  EXPECT_EQ(s.a_minus, 0.0);
  EXPECT_EQ(s.a_plus, 1.0);
  s = local_speeds(zero, zero, *b);
  EXPECT_EQ(s.a_minus, 0.0);
  EXPECT_EQ(s.a_plus, 0.0);
}

TEST(KtFlux, Examples) {
  const auto b = burgers();
  const double one[] = {1.0}, mone[] = {-1.0}, zero[] = {0.0}, five[] = {5.0};
  EXPECT_DOUBLE_EQ(kt_flux(one, mone, *b)[0], 1.5);
  EXPECT_EQ(kt_flux(zero, five, *linear_advection(1.0))[0], 0.0);
  EXPECT_EQ(kt_flux(zero, zero, *b)[0], 0.0);
}

TEST(KtFlux, ConsistencyOnRandomStates) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-3.0, 3.0), pos(0.05, 5.0);
  const FluxModelPtr models[] = {burgers(), linear_advection(-1.3), euler_1d(1.4)};
  for (const auto& f : models) {
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> u;
      if (f->components() == 3) {
        const auto e = euler_conserved(pos(rng), d(rng), pos(rng), 1.4);
        u.assign(e.begin(), e.end());
      } else {
        u = {d(rng)};
      }
      const auto H = kt_flux(u, u, *f);
      const auto F = f->flux(u);
      for (std::size_t c = 0; c < u.size(); ++c) EXPECT_NEAR(H[c], F[c], 1e-15 * std::max(1.0, std::abs(F[c])));
    }
  }
}

TEST(KtFlux, AsymmetricConeIsNotRusanov) {
  // both speeds positive: the flux is pure upwind f(v-)
  const auto b = burgers();
  const double l[] = {1.0}, r[] = {2.0};
  EXPECT_DOUBLE_EQ(kt_flux(l, r, *b)[0], 0.5);
}

TEST(KtRhs, ConstantTelescopingAndLaxFriedrichs) {
  const auto f = burgers();
  CellAverages c(Grid1D(0.0, 1.0, 12), 1, std::vector<double>(12, 0.4));
  const auto rc = kt_rhs(c, *f);
  for (double v : rc.data()) EXPECT_EQ(v, 0.0);

  const CellAverages u = random_periodic(40, 23);
  double sum = 0.0;
  const auto ru = kt_rhs(u, *f);
  for (double v : ru.data()) sum += v;
  EXPECT_NEAR(sum, 0.0, 1e-12);
  const auto diffusion = saturating_diffusion();
  sum = 0.0;
  const auto rd = kt_rhs(u, *f, &diffusion);
  for (double v : rd.data()) sum += v;
  EXPECT_NEAR(sum, 0.0, 1e-11);

  // alternating-sign Burgers data gives a symmetric cone at every interface
  CellAverages alt(Grid1D(0.0, 1.0, 10), 1);
  for (std::size_t nu = 0; nu < 10; ++nu) alt(nu, 0) = nu % 2 == 0 ? 0.8 : -0.8;
  const auto H = kt_interface_fluxes(alt, *f, zero_slopes());
  for (std::size_t nu = 0; nu < 10; ++nu) {
    const double vl = alt(nu, 0), vr = alt((nu + 1) % 10, 0);
    const double a = std::max(std::abs(vl), std::abs(vr));
    EXPECT_NEAR(H[nu], 0.25 * (vl * vl + vr * vr) - 0.5 * a * (vr - vl), 1e-15);
  }
}

TEST(KtRhs, DiffusionTermByHand) {
  // zero flux isolates the diffusion: (q(D+) - q(D-))/h
  const auto f = linear_advection(0.0);
  const auto diffusion = saturating_diffusion();
  const CellAverages u = random_periodic(9, 31);
  const double h = u.grid().h();
  const auto rhs = kt_rhs(u, *f, &diffusion);
  const std::size_t n = u.size();
  for (std::size_t nu = 0; nu < n; ++nu) {
    const double dp = (u((nu + 1) % n, 0) - u(nu, 0)) / h;
    const double dm = (u(nu, 0) - u((nu + n - 1) % n, 0)) / h;
    const double q = (dp / std::sqrt(1 + dp * dp) - dm / std::sqrt(1 + dm * dm)) / h;
    EXPECT_NEAR(rhs(nu, 0), q, 1e-12);
  }
}

TEST(SspRk, ExamplesAndOrder) {
  auto zero = [](const std::vector<double>& v) { return std::vector<double>(v.size(), 0.0); };
  auto decay = [](const std::vector<double>& v) {
    std::vector<double> r(v);
    for (double& x : r) x = -x;
    return r;
  };
  const std::vector<double> u{1.0, -2.0};
  EXPECT_EQ(ssp_rk_step(u, zero, 0.1, 3), u);
  const double dt = 0.1;
  EXPECT_NEAR(ssp_rk_step(u, decay, dt, 2)[0], 1.0 - dt + dt * dt / 2, 1e-15);
  EXPECT_THROW(ssp_rk_step(u, decay, dt, 4), std::invalid_argument);

  auto error = [&](int steps, int order) {
    std::vector<double> v{1.0};
    const double k = 1.0 / steps;
    for (int i = 0; i < steps; ++i) v = ssp_rk_step(v, decay, k, order);
    return std::abs(v[0] - std::exp(-1.0));
  };
  EXPECT_NEAR(std::log2(error(20, 3) / error(40, 3)), 3.0, 0.1);
  EXPECT_NEAR(std::log2(error(20, 2) / error(40, 2)), 2.0, 0.1);
}

TEST(KtStep, TvdAndConservationWithRk2AndRk3) {
  const auto f = burgers();
  for (int order : {2, 3}) {
    CellAverages u = random_periodic(80, 77 + order);
    const double m0 = u.mass();
    for (int k = 0; k < 50; ++k) {
      const double dt = kKtDefaultCfl * u.grid().h() / max_wave_speed(u, *f);
      CellAverages next = kt_step(u, *f, dt, order);
      EXPECT_LE(total_variation(next), total_variation(u) + 1e-12);
      u = std::move(next);
    }
    EXPECT_NEAR(u.mass(), m0, 1e-13);
  }
}

TEST(Solve, EulerConservesEveryComponent) {
  const auto f = euler_1d(1.4);
  const Grid1D g(0.0, 1.0, 100, Boundary::Periodic);
  CellAverages u(g, 3);
  for (std::size_t nu = 0; nu < g.n_cells(); ++nu) {
    const double x = g.center(nu);
    const auto s = euler_conserved(1.0 + 0.2 * std::sin(2 * kPi * x), 0.5, 1.0, 1.4);
    for (std::size_t c = 0; c < 3; ++c) u(nu, c) = s[c];
  }
  for (Scheme scheme : {Scheme::NT, Scheme::KT}) {
    SolverOptions opts;
    opts.scheme = scheme;
    opts.policy.cfl = scheme == Scheme::NT ? kNtDefaultCfl : kKtDefaultCfl;
    const auto res = solve(u, *f, 0.0, 0.3, opts);
    EXPECT_DOUBLE_EQ(res.t, 0.3);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(res.u.mass(c), u.mass(c), 1e-12 * std::abs(u.mass(c)));
  }
}

TEST(Solve, NtMatchesCharacteristicsAtSecondOrder) {
  const BurgersSineSolution exact(0.5, 0.3);
  std::vector<double> errs;
  for (std::size_t n : {64, 128}) {
    const Grid1D g(-kPi, kPi, n);
    SolverOptions opts;
    const auto res = solve(exact.cell_averages(g, 0.0), *burgers(), 0.0, 0.8, opts);
    errs.push_back(error_norms(res.u, exact, 0.8, 0.0).l1);
  }
  EXPECT_GT(std::log2(errs[0] / errs[1]), 1.8);
}

TEST(Solve, FixedStepAndCflErrors) {
  const CellAverages u = random_periodic(40, 3);
  SolverOptions opts;
  opts.scheme = Scheme::KT;
  opts.policy = {0.9, 10.0 * u.grid().h()};
  EXPECT_THROW(solve(u, *burgers(), 0.0, 1.0, opts), CflError);
  opts.scheme = Scheme::NT;
  opts.diffusion = saturating_diffusion();
  EXPECT_THROW(solve(u, *burgers(), 0.0, 1.0, opts), std::invalid_argument);
}

TEST(Solve, ConvectionDiffusionMaximumPrinciple) {
  const Grid1D g(-kPi, kPi, 100);
  const auto u0 = CellAverages::from_average(g, [](double x) { return std::abs(x) < 1.0 ? 1.0 : -0.5; });
  SolverOptions opts;
  opts.scheme = Scheme::KT;
  opts.policy.cfl = kKtDefaultCfl;
  opts.diffusion = saturating_diffusion();
  const auto res = solve(u0, *burgers(), 0.0, 0.5, opts);
  for (double v : res.u.data()) {
    EXPECT_LE(v, 1.0 + 1e-10);
    EXPECT_GE(v, -0.5 - 1e-10);
  }
  // the parabolic restriction dominates at this resolution
  EXPECT_LE(select_dt(u0, *burgers(), opts), 0.25 * g.h() * g.h() + 1e-18);
}
