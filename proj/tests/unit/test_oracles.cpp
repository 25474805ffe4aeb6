#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "centralkit/oracles.hpp"

using namespace centralkit;

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double x) { return x - 2 * kPi * std::floor((x + kPi) / (2 * kPi)); }

}  // namespace

TEST(Characteristics, ImplicitRelationHolds) {
  const auto prof = sine_profile(0.5, 0.3);
  EXPECT_DOUBLE_EQ(breakdown_time(prof), 1.0 / 0.3);
  EXPECT_EQ(breakdown_time(sine_profile(1.0, 0.0)), std::numeric_limits<double>::infinity());
  for (double t : {0.0, 0.8, 3.0}) {
    for (double x = -3.0; x <= 3.0; x += 0.37) {
      const double u = burgers_characteristics(prof, x, t);
      EXPECT_NEAR(u, 0.5 + 0.3 * std::sin(x - u * t), 1e-13) << x << ' ' << t;
    }
  }
  EXPECT_THROW(burgers_characteristics(prof, 0.0, 1.0 / 0.3), BreakdownError);
  EXPECT_THROW(burgers_characteristics(prof, 0.0, -1.0), std::invalid_argument);
}

TEST(Riemann, ShockAndRarefaction) {
  EXPECT_EQ(burgers_riemann(1.0, 0.0, 0.4, 1.0), 1.0);
  EXPECT_EQ(burgers_riemann(1.0, 0.0, 0.6, 1.0), 0.0);
  EXPECT_EQ(burgers_riemann(1.0, 0.0, 0.5, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(burgers_riemann(0.0, 1.0, 0.3, 1.0), 0.3);
  EXPECT_EQ(burgers_riemann(0.0, 1.0, -0.1, 1.0), 0.0);
  EXPECT_EQ(burgers_riemann(0.0, 1.0, 1.5, 1.0), 1.0);

  const BurgersRiemannSolution shock(1.0, 0.0);
  EXPECT_NEAR(shock.average(-1.0, 1.0, 1.0), 0.75, 1e-14);
  ASSERT_EQ(shock.shock_locations(1.0).size(), 1u);
  EXPECT_DOUBLE_EQ(shock.shock_locations(1.0)[0], 0.5);
  const BurgersRiemannSolution fan(0.0, 1.0);
  EXPECT_TRUE(fan.shock_locations(1.0).empty());
  EXPECT_NEAR(fan.average(0.0, 1.0, 1.0), 0.5, 1e-14);
}

TEST(SineSolution, MatchesCharacteristicsBeforeBreakdown) {
  const BurgersSineSolution exact(0.5, 0.3);
  const auto prof = sine_profile(0.5, 0.3);
  EXPECT_DOUBLE_EQ(*exact.valid_until(), 1.0 / 0.3);
  EXPECT_TRUE(exact.shock_locations(3.0).empty());
  for (double x = -3.1; x < 3.1; x += 0.29) {
    EXPECT_NEAR(exact.evaluate(x, 2.0), burgers_characteristics(prof, x, 2.0), 1e-12);
  }
}

TEST(SineSolution, PostShockStructure) {
  for (double b : {0.3, -0.3}) {
    const BurgersSineSolution exact(0.5, b);
    const double t = 6.0;
    const auto shocks = exact.shock_locations(t);
    ASSERT_EQ(shocks.size(), 1u);
    const double s = shocks[0];
    EXPECT_NEAR(s, wrap((b > 0 ? kPi : 0.0) + 0.5 * t), 1e-14);
    // Lax entropy condition and Rankine-Hugoniot speed a
    const double ul = exact.evaluate(s - 1e-9, t);
    const double ur = exact.evaluate(s + 1e-9, t);
    EXPECT_GT(ul - ur, 0.1);
    EXPECT_NEAR(0.5 * (ul + ur), 0.5, 1e-8);
    // every smooth point lies on a characteristic from the data
    for (double x = -3.0; x <= 3.0; x += 0.31) {
      if (exact.shock_distance(x, t) < 1e-3) continue;
      const double u = exact.evaluate(x, t);
      EXPECT_NEAR(u, 0.5 + b * std::sin(x - u * t), 1e-12) << x;
    }
  }
}

TEST(SineSolution, MassIsConserved) {
  const BurgersSineSolution exact(0.5, 0.3);
  const Grid1D g(-kPi, kPi, 512);
  for (double t : {0.0, 2.0, 6.0, 11.0}) {
    EXPECT_NEAR(exact.cell_averages(g, t).mass(), 2 * kPi * 0.5, 1e-9) << t;
  }
}

TEST(SineSolution, CellAveragesAtStart) {
  const BurgersSineSolution exact(0.5, 0.3);
  const Grid1D g(-kPi, kPi, 16);
  const auto u = exact.cell_averages(g, 0.0);
  for (std::size_t nu = 0; nu < 16; ++nu) {
    const double x0 = g.center(nu) - g.h() / 2, x1 = x0 + g.h();
    EXPECT_NEAR(u(nu, 0), 0.5 + 0.3 * (std::cos(x0) - std::cos(x1)) / g.h(), 1e-14);
  }
}

TEST(SineSolution, PeriodicShockDistance) {
  const BurgersSineSolution exact(0.0, 1.0);
  // shock at pi for a = 0
  EXPECT_NEAR(exact.shock_distance(-kPi + 0.2, 2.0), 0.2, 1e-14);
  EXPECT_NEAR(exact.shock_distance(kPi - 0.3, 2.0), 0.3, 1e-14);
  EXPECT_NEAR(exact.shock_distance(0.0, 2.0), kPi, 1e-14);
}

TEST(ErrorNorms, PiecewiseConstantIsExact) {
  const BurgersRiemannSolution exact(1.0, 0.0);
  const Grid1D g(-1.0, 1.0, 10, Boundary::ZeroGradient);
  auto u = exact.cell_averages(g, 0.0);
  auto e = error_norms(u, exact, 0.0, 0.2);
  EXPECT_NEAR(e.l1, 0.0, 1e-15);

  u(1, 0) += 0.1;
  e = error_norms(u, exact, 0.0, 0.2);
  EXPECT_NEAR(e.l1, 0.1 * g.h(), 1e-15);
  EXPECT_NEAR(e.l1_loc, 0.1 * g.h(), 1e-15);
  EXPECT_NEAR(e.linf_smooth, 0.1, 1e-15);
  EXPECT_NEAR(e.pointwise_ratio, 0.1 * 0.7 / g.h(), 1e-14);
  EXPECT_THROW(error_norms(u, exact, 0.0, -1.0), std::invalid_argument);
}

TEST(ErrorNorms, SampledValues) {
  const BurgersRiemannSolution exact(1.0, 0.0);
  const std::vector<double> x{-0.75, -0.25, 0.25, 0.75};
  std::vector<double> v;
  for (double xi : x) v.push_back(exact.evaluate(xi, 0.0) + 0.01);
  const auto e = error_norms(x, v, exact, 0.0, 0.5, 0.5);
  EXPECT_NEAR(e.l1, 4 * 0.01 * 0.5, 1e-15);
  EXPECT_NEAR(e.l1_loc, 2 * 0.01 * 0.5, 1e-15);
  EXPECT_NEAR(e.linf_smooth, 0.01, 1e-15);
  EXPECT_NEAR(e.pointwise_ratio, 0.01 * 0.75 / 0.5, 1e-15);
  const std::vector<double> short_v{1.0};
  EXPECT_THROW(error_norms(x, short_v, exact, 0.0, 0.5, 0.5), std::invalid_argument);
}

TEST(Convergence, TableAndStudy) {
  auto run = [](std::size_t n) {
    ErrorNorms e;
    e.l1 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    return e;
  };
  const std::size_t res[] = {16, 32, 64, 128};
  const auto serial = convergence_study(run, res, 1);
  const auto parallel = convergence_study(run, res, 3);
  ASSERT_EQ(serial.rows().size(), 4u);
  EXPECT_TRUE(std::isnan(serial.rows()[0].order));
  EXPECT_DOUBLE_EQ(serial.final_order(), 2.0);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(parallel.rows()[i].n, res[i]);
    EXPECT_EQ(parallel.rows()[i].errors.l1, serial.rows()[i].errors.l1);
  }
  std::ostringstream os;
  serial.write_csv(os);
  const std::string csv = os.str();
  EXPECT_EQ(csv.substr(0, 36), "n,e_l1,e_l1loc,e_linf_smooth,order\n1");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);

  const std::size_t two[] = {16, 32};
  const std::size_t uneven[] = {16, 32, 48};
  EXPECT_THROW(convergence_study(run, two), std::invalid_argument);
  EXPECT_THROW(convergence_study(run, uneven), std::invalid_argument);
}
