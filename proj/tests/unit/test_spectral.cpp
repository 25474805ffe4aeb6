#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "centralkit/problems.hpp"
#include "centralkit/spectral.hpp"

using namespace centralkit;

namespace {

constexpr double kPi = std::numbers::pi;

FourierProjection sample(std::size_t N, double (*f)(double)) {
  std::vector<double> v;
  for (double x : collocation_points(N)) v.push_back(f(x));
  return project(v);
}

/// Exact Fourier moments of the indicator of |x| < pi/2.
FourierProjection step_moments(std::size_t N) {
  auto p = FourierProjection::zero(N);
  p[0] = 0.5;
  for (long k = 1; k <= static_cast<long>(N); ++k) {
    const double c = std::sin(k * kPi / 2) / (kPi * k);
    p[k] = c;
    p[-k] = c;
  }
  return p;
}

}  // namespace

TEST(Projection, CosineCoefficients) {
  const auto p = sample(8, [](double x) { return std::cos(3 * x) + 0.25; });
  for (long k = -8; k <= 8; ++k) {
    const double want = k == 0 ? 0.25 : (std::abs(k) == 3 ? 0.5 : 0.0);
    EXPECT_NEAR(p[k].real(), want, 1e-14) << k;
    EXPECT_NEAR(p[k].imag(), 0.0, 1e-14) << k;
  }
  EXPECT_TRUE(p.interpolated);
  EXPECT_LT(p.conjugate_asymmetry(), 1e-15);
  EXPECT_NEAR(p.l2_norm(), std::sqrt(0.0625 + 0.5), 1e-14);
}

TEST(Projection, InterpolatesAndSynthesizes) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> v(21);
  for (double& s : v) s = d(rng);
  const auto p = project(v);
  const auto x = collocation_points(10);
  for (std::size_t j = 0; j < v.size(); ++j) EXPECT_NEAR(p.evaluate(x[j]), v[j], 1e-13);
  const auto fine = synthesize(p, 84);
  const auto xf = equispaced_points(84);
  for (std::size_t j = 0; j < fine.size(); ++j) EXPECT_NEAR(fine[j], p.evaluate(xf[j]), 1e-13);
}

TEST(Projection, EquispacedPointsAndWrap) {
  const auto x = equispaced_points(4);
  EXPECT_DOUBLE_EQ(x[0], -kPi);
  EXPECT_DOUBLE_EQ(x[2], 0.0);
  EXPECT_NEAR(wrap_angle(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(wrap_angle(-3 * kPi / 2), kPi / 2, 1e-15);
  EXPECT_NEAR(wrap_angle(0.3), 0.3, 1e-15);
}

TEST(ConcentrationKernel, ExponentialHasUnitMass) {
  const auto k = ConcentrationKernel::exponential(1.0);
  double mass = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) mass += k((i + 0.5) / n) / n;
  EXPECT_NEAR(mass, 1.0, 1e-9);
  EXPECT_EQ(k(0.0), 0.0);
  EXPECT_EQ(k(1.0), 0.0);
  EXPECT_EQ(ConcentrationKernel::fejer()(0.4), 1.0);
  EXPECT_THROW(ConcentrationKernel::exponential(0.0), std::invalid_argument);
}

TEST(ConcentrationDetect, JumpHeightFromExactMoments) {
  // for piecewise constant data the Fejer sum telescopes to the jump exactly
  // when N is even
  const auto p = step_moments(64);
  const auto fejer = ConcentrationKernel::fejer();
  EXPECT_NEAR(concentration_detect(p, fejer, -kPi / 2), 1.0, 1e-12);
  EXPECT_NEAR(concentration_detect(p, fejer, kPi / 2), -1.0, 1e-12);
  const auto ex = ConcentrationKernel::exponential(1.0);
  EXPECT_NEAR(concentration_detect(p, ex, -kPi / 2), 1.0, 1e-3);
  // smooth region: O(1/N) for Fejer, much smaller with the exponential factor
  EXPECT_LT(std::abs(concentration_detect(p, fejer, 0.0)), 2.0 / 64);
  EXPECT_LT(std::abs(concentration_detect(p, ex, 0.0)), 1e-4);
  EXPECT_EQ(concentration_detect(FourierProjection::zero(16), fejer, 0.3), 0.0);
}

TEST(EdgeDetect, StepFromSamples) {
  const std::size_t N = 64;
  const auto p = sample(N, step_function);
  const auto rep = minmod_edge_detect(p, 0.1);
  ASSERT_EQ(rep.edges.size(), 2u);
  const double h = 2 * kPi / (2 * N + 1);
  EXPECT_NEAR(rep.edges[0].location, -kPi / 2, h);
  EXPECT_NEAR(rep.edges[0].amplitude, 1.0, 0.1);
  EXPECT_NEAR(rep.edges[1].location, kPi / 2, h);
  EXPECT_NEAR(rep.edges[1].amplitude, -1.0, 0.1);
  EXPECT_EQ(rep.N_used, N);
}

TEST(EdgeDetect, SmoothDataHasNoEdges) {
  const auto p = sample(64, [](double x) { return std::sin(x) + 0.5 * std::cos(2 * x); });
  EXPECT_TRUE(minmod_edge_detect(p, 0.1).edges.empty());
  for (double v : combined_detector_on_grid(p)) EXPECT_LT(std::abs(v), 0.1);
}

TEST(EdgeDetect, EdgeTestFunction) {
  const auto p = sample(128, edge_test_function);
  const auto rep = minmod_edge_detect(p, 0.1);
  ASSERT_EQ(rep.edges.size(), 1u);
  EXPECT_NEAR(rep.edges[0].location, 0.0, 2 * kPi / 257);
}

TEST(DistanceFunction, PeriodicDistanceAndCap) {
  const DistanceFunction d({-kPi / 2, kPi / 2});
  EXPECT_NEAR(d(0.0), kPi / 2, 1e-15);
  EXPECT_NEAR(d(kPi - 0.1), kPi / 2 - 0.1, 1e-14);
  EXPECT_NEAR(d(-kPi + 0.1), kPi / 2 - 0.1, 1e-14);
  EXPECT_EQ(d(kPi / 2), 0.0);
  const DistanceFunction none({}, 1.0);
  EXPECT_EQ(none(0.3), 1.0);
  const DistanceFunction capped({0.0}, 0.5);
  EXPECT_EQ(capped(2.0), 0.5);
}

TEST(Mollifier, KernelPieces) {
  EXPECT_EQ(mollifier_bump(0.0, 8.0), 1.0);
  EXPECT_EQ(mollifier_bump(1.0, 8.0), 0.0);
  EXPECT_NEAR(mollifier_bump(0.5, 8.0), std::exp(8.0 * 0.25 / -0.75), 1e-15);
  for (double y : {0.0, 1e-10, 0.3, -0.7}) {
    double direct = 0.5;
    for (std::size_t k = 1; k <= 5; ++k) direct += std::cos(k * kPi * y);
    EXPECT_NEAR(dirichlet_kernel(y, 5), direct, 1e-12) << y;
  }
}

TEST(Mollifier, DegreeAndEdgeGuard) {
  const auto p = sample(64, step_function);
  const AdaptiveMollifier m(p);
  EXPECT_EQ(m.degree(1e-3), 1u);
  EXPECT_EQ(m.degree(1.0), static_cast<std::size_t>(std::floor(0.15 * 64)));
  EXPECT_THROW(m(0.0, 0.0), std::invalid_argument);
}

TEST(Mollifier, RecoversStepAwayFromEdges) {
  const std::size_t N = 64;
  const auto p = sample(N, step_function);
  const DistanceFunction d({-kPi / 2, kPi / 2});
  const AdaptiveMollifier m(p);
  for (double x : {-2.5, -1.0, 0.0, 0.7, 2.8}) {
    EXPECT_NEAR(m(x, d), step_function(x), 1e-3) << x;
    // partial sum alone is much worse near the edges
  }
  EXPECT_LT(std::abs(m(-1.2, d) - 1.0), std::abs(p.evaluate(-1.2) - 1.0));
}

TEST(Mollifier, ConstantsArePreserved) {
  const auto p = sample(32, [](double) { return 2.5; });
  const DistanceFunction d({});
  for (double x : {-3.0, 0.0, 1.1}) EXPECT_NEAR(adaptive_mollify(p, d, x), 2.5, 1e-12);
}

TEST(AdaptiveFilter, ProfileDegreeAndRecovery) {
  EXPECT_EQ(adaptive_filter_profile(1.0, 4, 8), 0.0);
  EXPECT_EQ(adaptive_filter_profile(0.0, 4, 8), 1.0);
  EXPECT_EQ(adaptive_filter_degree(1e-4, 64, {}), 2u);
  EXPECT_EQ(adaptive_filter_degree(1.0, 64, {}), 8u);  // round(64^(1/2))

  const auto p = sample(64, step_function);
  const DistanceFunction d({-kPi / 2, kPi / 2});
  EXPECT_NEAR(adaptive_filter(p, d, 0.0), 1.0, 1e-3);
  EXPECT_NEAR(adaptive_filter(p, d, 2.8), 0.0, 1e-3);
  EXPECT_THROW(adaptive_filter(p, d, kPi / 2), std::invalid_argument);
}
