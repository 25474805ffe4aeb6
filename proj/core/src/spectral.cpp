#include "centralkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "centralkit/reconstruct.hpp"

namespace centralkit {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> twiddles(std::size_t M, double sign) {
  std::vector<Complex> tw(M);
  for (std::size_t r = 0; r < M; ++r) {
    const double angle = sign * 2.0 * kPi * static_cast<double>(r) / static_cast<double>(M);
    tw[r] = {std::cos(angle), std::sin(angle)};
  }
  return tw;
}

std::size_t mod_index(long k, std::size_t M) {
  long r = k % static_cast<long>(M);
  if (r < 0) r += static_cast<long>(M);
  return static_cast<std::size_t>(r);
}

/// Per-mode detector weights w_k, k = 0..N, such that the detector equals
/// Re sum_k w_|k| (ik) c_k e^{ikx} / k  (the factor k is folded in).
std::vector<double> detector_weights(const FourierProjection& p,
                                     const ConcentrationKernel& kernel, bool calibrate) {
  const std::size_t N = p.N;
  const double h = 2.0 * kPi / static_cast<double>(2 * N + 1);
  std::vector<double> w(N + 1, 0.0);
  for (std::size_t k = 1; k <= N; ++k) {
    const double kd = static_cast<double>(k);
    double wk = kPi / static_cast<double>(N) * kernel(kd / static_cast<double>(N)) * kd;
    if (calibrate && p.interpolated) {
      const double half = 0.5 * kd * h;
      wk *= std::sin(half) / half;
    }
    w[k] = wk;
  }
  return w;
}

double evaluate_detector(const FourierProjection& p, const std::vector<double>& w, double x) {
  // Re sum_{k=1}^N w_k i (c_k e^{ikx} - c_{-k} e^{-ikx})
  double acc = 0.0;
  const Complex step{std::cos(x), std::sin(x)};
  Complex e{1.0, 0.0};
  for (std::size_t k = 1; k <= p.N; ++k) {
    e *= step;
    const long kl = static_cast<long>(k);
    const Complex term = p[kl] * e - p[-kl] * std::conj(e);
    acc += w[k] * (-term.imag());
  }
  return acc;
}

}  // namespace

FourierProjection::FourierProjection(std::size_t n, std::vector<Complex> c, bool from_samples)
    : N(n), coeffs(std::move(c)), interpolated(from_samples) {
  if (coeffs.size() != 2 * N + 1) {
    throw std::invalid_argument("FourierProjection: expected " + std::to_string(2 * N + 1) +
                                " coefficients, got " + std::to_string(coeffs.size()));
  }
}

FourierProjection FourierProjection::zero(std::size_t n) {
  return FourierProjection(n, std::vector<Complex>(2 * n + 1), false);
}

double FourierProjection::evaluate(double x) const {
  Complex acc = (*this)[0];
  const Complex step{std::cos(x), std::sin(x)};
  Complex e{1.0, 0.0};
  for (std::size_t k = 1; k <= N; ++k) {
    e *= step;
    const long kl = static_cast<long>(k);
    acc += (*this)[kl] * e + (*this)[-kl] * std::conj(e);
  }
  return acc.real();
}

double FourierProjection::conjugate_asymmetry() const {
  double worst = 0.0;
  for (long k = 0; k <= static_cast<long>(N); ++k) {
    worst = std::max(worst, std::abs((*this)[-k] - std::conj((*this)[k])));
  }
  return worst;
}

double FourierProjection::l2_norm() const {
  double acc = 0.0;
  for (const Complex& c : coeffs) acc += std::norm(c);
  return std::sqrt(acc);
}

std::vector<double> equispaced_points(std::size_t M) {
  std::vector<double> x(M);
  for (std::size_t j = 0; j < M; ++j) {
    x[j] = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
  }
  return x;
}

FourierProjection project(std::span<const double> samples) {
  const std::size_t M = samples.size();
  if (M < 3 || M % 2 == 0) {
    throw std::invalid_argument("project: need an odd number (2N+1 >= 3) of samples, got " +
                                std::to_string(M));
  }
  const std::size_t N = (M - 1) / 2;
  const std::vector<Complex> tw = twiddles(M, -1.0);
  std::vector<Complex> c(M);
  for (long k = -static_cast<long>(N); k <= static_cast<long>(N); ++k) {
    const std::size_t km = mod_index(k, M);
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < M; ++j) acc += samples[j] * tw[(km * j) % M];
    // x_j = -pi + 2 pi j / M contributes the factor e^{ik pi} = (-1)^k
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(k + static_cast<long>(N))] = sign * acc / static_cast<double>(M);
  }
  return FourierProjection(N, std::move(c), true);
}

std::vector<double> synthesize(const FourierProjection& p, std::size_t M) {
  if (M < 2 * p.N + 1) throw std::invalid_argument("synthesize: too few points");
  const std::vector<Complex> tw = twiddles(M, +1.0);
  std::vector<double> out(M);
  for (std::size_t j = 0; j < M; ++j) {
    Complex acc = p[0];
    for (long k = 1; k <= static_cast<long>(p.N); ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const Complex e = tw[(mod_index(k, M) * j) % M];
      acc += sign * (p[k] * e + p[-k] * std::conj(e));
    }
    out[j] = acc.real();
  }
  return out;
}

double wrap_angle(double x) {
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  return y - kPi;
}

ConcentrationKernel ConcentrationKernel::fejer() { return {Kind::Fejer, 0.0, 1.0}; }

ConcentrationKernel ConcentrationKernel::exponential(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("exponential kernel: beta must be positive");
  // The integrand is flat to all orders at both ends, so the trapezoid rule
  // converges spectrally.
  constexpr int kPanels = 20000;
  double mass = 0.0;
  for (int i = 1; i < kPanels; ++i) {
    const double xi = static_cast<double>(i) / kPanels;
    mass += std::exp(beta / (xi * (xi - 1.0)));
  }
  mass /= kPanels;
  return {Kind::Exponential, beta, 1.0 / mass};
}

double ConcentrationKernel::operator()(double xi) const {
  if (kind_ == Kind::Fejer) return 1.0;
  if (xi <= 0.0 || xi >= 1.0) return 0.0;
  return norm_ * std::exp(beta_ / (xi * (xi - 1.0)));
}

double concentration_detect(const FourierProjection& p, const ConcentrationKernel& kernel,
                            double x) {
  return evaluate_detector(p, detector_weights(p, kernel, false), x);
}

double combined_detector(const FourierProjection& p, const ConcentrationKernel& fejer,
                         const ConcentrationKernel& exponential, double x) {
  return minmod(concentration_detect(p, fejer, x), concentration_detect(p, exponential, x));
}

std::vector<double> combined_detector_on_grid(const FourierProjection& p,
                                              const EdgeDetectorOptions& opt) {
  const std::vector<double> w1 = detector_weights(p, ConcentrationKernel::fejer(), false);
  const std::vector<double> we =
      detector_weights(p, ConcentrationKernel::exponential(opt.exp_beta), false);
  const std::vector<double> x = collocation_points(p.N);
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = minmod(evaluate_detector(p, w1, x[j]), evaluate_detector(p, we, x[j]));
  }
  return out;
}

EdgeReport minmod_edge_detect(const FourierProjection& p, const EdgeDetectorOptions& opt) {
  if (!(opt.threshold > 0.0)) throw std::invalid_argument("edge detection: threshold must be > 0");
  EdgeReport report;
  report.threshold = opt.threshold;
  report.N_used = p.N;

  const std::vector<double> combined = combined_detector_on_grid(p, opt);
  const std::vector<double> x = collocation_points(p.N);
  const std::size_t M = x.size();
  const double spacing = 2.0 * kPi / static_cast<double>(M);

  const ConcentrationKernel exp_kernel = ConcentrationKernel::exponential(opt.exp_beta);
  const std::vector<double> w1 = detector_weights(p, ConcentrationKernel::fejer(), true);
  const std::vector<double> we = detector_weights(p, exp_kernel, true);
  auto calibrated = [&](double at) {
    return minmod(evaluate_detector(p, w1, at), evaluate_detector(p, we, at));
  };

  const std::size_t sub = std::max<std::size_t>(1, opt.refine_subdivisions);
  for (std::size_t j = 0; j < M; ++j) {
    const double here = std::abs(combined[j]);
    const double left = std::abs(combined[(j + M - 1) % M]);
    const double right = std::abs(combined[(j + 1) % M]);
    if (!(here > opt.threshold) || here < left || !(here > right)) continue;

    double best_x = x[j];
    double best_v = calibrated(x[j]);
    for (std::size_t s = 1; s < 2 * sub; ++s) {
      const double at = x[j] - spacing + spacing * static_cast<double>(s) / static_cast<double>(sub);
      const double v = calibrated(at);
      if (std::abs(v) > std::abs(best_v)) {
        best_v = v;
        best_x = at;
      }
    }
    if (std::abs(best_v) < opt.threshold) continue;
    report.edges.push_back({wrap_angle(best_x), best_v});
  }

  std::sort(report.edges.begin(), report.edges.end(),
            [](const Edge& a, const Edge& b) { return a.location < b.location; });
  // Refinement may pull two neighbouring peaks together; keep the stronger.
  const double min_gap = kPi / static_cast<double>(p.N);
  std::vector<Edge> merged;
  for (const Edge& e : report.edges) {
    if (!merged.empty() && std::abs(wrap_angle(e.location - merged.back().location)) < min_gap) {
      if (std::abs(e.amplitude) > std::abs(merged.back().amplitude)) merged.back() = e;
      continue;
    }
    merged.push_back(e);
  }
  if (merged.size() > 1 &&
      std::abs(wrap_angle(merged.front().location - merged.back().location)) < min_gap) {
    if (std::abs(merged.back().amplitude) > std::abs(merged.front().amplitude)) {
      merged.front() = merged.back();
    }
    merged.pop_back();
    std::sort(merged.begin(), merged.end(),
              [](const Edge& a, const Edge& b) { return a.location < b.location; });
  }
  report.edges = std::move(merged);
  return report;
}

EdgeReport minmod_edge_detect(const FourierProjection& p, double threshold) {
  EdgeDetectorOptions opt;
  opt.threshold = threshold;
  return minmod_edge_detect(p, opt);
}

DistanceFunction::DistanceFunction(std::vector<double> edges, double cap)
    : edges_(std::move(edges)), cap_(cap) {
  if (!(cap > 0.0)) throw std::invalid_argument("distance cap must be positive");
}

double DistanceFunction::operator()(double x) const {
  double d = cap_;
  for (double e : edges_) d = std::min(d, std::abs(wrap_angle(x - e)));
  return d;
}

DistanceFunction distance_function(const EdgeReport& report, double cap) {
  std::vector<double> locations;
  locations.reserve(report.edges.size());
  for (const Edge& e : report.edges) locations.push_back(e.location);
  return DistanceFunction(std::move(locations), cap);
}

double mollifier_bump(double y, double beta) {
  const double y2 = y * y;
  if (y2 >= 1.0) return 0.0;
  return std::exp(beta * y2 / (y2 - 1.0));
}

double dirichlet_kernel(double y, std::size_t p) {
  const double s = std::sin(0.5 * kPi * y);
  if (std::abs(s) > 1e-8) {
    return std::sin((static_cast<double>(p) + 0.5) * kPi * y) / (2.0 * s);
  }
  double acc = 0.5;
  for (std::size_t k = 1; k <= p; ++k) acc += std::cos(static_cast<double>(k) * kPi * y);
  return acc;
}

AdaptiveMollifier::AdaptiveMollifier(const FourierProjection& p, MollifierOptions opt)
    : N_(p.N), opt_(opt) {
  if (opt_.oversample == 0) throw std::invalid_argument("mollifier: oversample must be >= 1");
  const std::size_t M = opt_.oversample * (2 * p.N + 1);
  nodes_ = equispaced_points(M);
  values_ = synthesize(p, M);
}

std::size_t AdaptiveMollifier::degree(double d) const {
  const double p = std::floor(opt_.c_p * d * static_cast<double>(N_));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, p)));
}

double AdaptiveMollifier::operator()(double x, double d) const {
  if (!(d > 0.0)) {
    throw std::invalid_argument("adaptive mollifier: d(x) = 0, cannot mollify at an edge");
  }
  const double theta = d;
  const std::size_t p = degree(d);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double z = wrap_angle(x - nodes_[j]) / theta;
    if (std::abs(z) >= 1.0) continue;
    const double w = mollifier_bump(z, opt_.beta) * dirichlet_kernel(z, p);
    num += w * values_[j];
    den += w;
  }
  return num / den;
}

double adaptive_mollify(const FourierProjection& p, const DistanceFunction& d, double x,
                        const MollifierOptions& opt) {
  return AdaptiveMollifier(p, opt)(x, d);
}

double adaptive_filter_profile(double xi, double p, double beta) {
  if (xi >= 1.0) return 0.0;
  return std::exp(beta * std::pow(xi, p) / (xi * xi - 1.0));
}

std::size_t adaptive_filter_degree(double d, std::size_t N, const FilterOptions& opt) {
  const double base = opt.c_f * d * static_cast<double>(N);
  const double p = std::round(std::pow(base, opt.r / (opt.r + 1.0)));
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::max(0.0, p)));
}

double adaptive_filter(const FourierProjection& p, const DistanceFunction& d, double x,
                       const FilterOptions& opt) {
  const double dx = d(x);
  if (!(dx > 0.0)) throw std::invalid_argument("adaptive filter: d(x) = 0 at an edge");
  const double degree = static_cast<double>(adaptive_filter_degree(dx, p.N, opt));
  Complex acc = p[0];
  const Complex step{std::cos(x), std::sin(x)};
  Complex e{1.0, 0.0};
  for (std::size_t k = 1; k <= p.N; ++k) {
    e *= step;
    const double sigma = adaptive_filter_profile(
        static_cast<double>(k) / static_cast<double>(p.N), degree, opt.beta);
    const long kl = static_cast<long>(k);
    acc += sigma * (p[kl] * e + p[-kl] * std::conj(e));
  }
  return acc.real();
}

}  // namespace centralkit
