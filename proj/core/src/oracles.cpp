#include "centralkit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "centralkit/reconstruct.hpp"

namespace centralkit {

namespace {

constexpr double kPi = std::numbers::pi;

/// Root of an increasing g on [lo, hi] with g(lo) <= 0 <= g(hi).
template <typename G, typename DG>
double safeguarded_newton(G&& g, DG&& dg, double lo, double hi, double tol) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gx = g(x);
    if (std::abs(gx) <= tol) return x;
    if (gx > 0.0) hi = x; else lo = x;
    const double slope = dg(x);
    double next = slope > 0.0 ? x - gx / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

double wrap_period(double x, double period) {
  double r = std::fmod(x + 0.5 * period, period);
  if (r < 0.0) r += period;
  return r - 0.5 * period;
}

}  // namespace

SmoothProfile sine_profile(double a, double b) {
  return {[a, b](double x) { return a + b * std::sin(x); },
          [b](double x) { return b * std::cos(x); },
          a - std::abs(b), a + std::abs(b), -std::abs(b)};
}

double breakdown_time(const SmoothProfile& profile) {
  if (profile.min_slope >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / profile.min_slope;
}

double burgers_characteristics(const SmoothProfile& profile, double x, double t) {
  if (t < 0.0) throw std::invalid_argument("burgers_characteristics: negative time");
  const double tb = breakdown_time(profile);
  if (t >= tb) {
    std::ostringstream msg;
    msg << "burgers_characteristics: t = " << t << " is past breakdown at t* = " << tb;
    throw BreakdownError(msg.str());
  }
  if (t == 0.0) return profile.u0(x);
  // foot of the characteristic: xi + t u0(xi) = x, increasing in xi before breakdown
  auto g = [&](double xi) { return xi + t * profile.u0(xi) - x; };
  auto dg = [&](double xi) { return 1.0 + t * profile.du0(xi); };
  const double lo = x - t * profile.u_max;
  const double hi = x - t * profile.u_min;
  const double xi = safeguarded_newton(g, dg, lo, hi, 1e-14 * std::max(1.0, std::abs(x)));
  return profile.u0(xi);
}

double burgers_riemann(double u_left, double u_right, double x, double t) {
  if (t <= 0.0) return x < 0.0 ? u_left : (x > 0.0 ? u_right : 0.5 * (u_left + u_right));
  const double xi = x / t;
  if (u_left > u_right) {
    const double s = 0.5 * (u_left + u_right);
    if (xi < s) return u_left;
    if (xi > s) return u_right;
    return s;
  }
  if (xi <= u_left) return u_left;
  if (xi >= u_right) return u_right;
  return xi;
}

// ---------------------------------------------------------------------------

double ExactSolution::shock_distance(double x, double t) const {
  double d = std::numeric_limits<double>::infinity();
  const auto per = period();
  for (double s : shock_locations(t)) {
    double dist = std::abs(x - s);
    if (per) {
      dist = std::fmod(dist, *per);
      dist = std::min(dist, *per - dist);
    }
    d = std::min(d, dist);
  }
  return d;
}

namespace {

/// Composite Gauss quadrature of g(x, u(x, t)) over [a, b], split at shocks.
template <typename G>
double piecewise_gauss(const ExactSolution& exact, double a, double b, double t, G&& g) {
  std::vector<double> cuts{a, b};
  const auto per = exact.period();
  for (double s : exact.shock_locations(t)) {
    if (per) {
      // every periodic image that falls inside (a, b)
      const double k = std::ceil((a - s) / *per);
      for (double img = s + k * *per; img < b; img += *per) {
        if (img > a) cuts.push_back(img);
      }
    } else if (s > a && s < b) {
      cuts.push_back(s);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  constexpr int kSub = 4;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = (cuts[i + 1] - cuts[i]) / kSub;
    for (int sub = 0; sub < kSub; ++sub) {
      const double c = cuts[i] + (sub + 0.5) * w;
      for (int q = 0; q < 5; ++q) {
        const double x = c + 0.5 * w * detail::kGaussNodes[q];
        acc += 0.5 * w * detail::kGaussWeights[q] * g(x, exact.evaluate(x, t));
      }
    }
  }
  return acc;
}

}  // namespace

double ExactSolution::average(double a, double b, double t) const {
  return piecewise_gauss(*this, a, b, t, [](double, double u) { return u; }) / (b - a);
}

CellAverages ExactSolution::cell_averages(const Grid1D& grid, double t) const {
  CellAverages out(grid, 1);
  for (std::size_t nu = 0; nu < grid.n_cells(); ++nu) {
    const double c = grid.center(nu);
    out(nu, 0) = average(c - 0.5 * grid.h(), c + 0.5 * grid.h(), t);
  }
  return out;
}

// ---------------------------------------------------------------------------

BurgersSineSolution::BurgersSineSolution(double a, double b) : a_(a), b_(b) {}

double BurgersSineSolution::evaluate(double x, double t) const {
  if (b_ == 0.0) return a_;
  // Galilean frame moving with a; for b < 0 shift by pi so the amplitude is positive
  double y = x - a_ * t;
  const double bb = std::abs(b_);
  if (b_ < 0.0) y += kPi;
  double z = wrap_period(y, 2.0 * kPi);
  const double sign = z < 0.0 ? -1.0 : 1.0;
  z = std::abs(z);
  if (z == 0.0 || z >= kPi) return a_;
  if (t == 0.0) return a_ + sign * bb * std::sin(z);

  // w = bb sin(xi) with xi + bb t sin(xi) = z on the monotone branch [0, xi_c]
  const double bt = bb * t;
  const double xi_c = bt > 1.0 ? std::acos(-1.0 / bt) : kPi;
  auto g = [&](double xi) { return xi + bt * std::sin(xi) - z; };
  auto dg = [&](double xi) { return 1.0 + bt * std::cos(xi); };
  const double xi = safeguarded_newton(g, dg, 0.0, xi_c, 1e-15);
  return a_ + sign * bb * std::sin(xi);
}

std::vector<double> BurgersSineSolution::shock_locations(double t) const {
  if (b_ == 0.0 || t < 1.0 / std::abs(b_)) return {};
  const double base = b_ > 0.0 ? kPi : 0.0;
  return {wrap_period(base + a_ * t, 2.0 * kPi)};
}

std::optional<double> BurgersSineSolution::valid_until() const {
  if (b_ == 0.0) return std::nullopt;
  return 1.0 / std::abs(b_);
}

std::optional<double> BurgersSineSolution::period() const { return 2.0 * kPi; }

BurgersRiemannSolution::BurgersRiemannSolution(double u_left, double u_right, double x0)
    : ul_(u_left), ur_(u_right), x0_(x0) {}

double BurgersRiemannSolution::evaluate(double x, double t) const {
  return burgers_riemann(ul_, ur_, x - x0_, t);
}

std::vector<double> BurgersRiemannSolution::shock_locations(double t) const {
  if (ul_ > ur_) return {x0_ + 0.5 * (ul_ + ur_) * t};
  return {};
}

// ---------------------------------------------------------------------------

namespace {

struct NormAccumulator {
  double h;
  double exclusion;
  double d_cap;
  ErrorNorms out;

  void add(double err, double d) {
    out.l1 += err * h;
    if (d >= exclusion) {
      out.l1_loc += err * h;
      out.linf_smooth = std::max(out.linf_smooth, err);
      out.pointwise_ratio = std::max(out.pointwise_ratio, err * std::min(d, d_cap) / h);
    }
  }
};

}  // namespace

ErrorNorms error_norms(const CellAverages& numeric, const ExactSolution& exact, double t,
                       double exclusion) {
  if (exclusion < 0.0) throw std::invalid_argument("error_norms: negative exclusion radius");
  const Grid1D& grid = numeric.grid();
  const PiecewiseLinear r = reconstruct_linear(numeric);
  const double h = grid.h();
  const double d_cap = 0.5 * grid.length();
  ErrorNorms out;
  for (std::size_t nu = 0; nu < grid.n_cells(); ++nu) {
    const double c = grid.center(nu);
    double peak = 0.0;
    const double integral =
        piecewise_gauss(exact, c - 0.5 * h, c + 0.5 * h, t, [&](double x, double u) {
          const double e = std::abs(r.evaluate(nu, 0, x) - u);
          peak = std::max(peak, e);
          return e;
        });
    out.l1 += integral;
    const double d = exact.shock_distance(c, t);
    if (d >= exclusion) {
      out.l1_loc += integral;
      out.linf_smooth = std::max(out.linf_smooth, peak);
      out.pointwise_ratio = std::max(out.pointwise_ratio, peak * std::min(d, d_cap) / h);
    }
  }
  return out;
}

ErrorNorms error_norms(std::span<const double> x, std::span<const double> values,
                       const ExactSolution& exact, double t, double h, double exclusion) {
  if (x.size() != values.size()) throw std::invalid_argument("error_norms: size mismatch");
  if (exclusion < 0.0) throw std::invalid_argument("error_norms: negative exclusion radius");
  const double extent = h * static_cast<double>(x.size());
  NormAccumulator acc{h, exclusion, 0.5 * extent, {}};
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc.add(std::abs(values[i] - exact.evaluate(x[i], t)), exact.shock_distance(x[i], t));
  }
  return acc.out;
}

// ---------------------------------------------------------------------------

void ConvergenceTable::add(std::size_t n, const ErrorNorms& errors) {
  double order = std::numeric_limits<double>::quiet_NaN();
  if (!rows_.empty()) {
    const double prev = rows_.back().errors.l1;
    if (prev > 0.0 && errors.l1 > 0.0) order = std::log2(prev / errors.l1);
  }
  rows_.push_back({n, errors, order});
}

double ConvergenceTable::final_order() const {
  if (rows_.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return rows_.back().order;
}

void ConvergenceTable::write_csv(std::ostream& os) const {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << "n,e_l1,e_l1loc,e_linf_smooth,order\n" << std::setprecision(17);
  for (const auto& r : rows_) {
    os << r.n << ',' << r.errors.l1 << ',' << r.errors.l1_loc << ',' << r.errors.linf_smooth
       << ',' << r.order << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

ConvergenceTable convergence_study(const std::function<ErrorNorms(std::size_t)>& run,
                                   std::span<const std::size_t> resolutions,
                                   std::size_t threads) {
  if (resolutions.size() < 3) {
    throw std::invalid_argument("convergence_study: need at least three resolutions");
  }
  for (std::size_t i = 1; i < resolutions.size(); ++i) {
    if (resolutions[i] != 2 * resolutions[i - 1]) {
      throw std::invalid_argument("convergence_study: each resolution must double the previous");
    }
  }
  threads = std::max<std::size_t>(1, threads);
  std::vector<ErrorNorms> results(resolutions.size());
  for (std::size_t start = 0; start < resolutions.size(); start += threads) {
    const std::size_t stop = std::min(resolutions.size(), start + threads);
    if (threads == 1) {
      results[start] = run(resolutions[start]);
      continue;
    }
    std::vector<std::future<ErrorNorms>> batch;
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, run, resolutions[i]));
    }
    for (std::size_t i = start; i < stop; ++i) results[i] = batch[i - start].get();
  }
  ConvergenceTable table;
  for (std::size_t i = 0; i < resolutions.size(); ++i) table.add(resolutions[i], results[i]);
  return table;
}

}  // namespace centralkit
