#include "centralkit/flux_models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "centralkit/errors.hpp"

namespace centralkit {

std::vector<double> FluxModel::flux(std::span<const double> u) const {
  std::vector<double> out(components());
  flux(u, out);
  return out;
}

double FluxModel::max_speed(std::span<const double> u) const {
  const WaveSpeeds s = speeds(u);
  return std::max(std::abs(s.min), std::abs(s.max));
}

namespace {

class Burgers final : public FluxModel {
 public:
  std::size_t components() const override { return 1; }
  std::string_view name() const override { return "burgers"; }
  void flux(std::span<const double> u, std::span<double> out) const override {
    out[0] = 0.5 * u[0] * u[0];
  }
  WaveSpeeds speeds(std::span<const double> u) const override { return {u[0], u[0]}; }
};

class LinearAdvection final : public FluxModel {
 public:
  explicit LinearAdvection(double a) : a_(a) {}
  std::size_t components() const override { return 1; }
  std::string_view name() const override { return "advection"; }
  void flux(std::span<const double> u, std::span<double> out) const override {
    out[0] = a_ * u[0];
  }
  WaveSpeeds speeds(std::span<const double>) const override { return {a_, a_}; }

 private:
  double a_;
};

class Euler1D final : public FluxModel {
 public:
  explicit Euler1D(double gamma) : gamma_(gamma) {}
  std::size_t components() const override { return 3; }
  std::string_view name() const override { return "euler"; }

  void flux(std::span<const double> u, std::span<double> out) const override {
    const double rho = u[0];
    const double p = admissible_pressure(u);
    const double vel = u[1] / rho;
    out[0] = u[1];
    out[1] = u[1] * vel + p;
    out[2] = vel * (u[2] + p);
  }

  WaveSpeeds speeds(std::span<const double> u) const override {
    const double p = admissible_pressure(u);
    const double vel = u[1] / u[0];
    const double c = std::sqrt(gamma_ * p / u[0]);
    return {vel - c, vel + c};
  }

 private:
  double admissible_pressure(std::span<const double> u) const {
    const double rho = u[0];
    if (!(rho > 0.0)) {
      std::ostringstream msg;
      msg << "euler: nonpositive density rho = " << rho;
      throw AdmissibilityError(msg.str());
    }
    const double p = euler_pressure(u, gamma_);
    if (!(p > 0.0)) {
      std::ostringstream msg;
      msg << "euler: nonpositive pressure p = " << p << " (rho = " << rho << ")";
      throw AdmissibilityError(msg.str());
    }
    return p;
  }

  double gamma_;
};

}  // namespace

FluxModelPtr burgers() { return std::make_shared<Burgers>(); }

FluxModelPtr linear_advection(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("advection speed must be finite");
  return std::make_shared<LinearAdvection>(a);
}

FluxModelPtr euler_1d(double gamma) {
  if (!(gamma > 1.0)) throw std::invalid_argument("euler: gamma must exceed 1");
  return std::make_shared<Euler1D>(gamma);
}

std::array<double, 3> euler_conserved(double rho, double u, double p, double gamma) {
  return {rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u * u};
}

double euler_pressure(std::span<const double> u, double gamma) {
  return (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

DiffusionModel saturating_diffusion() {
  return {"saturating", [](double s) { return s / std::sqrt(1.0 + s * s); }, 1.0};
}

ModelSpec make_model(std::string_view name, double advection_speed, double gamma) {
  if (name == "burgers") return {burgers(), std::nullopt};
  if (name == "advection") return {linear_advection(advection_speed), std::nullopt};
  if (name == "euler") return {euler_1d(gamma), std::nullopt};
  if (name == "burgers_diffusion") return {burgers(), saturating_diffusion()};
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected burgers|advection|euler|burgers_diffusion)");
}

}  // namespace centralkit
