#include "centralkit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "centralkit/central_solvers.hpp"

namespace centralkit {

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? "override: " + message
                                   : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

std::size_t to_size(std::string_view v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

template <typename T, typename Conv>
std::vector<T> to_list(std::string_view v, Conv conv) {
  std::vector<T> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    out.push_back(conv(trim(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string one_of(std::string_view v, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), v) != allowed.end()) return std::string(v);
  std::string msg = "expected one of";
  for (auto a : allowed) msg += " " + std::string(a);
  throw std::invalid_argument(msg + ", got '" + std::string(v) + "'");
}

struct Key {
  std::string_view name;
  std::string_view default_value;
  std::string_view help;
  std::function<void(RunConfig&, std::string_view)> set;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"model", "burgers", "burgers | advection | euler | burgers_diffusion",
       [](RunConfig& c, std::string_view v) {
         c.model = one_of(v, {"burgers", "advection", "euler", "burgers_diffusion"});
       }},
      {"method", "nt", "nt | kt | sv | galerkin",
       [](RunConfig& c, std::string_view v) {
         const std::string m = one_of(v, {"nt", "kt", "sv", "galerkin"});
         c.method = m == "nt" ? Method::NT : m == "kt" ? Method::KT : m == "sv" ? Method::SV : Method::Galerkin;
       }},
      {"initial", "sine", "sine | step | edge_test | riemann | sod",
       [](RunConfig& c, std::string_view v) {
         const std::string m = one_of(v, {"sine", "step", "edge_test", "riemann", "sod"});
         c.initial = m == "sine"       ? InitialData::Sine
                     : m == "step"     ? InitialData::Step
                     : m == "edge_test" ? InitialData::EdgeTest
                     : m == "riemann"  ? InitialData::Riemann
                                       : InitialData::Sod;
       }},
      {"n_cells", "400", "finite-volume cells", [](RunConfig& c, std::string_view v) { c.n_cells = to_size(v); }},
      {"boundary", "periodic", "periodic | zero_gradient",
       [](RunConfig& c, std::string_view v) { c.boundary = one_of(v, {"periodic", "zero_gradient"}); }},
      {"x_min", "-pi", "left end of the domain", [](RunConfig& c, std::string_view v) { c.x_min = to_double(v); }},
      {"x_max", "pi", "right end of the domain", [](RunConfig& c, std::string_view v) { c.x_max = to_double(v); }},
      {"cfl", "0.45 (nt), 0.9 (kt)", "Courant number; nt needs < 0.5, kt <= 1",
       [](RunConfig& c, std::string_view v) { c.cfl = to_double(v); }},
      {"limiter_theta", "1", "generalised minmod parameter in [1, 2]",
       [](RunConfig& c, std::string_view v) { c.limiter_theta = to_double(v); }},
      {"first_order", "false", "zero all slopes", [](RunConfig& c, std::string_view v) { c.first_order = to_bool(v); }},
      {"rk_order", "2", "SSP Runge-Kutta order for kt (1, 2 or 3)",
       [](RunConfig& c, std::string_view v) { c.rk_order = static_cast<int>(to_size(v)); }},
      {"N", "128", "Fourier modes (2N+1 collocation points)",
       [](RunConfig& c, std::string_view v) { c.modes = to_size(v); }},
      {"sv_s", "1", "spectral viscosity order s", [](RunConfig& c, std::string_view v) { c.sv_s = to_size(v); }},
      {"sv_beta", "1", "activation m_N = floor(beta^(1/2s) N^((2s-1)/2s))",
       [](RunConfig& c, std::string_view v) { c.sv_beta = to_double(v); }},
      {"sv_profile", "sharp", "sharp | ramp",
       [](RunConfig& c, std::string_view v) { c.sv_profile = one_of(v, {"sharp", "ramp"}); }},
      {"sv_integrating_factor", "false", "integrate the viscosity exactly",
       [](RunConfig& c, std::string_view v) { c.sv_integrating_factor = to_bool(v); }},
      {"sv_c_advective", "1", "dt <= c / (N max(1, max|v|))",
       [](RunConfig& c, std::string_view v) { c.sv_c_advective = to_double(v); }},
      {"sv_c_viscous", "0.5", "dt <= c / (N^2 max sigma)",
       [](RunConfig& c, std::string_view v) { c.sv_c_viscous = to_double(v); }},
      {"t_final", "1", "final time", [](RunConfig& c, std::string_view v) { c.t_final = to_double(v); }},
      {"output_times", "", "comma-separated extra output times",
       [](RunConfig& c, std::string_view v) { c.output_times = to_list<double>(v, to_double); }},
      {"sine_a", "0", "u0 = a + b sin x", [](RunConfig& c, std::string_view v) { c.sine_a = to_double(v); }},
      {"sine_b", "1", "u0 = a + b sin x", [](RunConfig& c, std::string_view v) { c.sine_b = to_double(v); }},
      {"u_left", "1", "Riemann left state", [](RunConfig& c, std::string_view v) { c.u_left = to_double(v); }},
      {"u_right", "0", "Riemann right state", [](RunConfig& c, std::string_view v) { c.u_right = to_double(v); }},
      {"advection_speed", "1", "a in f(u) = a u",
       [](RunConfig& c, std::string_view v) { c.advection_speed = to_double(v); }},
      {"gamma", "1.4", "ratio of specific heats", [](RunConfig& c, std::string_view v) { c.gamma = to_double(v); }},
      {"edge_threshold", "0.1", "minimum |jump| reported as an edge",
       [](RunConfig& c, std::string_view v) { c.edge_threshold = to_double(v); }},
      {"exp_beta", "1", "exponential concentration factor parameter",
       [](RunConfig& c, std::string_view v) { c.exp_beta = to_double(v); }},
      {"mollifier_beta", "8", "bump rho(y) = exp(beta y^2 / (y^2 - 1))",
       [](RunConfig& c, std::string_view v) { c.mollifier_beta = to_double(v); }},
      {"mollifier_c_p", "0.15", "Dirichlet degree p = floor(c_p d N)",
       [](RunConfig& c, std::string_view v) { c.mollifier_c_p = to_double(v); }},
      {"sample_points", "1024", "evaluation points for mollify output",
       [](RunConfig& c, std::string_view v) { c.sample_points = to_size(v); }},
      {"resolutions", "64,128,256,512", "convergence resolutions, each double the last",
       [](RunConfig& c, std::string_view v) { c.resolutions = to_list<std::size_t>(v, to_size); }},
      {"exclusion_cells", "5", "shock exclusion radius in cells for local norms",
       [](RunConfig& c, std::string_view v) { c.exclusion_cells = to_double(v); }},
  };
  return table;
}

void assign(RunConfig& cfg, std::string_view key, std::string_view value, std::size_t line) {
  const auto& table = keys();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == key; });
  if (it == table.end()) throw ConfigError(line, "unknown key '" + std::string(key) + "'");
  if (value.empty()) throw ConfigError(line, "missing value for '" + std::string(key) + "'");
  try {
    it->set(cfg, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line, std::string(key) + ": " + e.what());
  }
  cfg.origin[std::string(key)] = line;
}

std::size_t line_of(const RunConfig& cfg, std::string_view key) {
  const auto it = cfg.origin.find(std::string(key));
  return it == cfg.origin.end() ? 0 : it->second;
}

void require(bool ok, const RunConfig& cfg, std::string_view key, const std::string& msg) {
  if (!ok) throw ConfigError(line_of(cfg, key), msg);
}

}  // namespace

double effective_cfl(const RunConfig& cfg) {
  if (cfg.cfl) return *cfg.cfl;
  return cfg.method == Method::KT ? kKtDefaultCfl : kNtDefaultCfl;
}

void validate(const RunConfig& cfg) {
  const bool spectral = cfg.method == Method::SV || cfg.method == Method::Galerkin;
  const double cfl = effective_cfl(cfg);
  if (cfg.method == Method::NT) {
    require(cfl > 0.0 && cfl < kNtCflLimit, cfg, "cfl", "NT requires 0 < cfl < 0.5");
    require(!cfg.model.ends_with("_diffusion"), cfg, "model", "NT has no diffusion term; use method = kt");
  }
  if (cfg.method == Method::KT) {
    require(cfl > 0.0 && cfl <= kKtCflLimit, cfg, "cfl", "KT requires 0 < cfl <= 1");
    require(cfg.rk_order >= 1 && cfg.rk_order <= 3, cfg, "rk_order", "rk_order must be 1, 2 or 3");
  }
  require(cfg.limiter_theta >= 1.0 && cfg.limiter_theta <= 2.0, cfg, "limiter_theta",
          "limiter_theta must lie in [1, 2]");
  require(cfg.x_max > cfg.x_min, cfg, "x_max", "x_max must exceed x_min");
  require(cfg.t_final >= 0.0, cfg, "t_final", "t_final must be non-negative");
  for (double t : cfg.output_times) {
    require(t >= 0.0 && t <= cfg.t_final, cfg, "output_times", "output times must lie in [0, t_final]");
  }
  const std::size_t min_cells = cfg.boundary == "periodic" ? 3 : 2;
  require(cfg.n_cells >= min_cells, cfg, "n_cells", "n_cells too small for the boundary rule");
  require(cfg.gamma > 1.0, cfg, "gamma", "gamma must exceed 1");

  const bool euler = cfg.model == "euler";
  require(euler == (cfg.initial == InitialData::Sod), cfg, euler ? "initial" : "model",
          "the sod initial data goes with model = euler and vice versa");

  if (spectral) {
    require(cfg.model == "burgers", cfg, "model", "spectral methods solve model = burgers only");
    require(cfg.modes >= 1, cfg, "N", "N must be positive");
    require(cfg.initial != InitialData::Riemann && cfg.initial != InitialData::Sod, cfg, "initial",
            "spectral methods need periodic initial data (sine, step, edge_test)");
    require(cfg.sv_s >= 1, cfg, "sv_s", "sv_s must be positive");
    require(cfg.sv_beta > 0.0, cfg, "sv_beta", "sv_beta must be positive");
    require(cfg.sv_c_advective > 0.0 && cfg.sv_c_viscous > 0.0, cfg, "sv_c_advective",
            "time-step constants must be positive");
  }

  require(cfg.edge_threshold > 0.0, cfg, "edge_threshold", "edge_threshold must be positive");
  require(cfg.exp_beta > 0.0, cfg, "exp_beta", "exp_beta must be positive");
  require(cfg.mollifier_beta > 0.0 && cfg.mollifier_c_p > 0.0, cfg, "mollifier_c_p",
          "mollifier parameters must be positive");
  require(cfg.sample_points >= 2, cfg, "sample_points", "sample_points must be at least 2");

  if (cfg.subcommand == Subcommand::DetectEdges || cfg.subcommand == Subcommand::Mollify) {
    require(cfg.initial == InitialData::Sine || cfg.initial == InitialData::Step ||
                cfg.initial == InitialData::EdgeTest,
            cfg, "initial", "edge detection and mollification need sine, step or edge_test data");
    require(cfg.modes >= 1, cfg, "N", "N must be positive");
  }
  if (cfg.subcommand == Subcommand::Convergence) {
    require(cfg.resolutions.size() >= 3, cfg, "resolutions", "need at least three resolutions");
    for (std::size_t i = 1; i < cfg.resolutions.size(); ++i) {
      require(cfg.resolutions[i] == 2 * cfg.resolutions[i - 1], cfg, "resolutions",
              "each resolution must double the previous");
    }
    require(!spectral, cfg, "method", "convergence studies support nt and kt");
    require(cfg.initial == InitialData::Sine || cfg.initial == InitialData::Riemann, cfg, "initial",
            "convergence studies need an exact solution (sine or riemann)");
    require(cfg.model == "burgers", cfg, "model", "convergence studies use model = burgers");
  }
}

RunConfig read_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    ++line_no;
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
      assign(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg = read_config(text);
  validate(cfg);
  return cfg;
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError(0, "expected key=value, got '" + std::string(assignment) + "'");
  assign(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), 0);
}

std::string config_reference() {
  std::ostringstream os;
  for (const auto& k : keys()) {
    os << "  " << k.name << " = " << (k.default_value.empty() ? "(none)" : k.default_value) << "\n      "
       << k.help << "\n";
  }
  return os.str();
}

Subcommand parse_subcommand(std::string_view name) {
  if (name == "solve") return Subcommand::Solve;
  if (name == "detect-edges") return Subcommand::DetectEdges;
  if (name == "mollify") return Subcommand::Mollify;
  if (name == "convergence") return Subcommand::Convergence;
  if (name == "battery") return Subcommand::Battery;
  throw std::invalid_argument("unknown subcommand '" + std::string(name) + "'");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::NT: return "nt";
    case Method::KT: return "kt";
    case Method::SV: return "sv";
    case Method::Galerkin: return "galerkin";
  }
  return "?";
}

}  // namespace centralkit
