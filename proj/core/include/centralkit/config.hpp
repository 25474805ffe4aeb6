#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace centralkit {

enum class Subcommand { Solve, DetectEdges, Mollify, Convergence, Battery };
enum class Method { NT, KT, SV, Galerkin };
enum class InitialData { Sine, Step, EdgeTest, Riemann, Sod };

/// Raised for unknown keys, malformed values and constraint violations.
/// `line` is the 1-based line in the config text, 0 for --override values.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::Solve;
  std::string model = "burgers";  ///< burgers | advection | euler | burgers_diffusion
  Method method = Method::NT;
  InitialData initial = InitialData::Sine;

  // finite-volume runs
  std::size_t n_cells = 400;
  std::string boundary = "periodic";  ///< periodic | zero_gradient
  double x_min = -3.141592653589793;
  double x_max = 3.141592653589793;
  std::optional<double> cfl;  ///< defaults to 0.45 for NT, 0.9 for KT
  double limiter_theta = 1.0;
  bool first_order = false;
  int rk_order = 2;

  // spectral runs
  std::size_t modes = 128;
  std::size_t sv_s = 1;
  double sv_beta = 1.0;
  std::string sv_profile = "sharp";  ///< sharp | ramp
  bool sv_integrating_factor = false;
  double sv_c_advective = 1.0;
  double sv_c_viscous = 0.5;

  // problem data
  double t_final = 1.0;
  std::vector<double> output_times;  ///< t_final is always written
  double sine_a = 0.0;
  double sine_b = 1.0;
  double u_left = 1.0;
  double u_right = 0.0;
  double advection_speed = 1.0;
  double gamma = 1.4;

  // post-processing
  double edge_threshold = 0.1;
  double exp_beta = 1.0;
  double mollifier_beta = 8.0;
  double mollifier_c_p = 0.15;
  std::size_t sample_points = 1024;

  // convergence studies
  std::vector<std::size_t> resolutions{64, 128, 256, 512};
  double exclusion_cells = 5.0;

  /// Line on which each key was set, for diagnostics.
  std::map<std::string, std::size_t> origin;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown keys, bad values
/// and violated constraints raise ConfigError naming the line.
RunConfig parse_config(std::string_view text);

/// parse_config without the final cross-field validation, for callers that
/// apply overrides first.
RunConfig read_config(std::string_view text);

/// Applies one "key=value" override on top of an existing config.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Cross-field checks; parse_config calls this after reading every line.
void validate(const RunConfig& cfg);

/// CFL number in effect for the configured method.
double effective_cfl(const RunConfig& cfg);

/// Keys, defaults and meanings, one per line, for --help.
std::string config_reference();

Subcommand parse_subcommand(std::string_view name);
std::string_view to_string(Method m);

}  // namespace centralkit
