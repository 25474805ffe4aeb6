#include "centralkit_cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "centralkit/battery.hpp"
#include "centralkit/central_solvers.hpp"
#include "centralkit/flux_models.hpp"
#include "centralkit/oracles.hpp"
#include "centralkit/problems.hpp"
#include "centralkit/spectral.hpp"
#include "centralkit/sv_solver.hpp"

namespace centralkit::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_csv(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << std::setprecision(17);
  return os;
}

void write_script(const fs::path& path, const std::string& body) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "set datafile separator ','\nset key autotitle columnhead\nset grid\n" << body;
}

std::vector<double> output_schedule(const RunConfig& cfg) {
  std::vector<double> times = cfg.output_times;
  times.push_back(cfg.t_final);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

/// Scalar initial profile for the periodic test functions.
double profile(const RunConfig& cfg, double x) {
  switch (cfg.initial) {
    case InitialData::Sine: return cfg.sine_a + cfg.sine_b * std::sin(x);
    case InitialData::Step: return step_function(x);
    case InitialData::EdgeTest: return edge_test_function(x);
    case InitialData::Riemann: return x < 0.5 * (cfg.x_min + cfg.x_max) ? cfg.u_left : cfg.u_right;
    case InitialData::Sod: break;
  }
  throw std::invalid_argument("initial data has no scalar profile");
}

/// Exact Burgers solution for the config, when one is available.
std::unique_ptr<ExactSolution> exact_solution(const RunConfig& cfg) {
  if (cfg.model != "burgers") return nullptr;
  if (cfg.initial == InitialData::Sine) return std::make_unique<BurgersSineSolution>(cfg.sine_a, cfg.sine_b);
  if (cfg.initial == InitialData::Riemann) {
    return std::make_unique<BurgersRiemannSolution>(cfg.u_left, cfg.u_right, 0.5 * (cfg.x_min + cfg.x_max));
  }
  return nullptr;
}

Grid1D make_grid(const RunConfig& cfg, std::size_t n) {
  return Grid1D(cfg.x_min, cfg.x_max, n,
                cfg.boundary == "periodic" ? Boundary::Periodic : Boundary::ZeroGradient);
}

CellAverages initial_averages(const RunConfig& cfg, const Grid1D& grid) {
  if (cfg.initial == InitialData::Sod) return sod_initial(grid, cfg.gamma);
  if (const auto exact = exact_solution(cfg)) return exact->cell_averages(grid, 0.0);
  return CellAverages::from_average(grid, [&](double x) { return profile(cfg, x); });
}

SolverOptions solver_options(const RunConfig& cfg, const ModelSpec& model) {
  SolverOptions opts;
  opts.scheme = cfg.method == Method::KT ? Scheme::KT : Scheme::NT;
  opts.policy = {effective_cfl(cfg), std::nullopt};
  opts.limiter.theta = cfg.limiter_theta;
  opts.limiter.first_order = cfg.first_order;
  opts.rk_order = cfg.rk_order;
  opts.diffusion = model.diffusion;
  return opts;
}

SvConfig sv_config(const RunConfig& cfg) {
  SvConfig sv;
  sv.enabled = cfg.method == Method::SV;
  sv.s = cfg.sv_s;
  sv.beta = cfg.sv_beta;
  sv.profile = cfg.sv_profile == "ramp" ? SvProfile::Ramp : SvProfile::Sharp;
  return sv;
}

SvRunOptions sv_options(const RunConfig& cfg) {
  SvRunOptions o;
  o.c_advective = cfg.sv_c_advective;
  o.c_viscous = cfg.sv_c_viscous;
  o.integrating_factor = cfg.sv_integrating_factor;
  return o;
}

std::vector<double> initial_samples(const RunConfig& cfg) {
  std::vector<double> s;
  for (double x : collocation_points(cfg.modes)) s.push_back(profile(cfg, x));
  return s;
}

std::vector<std::string> component_names(const RunConfig& cfg) {
  if (cfg.model == "euler") return {"rho", "rho_u", "E"};
  return {"u"};
}

// ---------------------------------------------------------------------------

int run_solve_fv(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const ModelSpec model = make_model(cfg.model, cfg.advection_speed, cfg.gamma);
  const Grid1D grid = make_grid(cfg, cfg.n_cells);
  const auto exact = exact_solution(cfg);
  const SolverOptions opts = solver_options(cfg, model);

  auto csv = open_csv(out / "solution.csv");
  csv << "time,x";
  for (const auto& name : component_names(cfg)) csv << ',' << name;
  if (exact) csv << ",exact";
  csv << '\n';

  CellAverages u = initial_averages(cfg, grid);
  double t = 0.0;
  std::size_t steps = 0;
  for (double target : output_schedule(cfg)) {
    if (target > t) {
      RunResult res = solve(u, *model.flux, t, target, opts);
      u = std::move(res.u);
      steps += res.steps;
      t = target;
    }
    const CellAverages ref = exact ? exact->cell_averages(grid, t) : CellAverages(grid, 1);
    for (std::size_t nu = 0; nu < grid.n_cells(); ++nu) {
      csv << t << ',' << grid.center(nu);
      for (std::size_t c = 0; c < u.components(); ++c) csv << ',' << u(nu, c);
      if (exact) csv << ',' << ref(nu, 0);
      csv << '\n';
    }
  }
  std::ostringstream gp;
  gp << std::setprecision(17) << "set title '" << to_string(cfg.method) << " " << cfg.model << ", "
     << grid.n_cells() << " cells, t = " << cfg.t_final << "'\n"
     << "T = " << cfg.t_final << "\nplot 'solution.csv' using 2:($1 == T ? $3 : 1/0) with points pt 7 ps 0.5";
  if (exact) gp << ", '' using 2:($1 == T ? $" << 3 + u.components() << " : 1/0) with lines";
  gp << '\n';
  write_script(out / "solution.gp", gp.str());
  log << "solve: " << to_string(cfg.method) << ' ' << cfg.model << ", " << steps << " steps to t = "
      << cfg.t_final << '\n';
  return kExitOk;
}

std::vector<SvSnapshot> evolve_spectral(const RunConfig& cfg, std::span<const double> times) {
  return sv_evolve(initial_samples(cfg), sv_config(cfg), cfg.t_final, times, sv_options(cfg));
}

int run_solve_spectral(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const auto times = output_schedule(cfg);
  const auto snaps = evolve_spectral(cfg, times);
  const auto xs = collocation_points(cfg.modes);
  const auto exact = exact_solution(cfg);
  auto csv = open_csv(out / "solution.csv");
  csv << "time,x,value" << (exact ? ",exact" : "") << '\n';
  for (const auto& snap : snaps) {
    const auto values = synthesize(snap.projection, xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      csv << snap.t << ',' << xs[j] << ',' << values[j];
      if (exact) csv << ',' << exact->evaluate(xs[j], snap.t);
      csv << '\n';
    }
  }
  std::ostringstream gp;
  gp << std::setprecision(17) << "set title '" << to_string(cfg.method) << " Burgers, N = " << cfg.modes
     << ", t = " << cfg.t_final << "'\nT = " << cfg.t_final
     << "\nplot 'solution.csv' using 2:($1 == T ? $3 : 1/0) with linespoints pt 7 ps 0.4";
  if (exact) gp << ", '' using 2:($1 == T ? $4 : 1/0) with lines";
  gp << '\n';
  write_script(out / "solution.gp", gp.str());
  log << "solve: " << to_string(cfg.method) << " N = " << cfg.modes << ", " << snaps.size()
      << " snapshot(s)\n";
  return kExitOk;
}

/// The projection that detect-edges and mollify work on: the evolved state
/// for spectral methods, the initial samples otherwise.
FourierProjection source_projection(const RunConfig& cfg) {
  if (cfg.method == Method::SV || cfg.method == Method::Galerkin) {
    const double times[] = {cfg.t_final};
    return evolve_spectral(cfg, times).back().projection;
  }
  return project(initial_samples(cfg));
}

double source_time(const RunConfig& cfg) {
  return cfg.method == Method::SV || cfg.method == Method::Galerkin ? cfg.t_final : 0.0;
}

EdgeReport detect(const RunConfig& cfg, const FourierProjection& p) {
  EdgeDetectorOptions opt;
  opt.threshold = cfg.edge_threshold;
  opt.exp_beta = cfg.exp_beta;
  return minmod_edge_detect(p, opt);
}

int run_detect_edges(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const FourierProjection p = source_projection(cfg);
  const EdgeReport report = detect(cfg, p);
  {
    auto csv = open_csv(out / "edges.csv");
    csv << "location,amplitude\n";
    for (const auto& e : report.edges) csv << e.location << ',' << e.amplitude << '\n';
  }
  {
    EdgeDetectorOptions opt;
    opt.threshold = cfg.edge_threshold;
    opt.exp_beta = cfg.exp_beta;
    const auto xs = collocation_points(cfg.modes);
    const auto values = synthesize(p, xs.size());
    const auto det = combined_detector_on_grid(p, opt);
    auto csv = open_csv(out / "detector.csv");
    csv << "x,value,detector\n";
    for (std::size_t j = 0; j < xs.size(); ++j) csv << xs[j] << ',' << values[j] << ',' << det[j] << '\n';
  }
  write_script(out / "detector.gp",
               "set title 'minmod concentration detector'\n"
               "plot 'detector.csv' using 1:2 with lines, '' using 1:3 with lines, "
               "'edges.csv' using 1:2 with points pt 7 ps 1.5\n");
  log << "detect-edges: " << report.edges.size() << " edge(s)\n";
  for (const auto& e : report.edges) {
    log << "  x = " << std::setprecision(10) << e.location << "  jump = " << e.amplitude << '\n';
  }
  return kExitOk;
}

int run_mollify(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const FourierProjection p = source_projection(cfg);
  const double t = source_time(cfg);
  const EdgeReport report = detect(cfg, p);
  const DistanceFunction dist = distance_function(report);
  MollifierOptions mopt;
  mopt.beta = cfg.mollifier_beta;
  mopt.c_p = cfg.mollifier_c_p;
  const AdaptiveMollifier moll(p, mopt);
  const auto exact = exact_solution(cfg);
  const bool has_exact = t == 0.0 || exact != nullptr;

  auto csv = open_csv(out / "mollified.csv");
  csv << "x,distance,raw,mollified,filtered" << (has_exact ? ",exact" : "") << '\n';
  for (double x : equispaced_points(cfg.sample_points)) {
    const double d = dist(x);
    const double raw = p.evaluate(x);
    // on an edge there is nothing to mollify
    const double m = d > 0.0 ? moll(x, d) : raw;
    const double f = d > 0.0 ? adaptive_filter(p, dist, x) : raw;
    csv << x << ',' << d << ',' << raw << ',' << m << ',' << f;
    if (has_exact) csv << ',' << (t == 0.0 ? profile(cfg, x) : exact->evaluate(x, t));
    csv << '\n';
  }
  std::string gp =
      "set title 'adaptive mollification'\n"
      "plot 'mollified.csv' using 1:3 with lines, '' using 1:4 with lines lw 2";
  if (has_exact) gp += ", '' using 1:6 with lines dt 2";
  write_script(out / "mollified.gp", gp + "\n");
  log << "mollify: " << report.edges.size() << " edge(s), " << cfg.sample_points << " points\n";
  return kExitOk;
}

int run_convergence(const RunConfig& cfg, const fs::path& out, std::ostream& log, std::size_t threads) {
  const ModelSpec model = make_model(cfg.model, cfg.advection_speed, cfg.gamma);
  const auto exact = exact_solution(cfg);
  const SolverOptions opts = solver_options(cfg, model);
  auto run_one = [&](std::size_t n) {
    const Grid1D grid = make_grid(cfg, n);
    const RunResult res = solve(exact->cell_averages(grid, 0.0), *model.flux, 0.0, cfg.t_final, opts);
    return error_norms(res.u, *exact, cfg.t_final, cfg.exclusion_cells * grid.h());
  };
  const ConvergenceTable table = convergence_study(run_one, cfg.resolutions, threads);
  {
    std::ofstream os(out / "convergence.csv");
    if (!os) throw std::runtime_error("cannot write convergence.csv");
    table.write_csv(os);
  }
  write_script(out / "convergence.gp",
               "set logscale xy\nset title 'L1 error against resolution'\n"
               "plot 'convergence.csv' using 1:2 with linespoints, '' using 1:3 with linespoints\n");
  table.write_csv(log);
  return kExitOk;
}

int run_battery_cmd(std::ostream& log, std::size_t threads) {
  BatteryOptions opt;
  opt.threads = threads;
  std::size_t failed = 0;
  run_battery(opt, [&](const CriterionResult& r) {
    log << format_result(r) << std::endl;
    if (!r.passed) ++failed;
  });
  log << (failed == 0 ? "battery: all criteria passed" : "battery: " + std::to_string(failed) + " failed")
      << std::endl;
  return failed == 0 ? kExitOk : kExitBattery;
}

}  // namespace

std::size_t thread_budget() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CENTRALKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = static_cast<std::size_t>(v);
  }
  return n;
}

int run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log,
        std::size_t threads) {
  if (cfg.subcommand == Subcommand::Battery) return run_battery_cmd(log, threads);
  fs::create_directories(out_dir);
  switch (cfg.subcommand) {
    case Subcommand::Solve:
      return cfg.method == Method::SV || cfg.method == Method::Galerkin ? run_solve_spectral(cfg, out_dir, log)
                                                                        : run_solve_fv(cfg, out_dir, log);
    case Subcommand::DetectEdges: return run_detect_edges(cfg, out_dir, log);
    case Subcommand::Mollify: return run_mollify(cfg, out_dir, log);
    case Subcommand::Convergence: return run_convergence(cfg, out_dir, log, threads);
    case Subcommand::Battery: break;
  }
  return kExitOk;
}

}  // namespace centralkit::cli
