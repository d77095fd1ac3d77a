// Command-line experiment harness: integrations, convergence studies,
// entropy/gamma traces, residual scans, and the periodic Burgers benchmark,
// all emitted as deterministic CSV.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrk/burgers.hpp"
#include "rrk/experiments.hpp"
#include "rrk/integrator.hpp"
#include "rrk/problems.hpp"
#include "rrk/tableau.hpp"

namespace {

using namespace rrk;

struct Options {
  std::string method = "RK(4,4)";
  std::string method_file;
  std::string mode = "relaxation";
  double dt = 0.0;  // 0 -> problem default
  std::vector<double> dt_ladder;
  double t_end = std::numeric_limits<double>::quiet_NaN();  // NaN -> problem default
  std::string problem = "conserved-exp-entropy";
  std::string root = "brent";
  double tol = 0.0;  // 0 -> 1e-14 scaled by |eta(u^n)|
  std::string out;
  bool plot_script = false;
  std::vector<double> gammas;
  int cells = 64;
};

ButcherTableau resolve_method(const Options& o) {
  if (!o.method_file.empty()) return load_tableau_file(o.method_file);
  return builtin_tableau(o.method);
}

StepMode resolve_mode(const std::string& mode) {
  if (mode == "baseline") return StepMode::baseline;
  if (mode == "idt") return StepMode::idt;
  if (mode == "relaxation") return StepMode::relaxation;
  throw std::invalid_argument("unknown mode '" + mode +
                              "' (expected baseline, idt or relaxation)");
}

RelaxationConfig resolve_config(const Options& o) {
  RelaxationConfig cfg;
  if (o.root == "brent") cfg.root.method = RootMethod::brent;
  else if (o.root == "bisection") cfg.root.method = RootMethod::bisection;
  else if (o.root == "newton") cfg.root.method = RootMethod::newton_safeguarded;
  else throw std::invalid_argument("unknown root method '" + o.root + "'");
  if (o.tol > 0.0) {
    cfg.root.abs_tol = o.tol;
    cfg.scale_tol_by_entropy = false;
  }
  return cfg;
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  fn(os);
}

void maybe_plot_script(const Options& o, const std::string& x, const std::string& y,
                       bool loglog) {
  if (!o.plot_script || o.out.empty()) return;
  std::ofstream os(o.out + ".gnuplot");
  if (!os) throw std::runtime_error("cannot open plot script next to '" + o.out + "'");
  experiments::write_plot_script(os, o.out, x, y, loglog);
}

double resolve_dt(const Options& o, double fallback) {
  if (o.dt == 0.0) return fallback;  // unset
  if (!(o.dt > 0.0)) throw std::invalid_argument("--dt must be positive");
  return o.dt;
}

SolveTrace run_entry(const Options& o, const problems::ProblemCatalogEntry& entry) {
  const double dt = resolve_dt(o, entry.default_dt);
  const double t_end = std::isnan(o.t_end) ? entry.default_tspan.second : o.t_end;
  return integrate(entry.problem, resolve_method(o), entry.default_tspan.first,
                   entry.default_u0, dt, t_end, resolve_mode(o.mode),
                   resolve_config(o));
}

int cmd_integrate(const Options& o) {
  const auto entry = problems::by_name(o.problem);
  const SolveTrace trace = run_entry(o, entry);
  if (!o.out.empty()) {
    with_output(o.out, [&](std::ostream& os) {
      experiments::write_state_trace_csv(os, trace);
    });
    maybe_plot_script(o, "t", "u0", false);
  }
  double drift = 0.0;
  for (double eta : trace.entropies) drift = std::max(drift, std::abs(eta - trace.entropies.front()));
  const auto [gmin, gmax] =
      std::minmax_element(trace.gammas.begin() + 1, trace.gammas.end());
  std::cout << "steps=" << trace.step_count()
            << " final_time=" << experiments::format17(trace.times.back())
            << " entropy_drift=" << experiments::format17(drift)
            << " gamma_min=" << experiments::format17(*gmin)
            << " gamma_max=" << experiments::format17(*gmax) << '\n';
  return 0;
}

int cmd_convergence(const Options& o) {
  const auto entry = problems::by_name(o.problem);
  if (o.dt_ladder.size() < 2)
    throw std::invalid_argument("convergence: --dt-ladder needs at least two values");
  const double t_end = std::isnan(o.t_end) ? entry.default_tspan.second : o.t_end;
  const auto study =
      experiments::run_convergence(entry, resolve_method(o), resolve_mode(o.mode),
                                   o.dt_ladder, t_end, resolve_config(o));
  with_output(o.out, [&](std::ostream& os) {
    experiments::write_convergence_csv(os, study);
  });
  maybe_plot_script(o, "dt", "error_l2", true);
  std::cout << "summary_slope=" << experiments::format17(study.summary_slope) << '\n';
  return 0;
}

int cmd_trace(const Options& o, bool entropy_column) {
  const auto entry = problems::by_name(o.problem);
  const SolveTrace trace = run_entry(o, entry);
  std::vector<double> values = entropy_column ? trace.entropies : trace.gammas;
  with_output(o.out, [&](std::ostream& os) {
    experiments::write_trace_csv(os, trace, values);
  });
  maybe_plot_script(o, "t", entropy_column ? "entropy" : "gamma", false);
  return 0;
}

int cmd_residual_scan(const Options& o) {
  const auto entry = problems::by_name(o.problem);
  const double dt = resolve_dt(o, entry.default_dt);
  std::vector<double> gammas = o.gammas;
  if (gammas.empty())
    for (int k = 0; k <= 80; ++k) gammas.push_back(-0.5 + 0.025 * k);
  const auto points = experiments::run_residual_scan(
      entry.problem, entry.default_u0, entry.default_tspan.first, resolve_method(o),
      dt, gammas);
  with_output(o.out, [&](std::ostream& os) { experiments::write_scan_csv(os, points); });
  maybe_plot_script(o, "gamma", "r", false);
  return 0;
}

int cmd_burgers(const Options& o) {
  const burgers::Grid grid{o.cells, 0.0, 1.0};
  const auto profile = [](double x) { return 0.5 + std::sin(2.0 * M_PI * x); };
  const OdeProblem problem = burgers::make_problem(grid, profile);
  const State u0 = burgers::sample_initial(grid, profile);
  const double dt = resolve_dt(o, 0.0025);
  const double t_end = std::isnan(o.t_end) ? 0.3 : o.t_end;
  const SolveTrace trace = integrate(problem, resolve_method(o), 0.0, u0, dt, t_end,
                                     resolve_mode(o.mode), resolve_config(o));
  std::vector<double> masses;
  masses.reserve(trace.states.size());
  for (const auto& u : trace.states) masses.push_back(burgers::total_mass(u, grid));
  with_output(o.out, [&](std::ostream& os) {
    experiments::write_burgers_csv(os, trace, masses);
  });
  maybe_plot_script(o, "t", "entropy", false);
  double entropy_drift = 0.0, mass_drift = 0.0;
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    entropy_drift = std::max(entropy_drift,
                             std::abs(trace.entropies[k] - trace.entropies.front()));
    mass_drift = std::max(mass_drift, std::abs(masses[k] - masses.front()));
  }
  std::cout << "steps=" << trace.step_count()
            << " entropy_drift=" << experiments::format17(entropy_drift)
            << " mass_drift=" << experiments::format17(mass_drift) << '\n';
  return 0;
}

void add_common(CLI::App* cmd, Options& o, bool with_problem = true) {
  cmd->add_option("--method", o.method, "tableau name from the built-in catalog");
  cmd->add_option("--method-file", o.method_file,
                  "load the tableau from a plain-text file instead");
  cmd->add_option("--mode", o.mode, "baseline | idt | relaxation");
  cmd->add_option("--root", o.root, "brent | bisection | newton");
  cmd->add_option("--tol", o.tol, "absolute residual tolerance for the gamma solve");
  cmd->add_option("--out", o.out, "output CSV path (stdout when omitted)");
  cmd->add_flag("--plot-script", o.plot_script,
                "also write a gnuplot script next to the CSV");
  if (with_problem)
    cmd->add_option("--problem", o.problem, "problem catalog entry");
  cmd->add_option("--config", "key=value file mirroring the flags")
      ->expected(1)
      ->check(CLI::ExistingFile);
}

// Expands `--config FILE` into --key=value arguments. Keys also given as
// explicit flags are skipped, so the command line always wins.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::set<std::string> explicit_keys;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--", 0) != 0) continue;
    explicit_keys.insert(arg.substr(2, arg.find('=') - 2));
  }

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc) {
      path = argv[++i];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    } else {
      args.push_back(std::move(arg));
      continue;
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto last = line.find_last_not_of(" \t\r");
      if (last == std::string::npos) continue;
      line.erase(last + 1);
      line.erase(0, line.find_first_not_of(" \t"));
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("config file '" + path + "': expected key=value, got '" +
                                 line + "'");
      if (explicit_keys.count(line.substr(0, eq))) continue;
      args.push_back("--" + line);
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxation Runge-Kutta experiment harness"};
  app.require_subcommand(1);

  Options o;
  int (*action)(const Options&) = nullptr;
  bool entropy_column = true;

  auto* integrate_cmd = app.add_subcommand("integrate", "run one integration");
  add_common(integrate_cmd, o);
  integrate_cmd->add_option("--dt", o.dt, "time step");
  integrate_cmd->add_option("--t-end", o.t_end, "final time");

  auto* conv = app.add_subcommand("convergence", "error vs dt study");
  add_common(conv, o);
  conv->add_option("--dt-ladder", o.dt_ladder, "strictly decreasing dt values")
      ->delimiter(',');
  conv->add_option("--t-end", o.t_end, "final time");

  auto* etrace = app.add_subcommand("entropy-trace", "per-step entropy CSV");
  add_common(etrace, o);
  etrace->add_option("--dt", o.dt, "time step");
  etrace->add_option("--t-end", o.t_end, "final time");

  auto* gtrace = app.add_subcommand("gamma-trace", "per-step gamma CSV");
  add_common(gtrace, o);
  gtrace->add_option("--dt", o.dt, "time step");
  gtrace->add_option("--t-end", o.t_end, "final time");

  auto* scan = app.add_subcommand("residual-scan", "r(gamma) over a gamma grid");
  add_common(scan, o);
  scan->add_option("--dt", o.dt, "time step");
  scan->add_option("--gammas", o.gammas, "gamma grid (default -0.5..1.5)")
      ->delimiter(',');

  auto* burg = app.add_subcommand("burgers", "periodic entropy-conservative Burgers");
  add_common(burg, o, /*with_problem=*/false);
  burg->add_option("--cells", o.cells, "grid cells (default 64)");
  burg->add_option("--dt", o.dt, "time step (default 0.0025)");
  burg->add_option("--t-end", o.t_end, "final time (default 0.3)");

  try {
    auto args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // parse(vector) takes reversed args
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (integrate_cmd->parsed()) action = cmd_integrate;
    else if (conv->parsed()) action = cmd_convergence;
    else if (etrace->parsed()) { entropy_column = true; }
    else if (gtrace->parsed()) { entropy_column = false; }
    else if (scan->parsed()) action = cmd_residual_scan;
    else if (burg->parsed()) action = cmd_burgers;

    if (etrace->parsed() || gtrace->parsed()) return cmd_trace(o, entropy_column);
    return action(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
