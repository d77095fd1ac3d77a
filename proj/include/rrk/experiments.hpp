#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrk/integrator.hpp"
#include "rrk/problems.hpp"

namespace rrk::experiments {

struct ConvergenceRow {
  double dt = 0.0;
  double error_l2 = 0.0;
  std::optional<double> observed_rate;  // empty for the first row
  bool failed = false;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log(error) vs log(dt) over the last (up to) four
  /// rows that did not fail.
  double summary_slope = 0.0;
};

/// Fills observed_rate = log(err_prev/err)/log(dt_prev/dt) from neighboring
/// non-failed rows. Every emitted file is re-checked against this formula.
void compute_rates(std::vector<ConvergenceRow>& rows);

/// Integrates over the dt ladder and measures ||u_num - u_exact||_2 at the
/// realized final time of each run. Failed runs yield a marked row; the
/// study continues. Requires an exact solution.
ConvergenceStudy run_convergence(const problems::ProblemCatalogEntry& entry,
                                 const ButcherTableau& tab, StepMode mode,
                                 std::span<const double> dt_ladder, double t_end,
                                 const RelaxationConfig& cfg);

/// Residual of the first step from u0 sampled over a gamma grid.
std::vector<std::pair<double, double>> run_residual_scan(const OdeProblem& problem,
                                                         const State& u0, double t0,
                                                         const ButcherTableau& tab,
                                                         double dt,
                                                         std::span<const double> gammas);

/// One relaxation step from the exact initial data: r(1), the solved gamma,
/// and the quadrature difference
/// |sum_i b_i psi(t0+c_i dt, y_i) - sum_i b_i psi(t0+c_i dt, u_exact(t0+c_i dt))|
/// for psi = <eta'(u), f(t, u)>.
struct FirstStepProbe {
  double residual_at_one = 0.0;
  double gamma = 1.0;
  double quadrature_difference = 0.0;
};

FirstStepProbe first_step_probe(const problems::ProblemCatalogEntry& entry,
                                const ButcherTableau& tab, double dt,
                                const RelaxationConfig& cfg);

/// Least-squares slope of log(y) against log(x). Entries with y <= 0 are
/// skipped; throws when fewer than two usable points remain.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// 17-significant-digit decimal formatting used for all CSV payloads.
std::string format17(double v);

/// CSV writers. Every file starts with a header line; numbers are emitted
/// with 17 significant digits so outputs are byte-stable across runs.
void write_convergence_csv(std::ostream& os, const ConvergenceStudy& study);
void write_trace_csv(std::ostream& os, const SolveTrace& trace,
                     const std::vector<double>& values);  // step,t,value
void write_scan_csv(std::ostream& os,
                    const std::vector<std::pair<double, double>>& points);
void write_state_trace_csv(std::ostream& os, const SolveTrace& trace,
                           int max_state_columns = 8);  // step,t,gamma,entropy[,u0..]
void write_burgers_csv(std::ostream& os, const SolveTrace& trace,
                       const std::vector<double>& masses);  // step,t,gamma,entropy,mass

/// gnuplot companion script referencing an emitted CSV.
void write_plot_script(std::ostream& os, const std::string& csv_path,
                       const std::string& x_label, const std::string& y_label,
                       bool loglog);

}  // namespace rrk::experiments
