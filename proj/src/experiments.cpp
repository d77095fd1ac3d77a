#include "rrk/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rrk::experiments {

void compute_rates(std::vector<ConvergenceRow>& rows) {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& prev = rows[k - 1];
    auto& row = rows[k];
    if (!row.failed && !prev.failed && prev.error_l2 > 0.0 && row.error_l2 > 0.0)
      row.observed_rate =
          std::log(prev.error_l2 / row.error_l2) / std::log(prev.dt / row.dt);
  }
}

ConvergenceStudy run_convergence(const problems::ProblemCatalogEntry& entry,
                                 const ButcherTableau& tab, StepMode mode,
                                 std::span<const double> dt_ladder, double t_end,
                                 const RelaxationConfig& cfg) {
  if (!entry.problem.has_exact_solution())
    throw std::invalid_argument("run_convergence: problem '" + entry.name +
                                "' has no exact solution");
  for (std::size_t k = 1; k < dt_ladder.size(); ++k)
    if (!(dt_ladder[k] < dt_ladder[k - 1]))
      throw std::invalid_argument("run_convergence: dt ladder must be strictly decreasing");

  ConvergenceStudy study;
  for (double dt : dt_ladder) {
    ConvergenceRow row;
    row.dt = dt;
    try {
      const SolveTrace trace = integrate(entry.problem, tab, entry.default_tspan.first,
                                         entry.default_u0, dt, t_end, mode, cfg);
      const State exact = entry.problem.eval_exact(trace.times.back());
      double acc = 0.0;
      const State& num = trace.states.back();
      for (std::size_t i = 0; i < exact.size(); ++i) {
        const double diff = num[i] - exact[i];
        acc += diff * diff;
      }
      row.error_l2 = std::sqrt(acc);
    } catch (const IntegrationError&) {
      row.failed = true;
      row.error_l2 = std::numeric_limits<double>::quiet_NaN();
    }
    study.rows.push_back(row);
  }

  compute_rates(study.rows);

  std::vector<double> xs, ys;
  for (auto it = study.rows.rbegin(); it != study.rows.rend() && xs.size() < 4; ++it) {
    if (!it->failed && it->error_l2 > 0.0) {
      xs.push_back(it->dt);
      ys.push_back(it->error_l2);
    }
  }
  study.summary_slope = (xs.size() >= 2) ? loglog_slope(xs, ys)
                                         : std::numeric_limits<double>::quiet_NaN();
  return study;
}

std::vector<std::pair<double, double>> run_residual_scan(const OdeProblem& problem,
                                                         const State& u0, double t0,
                                                         const ButcherTableau& tab,
                                                         double dt,
                                                         std::span<const double> gammas) {
  const auto [stages, agg] = rk_stages(problem, tab, t0, u0, dt);
  std::vector<std::pair<double, double>> points;
  points.reserve(gammas.size());
  for (double g : gammas)
    points.emplace_back(g, residual(g, u0, agg, dt, problem.entropy));
  return points;
}

FirstStepProbe first_step_probe(const problems::ProblemCatalogEntry& entry,
                                const ButcherTableau& tab, double dt,
                                const RelaxationConfig& cfg) {
  const OdeProblem& p = entry.problem;
  const double t0 = entry.default_tspan.first;
  const State& u0 = entry.default_u0;
  const auto [stages, agg] = rk_stages(p, tab, t0, u0, dt);

  FirstStepProbe probe;
  probe.residual_at_one = residual(1.0, u0, agg, dt, p.entropy);
  probe.gamma = solve_gamma(u0, agg, dt, p, cfg, 1.0).first;

  if (p.has_exact_solution()) {
    double along_stages = 0.0;
    double along_exact = 0.0;
    for (int i = 0; i < tab.stages(); ++i) {
      const double bi = tab.b()[static_cast<std::size_t>(i)];
      if (bi == 0.0) continue;
      const double ti = t0 + tab.c()[static_cast<std::size_t>(i)] * dt;
      along_stages += bi * entropy_rate(p, ti, stages[static_cast<std::size_t>(i)]);
      along_exact += bi * entropy_rate(p, ti, p.eval_exact(ti));
    }
    probe.quadrature_difference = std::abs(along_stages - along_exact);
  }
  return probe;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > 0.0 && x[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  const std::size_t n = lx.size();
  if (n < 2) throw std::invalid_argument("loglog_slope: needs at least two positive points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_convergence_csv(std::ostream& os, const ConvergenceStudy& study) {
  // Self-check: every emitted rate must recompute exactly from its neighbors.
  for (std::size_t k = 1; k < study.rows.size(); ++k) {
    const auto& prev = study.rows[k - 1];
    const auto& row = study.rows[k];
    if (!row.observed_rate) continue;
    const double expect =
        std::log(prev.error_l2 / row.error_l2) / std::log(prev.dt / row.dt);
    if (expect != *row.observed_rate)
      throw std::logic_error("write_convergence_csv: rate self-check failed");
  }
  os << "dt,error_l2,observed_rate\n";
  for (const auto& row : study.rows) {
    os << format17(row.dt) << ',';
    os << (row.failed ? "failed" : format17(row.error_l2)) << ',';
    if (row.observed_rate) os << format17(*row.observed_rate);
    os << '\n';
  }
  os << "# summary_slope_last4 = " << format17(study.summary_slope) << '\n';
}

void write_trace_csv(std::ostream& os, const SolveTrace& trace,
                     const std::vector<double>& values) {
  if (values.size() != trace.times.size())
    throw std::invalid_argument("write_trace_csv: value column length mismatch");
  os << "step,t,value\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k)
    os << k << ',' << format17(trace.times[k]) << ',' << format17(values[k]) << '\n';
}

void write_scan_csv(std::ostream& os,
                    const std::vector<std::pair<double, double>>& points) {
  os << "gamma,r\n";
  for (const auto& [g, r] : points) os << format17(g) << ',' << format17(r) << '\n';
}

void write_state_trace_csv(std::ostream& os, const SolveTrace& trace,
                           int max_state_columns) {
  const int dim = trace.states.empty() ? 0 : static_cast<int>(trace.states[0].size());
  const int ncols = std::min(dim, max_state_columns);
  os << "step,t,gamma,entropy";
  for (int i = 0; i < ncols; ++i) os << ",u" << i;
  os << '\n';
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    os << k << ',' << format17(trace.times[k]) << ',' << format17(trace.gammas[k])
       << ',' << format17(trace.entropies[k]);
    for (int i = 0; i < ncols; ++i)
      os << ',' << format17(trace.states[k][static_cast<std::size_t>(i)]);
    os << '\n';
  }
}

void write_burgers_csv(std::ostream& os, const SolveTrace& trace,
                       const std::vector<double>& masses) {
  if (masses.size() != trace.times.size())
    throw std::invalid_argument("write_burgers_csv: mass column length mismatch");
  os << "step,t,gamma,entropy,mass\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k)
    os << k << ',' << format17(trace.times[k]) << ',' << format17(trace.gammas[k])
       << ',' << format17(trace.entropies[k]) << ',' << format17(masses[k]) << '\n';
}

void write_plot_script(std::ostream& os, const std::string& csv_path,
                       const std::string& x_label, const std::string& y_label,
                       bool loglog) {
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set xlabel '" << x_label << "'\n";
  os << "set ylabel '" << y_label << "'\n";
  if (loglog) os << "set logscale xy\n";
  os << "plot '" << csv_path << "' using 1:2 with linespoints\n";
  os << "pause -1\n";
}

}  // namespace rrk::experiments
