#include "rrk/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "rrk/kernels.hpp"

namespace rrk {

namespace {

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::pair<std::vector<State>, StepAggregates> rk_stages(const OdeProblem& problem,
                                                        const ButcherTableau& tab,
                                                        double t, const State& u,
                                                        double dt) {
  if (!tab.is_explicit())
    throw std::invalid_argument("rk_stages: tableau '" + tab.name() + "' is not explicit");
  if (!(dt > 0.0)) throw std::invalid_argument("rk_stages: dt must be positive");
  if (static_cast<int>(u.size()) != problem.dimension)
    throw std::invalid_argument("rk_stages: state dimension mismatch");

  const int s = tab.stages();
  const std::size_t n = u.size();
  const auto& b = tab.b();
  const auto& c = tab.c();

  std::vector<State> stages(static_cast<std::size_t>(s));
  std::vector<State> f(static_cast<std::size_t>(s), State(n));
  StepAggregates agg;
  agg.d.assign(n, 0.0);
  agg.stage_count = s;
  State grad(n);

  for (int i = 0; i < s; ++i) {
    State& y = stages[static_cast<std::size_t>(i)];
    y = u;
    for (int j = 0; j < i; ++j)
      if (tab.a(i, j) != 0.0) kernels::axpy(y, dt * tab.a(i, j), f[static_cast<std::size_t>(j)]);
    problem.rhs(t + c[static_cast<std::size_t>(i)] * dt, y, f[static_cast<std::size_t>(i)]);
    if (!kernels::all_finite(f[static_cast<std::size_t>(i)]))
      throw IntegrationError("rk_stages: non-finite rhs at stage " + std::to_string(i + 1), {});
    if (b[static_cast<std::size_t>(i)] != 0.0) {
      kernels::axpy(agg.d, b[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(i)]);
      problem.entropy_gradient(y, grad);
      agg.e += dt * b[static_cast<std::size_t>(i)] *
               kernels::dot(grad, f[static_cast<std::size_t>(i)]);
    }
  }
  return {std::move(stages), std::move(agg)};
}

double residual(double gamma, const State& u, const StepAggregates& agg, double dt,
                const std::function<double(const State&)>& entropy) {
  const double eta_u = entropy(u);
  if (!std::isfinite(eta_u))
    throw std::runtime_error("residual: entropy(u) is not finite");
  if (gamma == 0.0) return eta_u - eta_u;
  State work(u.size());
  kernels::add_scaled(work, u, gamma * dt, agg.d);
  const double eta_new = entropy(work);
  if (!std::isfinite(eta_new))
    throw std::runtime_error("residual: non-finite entropy evaluation");
  return eta_new - eta_u - gamma * agg.e;
}

double residual_derivative(double gamma, const State& u, const StepAggregates& agg,
                           double dt,
                           const std::function<void(const State&, State&)>& entropy_gradient) {
  State work(u.size());
  kernels::add_scaled(work, u, gamma * dt, agg.d);
  State grad(u.size());
  entropy_gradient(work, grad);
  if (!kernels::all_finite(grad))
    throw std::runtime_error("residual_derivative: non-finite entropy gradient");
  return dt * kernels::dot(grad, agg.d) - agg.e;
}

namespace {

std::pair<double, SolveGammaDiagnostics> solve_gamma_impl(
    const State& u, const StepAggregates& agg, double dt,
    const std::function<double(const State&)>& entropy,
    const std::function<void(const State&, State&)>& gradient,
    const RelaxationConfig& cfg, double warm_start) {
  if (!(warm_start > 0.0))
    throw std::invalid_argument("solve_gamma: warm start must be positive");
  const double eta_u = entropy(u);
  if (!std::isfinite(eta_u))
    throw std::runtime_error("solve_gamma: entropy(u) is not finite");

  RootConfig rc = cfg.root;
  if (cfg.scale_tol_by_entropy)
    rc.abs_tol = cfg.root.abs_tol * std::max(1.0, std::abs(eta_u));

  State work(u.size());
  State gradbuf(u.size());
  const std::function<double(double)> r = [&](double gamma) -> double {
    if (gamma == 0.0) return eta_u - eta_u;
    kernels::add_scaled(work, u, gamma * dt, agg.d);
    return entropy(work) - eta_u - gamma * agg.e;
  };
  const std::function<double(double)> rp = [&](double gamma) -> double {
    kernels::add_scaled(work, u, gamma * dt, agg.d);
    gradient(work, gradbuf);
    return dt * kernels::dot(gradbuf, agg.d) - agg.e;
  };

  SolveGammaDiagnostics diag;
  diag.residual_at_one = r(1.0);

  // Flat residual (f(u) = 0, or eta linear along d): there is no isolated
  // root to chase and gamma = 1 reproduces the baseline update.
  auto is_flat = [&]() {
    return std::max(std::abs(diag.residual_at_one), 0.5 * std::abs(rp(1.0))) <= rc.abs_tol;
  };
  if (is_flat()) {
    diag.degenerate = true;
    diag.residual_at_gamma = diag.residual_at_one;
    return {1.0, diag};
  }

  double lo, hi;
  try {
    std::tie(lo, hi) = bracket_root(r, warm_start, rc);
  } catch (const BracketError&) {
    if (is_flat()) {
      diag.degenerate = true;
      diag.residual_at_gamma = diag.residual_at_one;
      return {1.0, diag};
    }
    throw std::runtime_error(
        "solve_gamma: no sign change around the warm start; the time step is "
        "likely too large for a relaxation root near 1");
  }

  // The solve itself runs width-driven to machine resolution: stopping as
  // soon as |r| dips below tolerance would hand back the warm start verbatim
  // whenever the previous root still satisfies it, freezing gamma across
  // steps. cfg.abs_tol is enforced afterwards as the accepted-residual
  // contract.
  RootConfig solver_rc = rc;
  solver_rc.abs_tol = std::numeric_limits<double>::denorm_min();
  solver_rc.x_tol = 4.0 * std::numeric_limits<double>::epsilon();

  RootResult res = find_root(r, rp, lo, hi, solver_rc);
  if (std::abs(res.root) < 1e-3) {
    // Only the trivial root at zero was located; retry away from it.
    if (r(1e-3) * r(hi) <= 0.0) {
      res = find_root(r, rp, 1e-3, hi, solver_rc);
    } else {
      throw std::runtime_error(
          "solve_gamma: only the trivial root near gamma = 0 was found");
    }
  }
  if (!(res.root > 0.0))
    throw std::runtime_error("solve_gamma: located root gamma = " +
                             short_double(res.root) +
                             " is not positive and must not be accepted");
  if (!res.converged)
    throw std::runtime_error("solve_gamma: root solve did not converge within " +
                             std::to_string(rc.max_iters) + " iterations");
  if (!(std::abs(res.f_at_root) <= rc.abs_tol))
    throw std::runtime_error(
        "solve_gamma: residual " + short_double(res.f_at_root) +
        " at the machine-precision root exceeds the tolerance " +
        short_double(rc.abs_tol) + "; the time step is too large for this "
        "entropy scale");

  diag.residual_at_gamma = res.f_at_root;
  diag.iterations = res.iterations;
  return {res.root, diag};
}

}  // namespace

std::pair<double, SolveGammaDiagnostics> solve_gamma(const State& u,
                                                     const StepAggregates& agg,
                                                     double dt,
                                                     const OdeProblem& problem,
                                                     const RelaxationConfig& cfg,
                                                     double warm_start) {
  return solve_gamma_impl(u, agg, dt, problem.entropy, problem.entropy_gradient, cfg,
                          warm_start);
}

StepAggregates aggregates_for_entropy(const OdeProblem& problem,
                                      const ButcherTableau& tab, double t, double dt,
                                      std::span<const State> stages,
                                      const EntropyFunctional& entropy) {
  const int s = tab.stages();
  if (static_cast<int>(stages.size()) != s)
    throw std::invalid_argument("aggregates_for_entropy: stage count mismatch");
  const std::size_t n = stages.empty() ? 0 : stages[0].size();
  StepAggregates agg;
  agg.d.assign(n, 0.0);
  agg.stage_count = s;
  State f(n), grad(n);
  for (int i = 0; i < s; ++i) {
    const double bi = tab.b()[static_cast<std::size_t>(i)];
    if (bi == 0.0) continue;
    problem.rhs(t + tab.c()[static_cast<std::size_t>(i)] * dt,
                stages[static_cast<std::size_t>(i)], f);
    kernels::axpy(agg.d, bi, f);
    entropy.gradient(stages[static_cast<std::size_t>(i)], grad);
    agg.e += dt * bi * kernels::dot(grad, f);
  }
  return agg;
}

double solve_gamma_multi(const State& u, std::span<const StepAggregates> aggs,
                         double dt, std::span<const EntropyFunctional> entropies,
                         const RelaxationConfig& cfg) {
  if (aggs.empty() || aggs.size() != entropies.size())
    throw std::invalid_argument("solve_gamma_multi: needs one aggregate per entropy");
  double gamma = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < aggs.size(); ++k) {
    const auto [g, diag] =
        solve_gamma_impl(u, aggs[k], dt, entropies[k].value, entropies[k].gradient,
                         cfg, 1.0);
    gamma = std::min(gamma, g);
  }
  return gamma;
}

StepOutput step(const OdeProblem& problem, const ButcherTableau& tab, double t,
                const State& u, double dt, StepMode mode, const RelaxationConfig& cfg,
                double warm_start) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  auto [stages, agg] = rk_stages(problem, tab, t, u, dt);

  StepOutput out;
  out.nonneg_weights = tab.nonneg_weights();
  double gamma = 1.0;
  if (mode == StepMode::baseline) {
    out.residual_at_one = residual(1.0, u, agg, dt, problem.entropy);
    out.residual_at_gamma = out.residual_at_one;
  } else {
    const auto [g, diag] = solve_gamma(u, agg, dt, problem, cfg, warm_start);
    gamma = g;
    out.residual_at_gamma = diag.residual_at_gamma;
    out.residual_at_one = diag.residual_at_one;
    out.rootfind_iterations = diag.iterations;
    out.degenerate_gamma = diag.degenerate;
  }
  out.gamma = gamma;
  out.u_new.resize(u.size());
  kernels::add_scaled(out.u_new, u, gamma * dt, agg.d);
  out.t_new = (mode == StepMode::relaxation) ? t + gamma * dt : t + dt;
  return out;
}

SolveTrace integrate(const OdeProblem& problem, const ButcherTableau& tab, double t0,
                     const State& u0, double dt, double t_end, StepMode mode,
                     const RelaxationConfig& cfg) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(t_end > t0)) throw std::invalid_argument("integrate: t_end must exceed t0");

  SolveTrace trace;
  trace.times.push_back(t0);
  trace.gammas.push_back(1.0);
  trace.entropies.push_back(problem.entropy(u0));
  trace.residuals.push_back(0.0);
  trace.states.push_back(u0);

  State u = u0;
  double t = t0;
  double gamma_prev = 1.0;
  const double done_tol = 1e-12 * dt;
  const long max_steps =
      64 * static_cast<long>(std::ceil((t_end - t0) / dt)) + 1024;

  long n = 0;
  while (t < t_end - done_tol) {
    if (++n > max_steps)
      throw IntegrationError("integrate: step budget exhausted before reaching t_end",
                             trace);
    try {
      StepOutput out;
      const bool final_step = (t + dt >= t_end - done_tol);
      if (final_step) {
        double dt_step = (t_end - t) / gamma_prev;
        out = step(problem, tab, t, u, dt_step, mode, cfg, gamma_prev);
        if (mode == StepMode::relaxation) {
          for (int attempt = 1;
               attempt < 5 && std::abs(out.t_new - t_end) > 1e-8 * dt; ++attempt) {
            dt_step = (t_end - t) / out.gamma;
            out = step(problem, tab, t, u, dt_step, mode, cfg, out.gamma);
          }
        }
      } else {
        out = step(problem, tab, t, u, dt, mode, cfg, gamma_prev);
      }
      if (!(out.t_new > t))
        throw std::runtime_error("step made no forward progress");
      const double eta = problem.entropy(out.u_new);
      if (!kernels::all_finite(out.u_new) || !std::isfinite(eta))
        throw std::runtime_error("solution blew up (non-finite state)");
      t = out.t_new;
      u = std::move(out.u_new);
      gamma_prev = out.gamma;
      trace.times.push_back(t);
      trace.gammas.push_back(gamma_prev);
      trace.entropies.push_back(eta);
      trace.residuals.push_back(out.residual_at_gamma);
      trace.states.push_back(u);
    } catch (const IntegrationError& err) {
      throw IntegrationError(err.what(), trace);
    } catch (const std::exception& err) {
      throw IntegrationError(std::string("integrate: ") + err.what() +
                                 " (t = " + short_double(t) + ")",
                             trace);
    }
  }
  return trace;
}

}  // namespace rrk
