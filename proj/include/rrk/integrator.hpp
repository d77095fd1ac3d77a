#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rrk/problem.hpp"
#include "rrk/rootfind.hpp"
#include "rrk/tableau.hpp"

namespace rrk {

/// How one step advances the solution and the clock:
///   baseline    u + dt*d,       t + dt        (gamma fixed at 1)
///   idt         u + gamma*dt*d, t + dt
///   relaxation  u + gamma*dt*d, t + gamma*dt
enum class StepMode { baseline, idt, relaxation };

/// Running sums accumulated during the stage loop: the update direction
/// d = sum_i b_i f_i and the entropy-change estimate
/// e = dt * sum_i b_i <eta'(y_i), f_i>.
struct StepAggregates {
  State d;
  double e = 0.0;
  int stage_count = 0;
};

/// Per-step root-solve settings. When scale_tol_by_entropy is set (the
/// default), the residual tolerance used for a step is
/// abs_tol * max(1, |eta(u^n)|); otherwise abs_tol is used as-is.
struct RelaxationConfig {
  RootConfig root;
  bool scale_tol_by_entropy = true;
};

struct SolveGammaDiagnostics {
  double residual_at_gamma = 0.0;
  double residual_at_one = 0.0;
  int iterations = 0;
  /// Set when the flat-residual policy returned gamma = 1 without a solve.
  bool degenerate = false;
};

struct StepOutput {
  State u_new;
  double t_new = 0.0;
  double gamma = 1.0;
  double residual_at_gamma = 0.0;
  double residual_at_one = 0.0;
  int rootfind_iterations = 0;
  bool degenerate_gamma = false;
  /// Negative-weight tableaus are accepted but void the dissipation
  /// guarantee; the flag makes that visible to callers.
  bool nonneg_weights = true;
};

struct SolveTrace {
  std::vector<double> times;
  std::vector<double> gammas;  // gammas[0] == 1 by convention
  std::vector<double> entropies;
  /// Residual at each step's accepted gamma (0 at index 0); makes root-solve
  /// quality observable across a whole run.
  std::vector<double> residuals;
  std::vector<State> states;
  int step_count() const { return static_cast<int>(times.size()) - 1; }
};

/// Thrown when an integration aborts; carries the trace up to the failure.
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& msg, SolveTrace trace)
      : std::runtime_error(msg), partial(std::move(trace)) {}
  SolveTrace partial;
};

/// Evaluates the stages y_i = u + dt * sum_j a_ij f_j of an explicit tableau
/// and accumulates d and e on the fly. Throws IntegrationError on a
/// non-finite rhs evaluation.
std::pair<std::vector<State>, StepAggregates> rk_stages(const OdeProblem& problem,
                                                        const ButcherTableau& tab,
                                                        double t, const State& u,
                                                        double dt);

/// r(gamma) = eta(u + gamma*dt*d) - eta(u) - gamma*e.
/// r(0) returns exactly 0; no arithmetic is performed in that case.
double residual(double gamma, const State& u, const StepAggregates& agg, double dt,
                const std::function<double(const State&)>& entropy);

/// r'(gamma) = <eta'(u + gamma*dt*d), dt*d> - e.
double residual_derivative(double gamma, const State& u, const StepAggregates& agg,
                           double dt,
                           const std::function<void(const State&, State&)>& entropy_gradient);

/// Finds the positive root of the residual, distinct from the trivial root
/// at zero. The root itself is resolved to machine precision (warm-started
/// bracketing, then a width-driven solve); cfg.root.abs_tol is the contract
/// on |r(gamma)| that the result must meet. Policy: if
/// max(|r(1)|, 0.5*|r'(1)|) falls below the tolerance the residual is flat
/// and gamma = 1 is returned; candidate roots with |gamma| < 1e-3 are
/// rejected and the solve is retried on [1e-3, hi]; a nonpositive root is
/// reported as an error, never accepted.
std::pair<double, SolveGammaDiagnostics> solve_gamma(const State& u,
                                                     const StepAggregates& agg,
                                                     double dt,
                                                     const OdeProblem& problem,
                                                     const RelaxationConfig& cfg,
                                                     double warm_start);

/// A convex functional and its gradient, for multi-entropy relaxation.
struct EntropyFunctional {
  std::function<double(const State&)> value;
  std::function<void(const State&, State&)> gradient;
};

/// Recomputes the aggregates of an already-evaluated stage set for another
/// entropy functional (d is entropy-independent; e is not).
StepAggregates aggregates_for_entropy(const OdeProblem& problem,
                                      const ButcherTableau& tab, double t, double dt,
                                      std::span<const State> stages,
                                      const EntropyFunctional& entropy);

/// gamma = min_i gamma_i over the per-entropy roots. With nonnegative weights
/// every entropy is then non-increasing.
double solve_gamma_multi(const State& u, std::span<const StepAggregates> aggs,
                         double dt, std::span<const EntropyFunctional> entropies,
                         const RelaxationConfig& cfg);

StepOutput step(const OdeProblem& problem, const ButcherTableau& tab, double t,
                const State& u, double dt, StepMode mode, const RelaxationConfig& cfg,
                double warm_start = 1.0);

/// Fixed-step time loop with warm-started gamma solves. The final step
/// shrinks dt to (t_end - t)/gamma_prev; in relaxation mode the shrink is
/// re-tried up to 5 times so the realized endpoint lands within 1e-8*dt of
/// t_end. The trace records the realized times.
SolveTrace integrate(const OdeProblem& problem, const ButcherTableau& tab, double t0,
                     const State& u0, double dt, double t_end, StepMode mode,
                     const RelaxationConfig& cfg);

}  // namespace rrk
