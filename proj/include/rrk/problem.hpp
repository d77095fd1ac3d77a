#pragma once

#include <functional>
#include <vector>

namespace rrk {

using State = std::vector<double>;

/// Sign of <eta'(u), f(t,u)> the problem guarantees: zero everywhere
/// (conservative), nonpositive everywhere (dissipative), or unconstrained.
enum class Classification { conservative, dissipative, general };

/// A linear functional <weights, u> that stays constant along solutions.
struct LinearInvariant {
  State weights;
  double reference = 0.0;
};

/// Right-hand side du/dt = f(t, u) together with the convex functional eta
/// whose discrete evolution the integrator enforces.
struct OdeProblem {
  int dimension = 0;
  std::function<void(double t, const State& u, State& du)> rhs;
  std::function<double(const State& u)> entropy;
  std::function<void(const State& u, State& g)> entropy_gradient;
  /// Empty when no closed-form solution is known.
  std::function<void(double t, State& u)> exact_solution;
  std::vector<LinearInvariant> linear_invariants;
  Classification classification = Classification::general;

  bool has_exact_solution() const { return static_cast<bool>(exact_solution); }
  State eval_exact(double t) const;
  State eval_rhs(double t, const State& u) const;
  State eval_gradient(const State& u) const;
};

/// <eta'(u), f(t, u)>, the instantaneous entropy rate.
double entropy_rate(const OdeProblem& p, double t, const State& u);

/// ||eta'(u)|| * ||f(t, u)||, the natural scale for entropy-rate tolerances.
double entropy_rate_scale(const OdeProblem& p, double t, const State& u);

/// Largest relative mismatch between entropy_gradient and a centered finite
/// difference of entropy at u (consistency check for problem definitions).
double gradient_fd_mismatch(const OdeProblem& p, const State& u);

}  // namespace rrk
