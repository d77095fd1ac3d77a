#include "rrk/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace rrk::problems {

namespace {

// log(sqrt(e) + exp(x)) without overflow for large x
double log_sqrte_plus_exp(double x) {
  if (x > 0.5) return x + std::log1p(std::exp(0.5 - x));
  return std::log(std::exp(0.5) + std::exp(x));
}

}  // namespace

ProblemCatalogEntry conserved_exp_entropy() {
  ProblemCatalogEntry entry;
  entry.name = "conserved-exp-entropy";
  entry.default_u0 = {1.0, 0.5};
  entry.default_tspan = {0.0, 5.0};
  entry.default_dt = 0.05;

  OdeProblem& p = entry.problem;
  p.dimension = 2;
  p.classification = Classification::conservative;
  p.rhs = [](double, const State& u, State& du) {
    du[0] = -std::exp(u[1]);
    du[1] = std::exp(u[0]);
  };
  p.entropy = [](const State& u) { return std::exp(u[0]) + std::exp(u[1]); };
  p.entropy_gradient = [](const State& u, State& g) {
    g[0] = std::exp(u[0]);
    g[1] = std::exp(u[1]);
  };
  // The solution decays like u1 ~ -a*t, so the a*t terms are folded into the
  // logarithms to stay finite for large t.
  p.exact_solution = [](double t, State& u) {
    const double a = std::sqrt(M_E) + M_E;              // sqrt(e) + e
    const double l = log_sqrte_plus_exp(a * t);         // log(sqrt(e) + e^(a t))
    u[0] = std::log(M_E + std::exp(1.5)) - l;
    u[1] = std::log(a) + a * t - l;
  };
  return entry;
}

ProblemCatalogEntry dissipated_exp_entropy() {
  ProblemCatalogEntry entry;
  entry.name = "dissipated-exp-entropy";
  entry.default_u0 = {0.5};
  entry.default_tspan = {0.0, 2.0};
  entry.default_dt = 0.05;

  OdeProblem& p = entry.problem;
  p.dimension = 1;
  p.classification = Classification::dissipative;
  p.rhs = [](double, const State& u, State& du) { du[0] = -std::exp(u[0]); };
  p.entropy = [](const State& u) { return std::exp(u[0]); };
  p.entropy_gradient = [](const State& u, State& g) { g[0] = std::exp(u[0]); };
  p.exact_solution = [](double t, State& u) {
    u[0] = -std::log(std::exp(-0.5) + t);
  };
  return entry;
}

ProblemCatalogEntry nonlinear_pendulum() {
  ProblemCatalogEntry entry;
  entry.name = "nonlinear-pendulum";
  entry.default_u0 = {1.5, 1.0};
  entry.default_tspan = {0.0, 500.0};
  entry.default_dt = 0.9;
  entry.notes =
      "energy Hessian diag(1, cos(u2)) is indefinite for |u2| > pi/2; the "
      "default orbit crosses that border";

  OdeProblem& p = entry.problem;
  p.dimension = 2;
  p.classification = Classification::conservative;
  p.rhs = [](double, const State& u, State& du) {
    du[0] = -std::sin(u[1]);
    du[1] = u[0];
  };
  p.entropy = [](const State& u) { return 0.5 * u[0] * u[0] - std::cos(u[1]); };
  p.entropy_gradient = [](const State& u, State& g) {
    g[0] = u[0];
    g[1] = std::sin(u[1]);
  };
  return entry;
}

std::pair<ProblemCatalogEntry, ProblemCatalogEntry> oscillators() {
  ProblemCatalogEntry harmonic;
  harmonic.name = "harmonic-oscillator";
  harmonic.default_u0 = {1.0, 0.0};
  harmonic.default_tspan = {0.0, 5.0};
  harmonic.default_dt = 0.1;
  {
    OdeProblem& p = harmonic.problem;
    p.dimension = 2;
    p.classification = Classification::conservative;
    p.rhs = [](double, const State& u, State& du) {
      du[0] = -u[1];
      du[1] = u[0];
    };
    p.entropy = [](const State& u) { return 0.5 * (u[0] * u[0] + u[1] * u[1]); };
    p.entropy_gradient = [](const State& u, State& g) {
      g[0] = u[0];
      g[1] = u[1];
    };
    const State u0 = harmonic.default_u0;
    p.exact_solution = [u0](double t, State& u) {
      u[0] = std::cos(t) * u0[0] - std::sin(t) * u0[1];
      u[1] = std::sin(t) * u0[0] + std::cos(t) * u0[1];
    };
  }

  ProblemCatalogEntry nonlinear;
  nonlinear.name = "nonlinear-oscillator";
  nonlinear.default_u0 = {1.0, 0.0};
  nonlinear.default_tspan = {0.0, 5.0};
  nonlinear.default_dt = 0.1;
  {
    OdeProblem& p = nonlinear.problem;
    p.dimension = 2;
    p.classification = Classification::conservative;
    p.rhs = [](double, const State& u, State& du) {
      const double r2 = u[0] * u[0] + u[1] * u[1];
      du[0] = -r2 * u[1];
      du[1] = r2 * u[0];
    };
    p.entropy = [](const State& u) { return 0.5 * (u[0] * u[0] + u[1] * u[1]); };
    p.entropy_gradient = [](const State& u, State& g) {
      g[0] = u[0];
      g[1] = u[1];
    };
    // ||u||^2 is invariant, so the flow is a rotation at angular speed ||u0||^2.
    const State u0 = nonlinear.default_u0;
    const double w = u0[0] * u0[0] + u0[1] * u0[1];
    p.exact_solution = [u0, w](double t, State& u) {
      u[0] = std::cos(w * t) * u0[0] - std::sin(w * t) * u0[1];
      u[1] = std::sin(w * t) * u0[0] + std::cos(w * t) * u0[1];
    };
  }
  return {harmonic, nonlinear};
}

ProblemCatalogEntry lotka_volterra() {
  ProblemCatalogEntry entry;
  entry.name = "lotka-volterra";
  entry.default_u0 = {2.0, 1.0};
  entry.default_tspan = {0.0, 10.0};
  entry.default_dt = 0.05;
  entry.notes = "unit rate constants; Lyapunov functional convex for u > 0";

  OdeProblem& p = entry.problem;
  p.dimension = 2;
  p.classification = Classification::conservative;
  p.rhs = [](double, const State& u, State& du) {
    du[0] = u[0] * (1.0 - u[1]);
    du[1] = u[1] * (u[0] - 1.0);
  };
  p.entropy = [](const State& u) {
    return u[0] - std::log(u[0]) + u[1] - std::log(u[1]);
  };
  p.entropy_gradient = [](const State& u, State& g) {
    g[0] = 1.0 - 1.0 / u[0];
    g[1] = 1.0 - 1.0 / u[1];
  };
  return entry;
}

ProblemCatalogEntry by_name(const std::string& name) {
  if (name == "conserved-exp-entropy") return conserved_exp_entropy();
  if (name == "dissipated-exp-entropy") return dissipated_exp_entropy();
  if (name == "nonlinear-pendulum") return nonlinear_pendulum();
  if (name == "harmonic-oscillator") return oscillators().first;
  if (name == "nonlinear-oscillator") return oscillators().second;
  if (name == "lotka-volterra") return lotka_volterra();
  std::string known;
  for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown problem '" + name + "' (known: " + known + ")");
}

std::vector<std::string> catalog_names() {
  return {"conserved-exp-entropy", "dissipated-exp-entropy", "nonlinear-pendulum",
          "harmonic-oscillator",   "nonlinear-oscillator",   "lotka-volterra"};
}

}  // namespace rrk::problems
