#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rrk/problem.hpp"

namespace rrk::problems {

struct ProblemCatalogEntry {
  std::string name;
  OdeProblem problem;
  State default_u0;
  std::pair<double, double> default_tspan{0.0, 1.0};
  double default_dt = 0.1;
  std::string notes;
};

/// u1' = -exp(u2), u2' = exp(u1) with eta = exp(u1) + exp(u2) conserved;
/// closed-form solution known.
ProblemCatalogEntry conserved_exp_entropy();

/// Scalar u' = -exp(u) with eta = exp(u) dissipated; u(t) = -log(e^-1/2 + t).
ProblemCatalogEntry dissipated_exp_entropy();

/// u1' = -sin(u2), u2' = u1 with energy u1^2/2 - cos(u2) conserved. The
/// energy Hessian is indefinite for |u2| > pi/2, which the default orbit
/// crosses (see notes).
ProblemCatalogEntry nonlinear_pendulum();

/// Harmonic oscillator (rotation) and the cubic nonlinear oscillator, both
/// with eta = ||u||^2 / 2 and exact rotation solutions from the default u0.
std::pair<ProblemCatalogEntry, ProblemCatalogEntry> oscillators();

/// Lotka-Volterra with the log-form Lyapunov functional
/// V(u) = u1 - log(u1) + u2 - log(u2), convex for u > 0. Unit rate
/// constants and u0 = (2, 1) are this library's defaults.
ProblemCatalogEntry lotka_volterra();

ProblemCatalogEntry by_name(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace rrk::problems
