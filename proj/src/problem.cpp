#include "rrk/problem.hpp"

#include <cmath>
#include <stdexcept>

#include "rrk/kernels.hpp"

namespace rrk {

State OdeProblem::eval_exact(double t) const {
  if (!exact_solution) throw std::logic_error("OdeProblem: no exact solution available");
  State u(static_cast<std::size_t>(dimension));
  exact_solution(t, u);
  return u;
}

State OdeProblem::eval_rhs(double t, const State& u) const {
  State du(u.size());
  rhs(t, u, du);
  return du;
}

State OdeProblem::eval_gradient(const State& u) const {
  State g(u.size());
  entropy_gradient(u, g);
  return g;
}

double entropy_rate(const OdeProblem& p, double t, const State& u) {
  const State g = p.eval_gradient(u);
  const State f = p.eval_rhs(t, u);
  return kernels::dot(g, f);
}

double entropy_rate_scale(const OdeProblem& p, double t, const State& u) {
  const State g = p.eval_gradient(u);
  const State f = p.eval_rhs(t, u);
  return std::sqrt(kernels::dot(g, g)) * std::sqrt(kernels::dot(f, f));
}

double gradient_fd_mismatch(const OdeProblem& p, const State& u) {
  const State g = p.eval_gradient(u);
  double norm_g = std::sqrt(kernels::dot(g, g));
  double worst = 0.0;
  State up = u, um = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(u[i]));
    up[i] = u[i] + h;
    um[i] = u[i] - h;
    const double fd = (p.entropy(up) - p.entropy(um)) / (up[i] - um[i]);
    up[i] = u[i];
    um[i] = u[i];
    worst = std::max(worst, std::abs(fd - g[i]) / std::max(1.0, norm_g));
  }
  return worst;
}

}  // namespace rrk
