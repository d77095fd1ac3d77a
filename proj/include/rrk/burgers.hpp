#pragma once

#include <functional>
#include <span>

#include "rrk/problem.hpp"

namespace rrk::burgers {

/// Uniform periodic grid on [x_lo, x_hi) with cell-centered samples.
struct Grid {
  int cells = 0;
  double x_lo = 0.0;
  double x_hi = 1.0;
  double dx() const { return (x_hi - x_lo) / cells; }
  double center(int j) const { return x_lo + (j + 0.5) * dx(); }
};

/// Two-point entropy-conservative flux for u_t + (u^2/2)_x = 0:
/// F(ul, ur) = (ul^2 + ul*ur + ur^2) / 6. Its telescoping sum annihilates
/// the discrete energy rate on a periodic grid.
inline double ec_flux(double ul, double ur) {
  return (ul * ul + ul * ur + ur * ur) / 6.0;
}

/// du_j = -(F_{j+1/2} - F_{j-1/2}) / dx with periodic indexing.
void ec_rhs(std::span<const double> u, double dx, std::span<double> out);

namespace serial {
void ec_rhs(std::span<const double> u, double dx, std::span<double> out);
}

/// dx * sum_j u_j^2 / 2 and dx * sum_j u_j. Throw on length mismatch.
double total_entropy(const State& u, const Grid& grid);
double total_mass(const State& u, const Grid& grid);

State sample_initial(const Grid& grid, const std::function<double(double)>& profile);

/// Semi-discretization as an OdeProblem: total energy as the entropy
/// functional (gradient dx*u) and total mass as a linear invariant anchored
/// at the sampled initial profile.
OdeProblem make_problem(const Grid& grid, const std::function<double(double)>& profile);

}  // namespace rrk::burgers
