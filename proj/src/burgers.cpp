#include "rrk/burgers.hpp"

#include <stdexcept>

#include "rrk/kernels.hpp"

namespace rrk::burgers {

namespace serial {

void ec_rhs(std::span<const double> u, double dx, std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double ul = u[(j + n - 1) % n];
    const double uc = u[j];
    const double ur = u[(j + 1) % n];
    out[j] = -(ec_flux(uc, ur) - ec_flux(ul, uc)) / dx;
  }
}

}  // namespace serial

void ec_rhs(std::span<const double> u, double dx, std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (n >= kernels::parallel_grain)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double ul = u[(j + n - 1) % n];
    const double uc = u[j];
    const double ur = u[(j + 1) % n];
    out[j] = -(ec_flux(uc, ur) - ec_flux(ul, uc)) / dx;
  }
}

namespace {

void check_grid(const Grid& grid) {
  if (grid.cells < 4) throw std::invalid_argument("burgers: need at least 4 cells");
  if (!(grid.dx() > 0.0)) throw std::invalid_argument("burgers: domain must have positive width");
}

void check_length(const State& u, const Grid& grid, const char* what) {
  if (static_cast<int>(u.size()) != grid.cells)
    throw std::invalid_argument(std::string(what) + ": state length does not match grid");
}

}  // namespace

double total_entropy(const State& u, const Grid& grid) {
  check_length(u, grid, "total_entropy");
  return 0.5 * grid.dx() * kernels::dot(u, u);
}

double total_mass(const State& u, const Grid& grid) {
  check_length(u, grid, "total_mass");
  return grid.dx() * kernels::sum(u);
}

State sample_initial(const Grid& grid, const std::function<double(double)>& profile) {
  check_grid(grid);
  State u(static_cast<std::size_t>(grid.cells));
  for (int j = 0; j < grid.cells; ++j) u[static_cast<std::size_t>(j)] = profile(grid.center(j));
  return u;
}

OdeProblem make_problem(const Grid& grid, const std::function<double(double)>& profile) {
  check_grid(grid);
  const double dx = grid.dx();
  const State u0 = sample_initial(grid, profile);

  OdeProblem p;
  p.dimension = grid.cells;
  p.classification = Classification::conservative;
  p.rhs = [dx](double, const State& u, State& du) { ec_rhs(u, dx, du); };
  p.entropy = [dx](const State& u) { return 0.5 * dx * kernels::dot(u, u); };
  p.entropy_gradient = [dx](const State& u, State& g) {
    for (std::size_t j = 0; j < u.size(); ++j) g[j] = dx * u[j];
  };
  LinearInvariant mass;
  mass.weights.assign(u0.size(), dx);
  mass.reference = total_mass(u0, grid);
  p.linear_invariants.push_back(std::move(mass));
  return p;
}

}  // namespace rrk::burgers
