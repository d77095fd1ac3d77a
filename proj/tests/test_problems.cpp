#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "rrk/problem.hpp"
#include "rrk/problems.hpp"

namespace {

using rrk::State;

std::vector<rrk::problems::ProblemCatalogEntry> whole_catalog() {
  std::vector<rrk::problems::ProblemCatalogEntry> entries;
  for (const auto& name : rrk::problems::catalog_names())
    entries.push_back(rrk::problems::by_name(name));
  return entries;
}

State random_state(int dim, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  State u(static_cast<std::size_t>(dim));
  for (auto& x : u) x = dist(rng);
  return u;
}

// Positive states for the log-form Lyapunov functional.
std::pair<double, double> sample_box(const std::string& name) {
  if (name == "lotka-volterra") return {0.2, 2.2};
  return {-2.0, 2.0};
}

}  // namespace

TEST_SUITE("problems") {

TEST_CASE("conserved exponential entropy: values and cancellation") {
  const auto entry = rrk::problems::conserved_exp_entropy();
  const auto& p = entry.problem;
  CHECK(p.dimension == 2);
  CHECK(p.classification == rrk::Classification::conservative);

  // oracle: evaluate the two exponentials
  const double eta0 = std::exp(1.0) + std::exp(0.5);
  CHECK(p.entropy(entry.default_u0) == doctest::Approx(eta0).epsilon(1e-15));
  CHECK(p.entropy(entry.default_u0) ==
        doctest::Approx(4.36700309915917338).epsilon(1e-15));

  const State at0 = p.eval_exact(0.0);
  CHECK(std::abs(at0[0] - 1.0) <= 1e-13);
  CHECK(std::abs(at0[1] - 0.5) <= 1e-13);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const State u = random_state(2, rng, -2.0, 2.0);
    CHECK(rrk::entropy_rate(p, 0.0, u) == 0.0);  // -e^a e^b + e^b e^a
  }
}

TEST_CASE("dissipated exponential entropy: exact solution and sign") {
  const auto entry = rrk::problems::dissipated_exp_entropy();
  const auto& p = entry.problem;
  CHECK(p.eval_exact(0.0)[0] == doctest::Approx(0.5).epsilon(1e-15));
  // oracle: evaluate the printed closed form at t = 1
  CHECK(p.eval_exact(1.0)[0] ==
        doctest::Approx(-std::log(std::exp(-0.5) + 1.0)).epsilon(1e-15));
  CHECK(p.eval_exact(1.0)[0] ==
        doctest::Approx(-0.474076984180106681).epsilon(1e-15));

  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const State u = random_state(1, rng, -2.0, 2.0);
    CHECK(rrk::entropy_rate(p, 0.0, u) < 0.0);  // -e^{2u}
  }
}

TEST_CASE("pendulum: energy value, cancellation, convexity note") {
  const auto entry = rrk::problems::nonlinear_pendulum();
  const auto& p = entry.problem;
  // oracle: evaluate cos(1)
  CHECK(p.entropy(entry.default_u0) ==
        doctest::Approx(1.125 - std::cos(1.0)).epsilon(1e-15));
  CHECK(p.entropy(entry.default_u0) ==
        doctest::Approx(0.584697694131860283).epsilon(1e-14));
  CHECK(entry.default_dt == 0.9);
  CHECK_FALSE(entry.notes.empty());  // indefinite-Hessian caveat is recorded

  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const State u = random_state(2, rng, -2.0, 2.0);
    CHECK(rrk::entropy_rate(p, 0.0, u) == 0.0);  // -u1 sin(u2) + sin(u2) u1
  }
}

TEST_CASE("oscillators: rotations and antisymmetry") {
  const auto [harmonic, nonlinear] = rrk::problems::oscillators();

  const State quarter = harmonic.problem.eval_exact(M_PI / 2.0);
  CHECK(std::abs(quarter[0] - 0.0) <= 1e-15);
  CHECK(std::abs(quarter[1] - 1.0) <= 1e-15);

  // ||u0||^2 = 1, so at t = pi the nonlinear oscillator has rotated by pi
  const State half = nonlinear.problem.eval_exact(M_PI);
  CHECK(std::abs(half[0] + 1.0) <= 1e-15);
  CHECK(std::abs(half[1] - 0.0) <= 1e-15);

  std::mt19937_64 rng(10);
  for (int k = 0; k < 100; ++k) {
    const State u = random_state(2, rng, -2.0, 2.0);
    // the commuted products cancel exactly for the rotation
    CHECK(rrk::entropy_rate(harmonic.problem, 0.0, u) == 0.0);
    const double scale = rrk::entropy_rate_scale(nonlinear.problem, 0.0, u);
    CHECK(std::abs(rrk::entropy_rate(nonlinear.problem, 0.0, u)) <=
          1e-14 * std::max(1.0, scale));
  }
}

TEST_CASE("catalog-wide consistency") {
  std::mt19937_64 rng(11);
  for (const auto& entry : whole_catalog()) {
    CAPTURE(entry.name);
    const auto& p = entry.problem;
    CHECK(static_cast<int>(entry.default_u0.size()) == p.dimension);
    const auto [lo, hi] = sample_box(entry.name);

    // gradient matches centered finite differences of the entropy
    for (int k = 0; k < 20; ++k) {
      const State u = random_state(p.dimension, rng, lo, hi);
      CHECK(rrk::gradient_fd_mismatch(p, u) <= 1e-6);
    }

    // classification holds at sampled states
    for (int k = 0; k < 100; ++k) {
      const State u = random_state(p.dimension, rng, lo, hi);
      const double rate = rrk::entropy_rate(p, 0.0, u);
      const double scale = rrk::entropy_rate_scale(p, 0.0, u);
      if (p.classification == rrk::Classification::conservative)
        CHECK(std::abs(rate) <= 1e-13 * std::max(1.0, scale));
      else if (p.classification == rrk::Classification::dissipative)
        CHECK(rate <= 1e-13 * std::max(1.0, scale));
    }

    if (!p.has_exact_solution()) continue;

    // exact_solution(t0) reproduces u0
    const State at0 = p.eval_exact(entry.default_tspan.first);
    for (int i = 0; i < p.dimension; ++i)
      CHECK(std::abs(at0[static_cast<std::size_t>(i)] -
                     entry.default_u0[static_cast<std::size_t>(i)]) <= 1e-13);

    // the exact solution satisfies the ODE: centered differences vs rhs
    const double t1 = entry.default_tspan.second;
    for (int k = 0; k < 20; ++k) {
      const double t = entry.default_tspan.first +
                       (t1 - entry.default_tspan.first) * (k + 0.5) / 20.0;
      const double h = 1e-6 * std::max(1.0, std::abs(t));
      const State up = p.eval_exact(t + h);
      const State um = p.eval_exact(t - h);
      const State f = p.eval_rhs(t, p.eval_exact(t));
      double fnorm = 0.0;
      for (double x : f) fnorm = std::max(fnorm, std::abs(x));
      for (int i = 0; i < p.dimension; ++i) {
        const double fd = (up[static_cast<std::size_t>(i)] -
                           um[static_cast<std::size_t>(i)]) / (2.0 * h);
        CHECK(std::abs(fd - f[static_cast<std::size_t>(i)]) <=
              1e-6 * std::max(1.0, fnorm));
      }
    }
  }
}

TEST_CASE("unknown catalog name") {
  CHECK_THROWS_AS(rrk::problems::by_name("three-body"), std::invalid_argument);
}

}  // TEST_SUITE
