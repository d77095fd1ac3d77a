#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "rrk/rootfind.hpp"

namespace {

const rrk::RootMethod kMethods[] = {rrk::RootMethod::bisection, rrk::RootMethod::brent,
                                    rrk::RootMethod::newton_safeguarded};

// Wraps f and records the evaluation range.
struct Recorder {
  std::function<double(double)> f;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double operator()(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    return f(x);
  }
};

}  // namespace

TEST_SUITE("rootfind") {

TEST_CASE("bracket_root expands to enclose the root") {
  rrk::RootConfig cfg;

  auto linear = [](double x) { return x - 2.0; };
  auto [lo1, hi1] = rrk::bracket_root(linear, 1.0, cfg);
  CHECK(lo1 < hi1);
  CHECK(linear(lo1) * linear(hi1) <= 0.0);
  CHECK(lo1 <= 2.0);
  CHECK(hi1 >= 2.0);

  // roots at 0 and 4 (quadratic formula); starting from 1 the expansion must
  // return a bracket around the positive root
  auto quad = [](double g) { return 0.005 * g * g - 0.02 * g; };
  auto [lo2, hi2] = rrk::bracket_root(quad, 1.0, cfg);
  CHECK(lo2 <= 4.0);
  CHECK(hi2 >= 4.0);
  CHECK(quad(lo2) * quad(hi2) <= 0.0);

  // double root: no sign change anywhere
  CHECK_THROWS_AS(rrk::bracket_root([](double x) { return x * x; }, 1.0, cfg),
                  rrk::BracketError);
}

TEST_CASE("find_root locates simple roots with every method") {
  for (auto method : kMethods) {
    CAPTURE(static_cast<int>(method));
    rrk::RootConfig cfg;
    cfg.method = method;
    cfg.abs_tol = 1e-13;
    cfg.x_tol = 1e-13;

    auto fsq = [](double x) { return x * x - 4.0; };
    auto dsq = [](double x) { return 2.0 * x; };
    const auto r1 = rrk::find_root(fsq, dsq, 0.0, 5.0, cfg);
    CHECK(r1.converged);
    CHECK(std::abs(r1.root - 2.0) <= 1e-12);

    // oracle: fixed-point iteration x <- cos(x) for the Dottie number
    double fp = 1.0;
    for (int k = 0; k < 200; ++k) fp = std::cos(fp);
    auto fcos = [](double x) { return std::cos(x) - x; };
    auto dcos = [](double x) { return -std::sin(x) - 1.0; };
    const auto r2 = rrk::find_root(fcos, dcos, 0.0, 1.0, cfg);
    CHECK(r2.converged);
    CHECK(std::abs(r2.root - fp) <= 1e-10);
    CHECK(std::abs(r2.root - 0.739085133215160642) <= 1e-10);

    auto quad = [](double g) { return 0.005 * g * g - 0.02 * g; };
    auto dquad = [](double g) { return 0.01 * g - 0.02; };
    const auto r3 = rrk::find_root(quad, dquad, 2.0, 6.0, cfg);
    CHECK(r3.converged);
    CHECK(std::abs(r3.root - 4.0) <= 1e-10);
  }
}

TEST_CASE("bisection halves the bracket every iteration") {
  rrk::RootConfig cfg;
  cfg.method = rrk::RootMethod::bisection;
  cfg.abs_tol = 1e-300;  // force the width criterion
  cfg.x_tol = 1e-12;
  auto f = [](double x) { return x * x * x - 2.0; };
  const double lo = 0.0, hi = 2.0;
  const auto res = rrk::find_root(f, nullptr, lo, hi, cfg);
  CHECK(res.converged);
  const double width_bound = (hi - lo) * std::pow(2.0, -res.iterations);
  CHECK(std::abs(res.root - std::cbrt(2.0)) <= width_bound + 1e-15);
}

TEST_CASE("all methods agree on strictly monotone brackets") {
  struct Case {
    std::function<double(double)> f, df;
    double lo, hi;
  };
  const Case cases[] = {
      {[](double x) { return x - 0.3; }, [](double) { return 1.0; }, 0.0, 1.0},
      {[](double x) { return std::exp(x) - 2.0; }, [](double x) { return std::exp(x); },
       0.0, 2.0},
      {[](double x) { return x * x * x - 2.0; }, [](double x) { return 3.0 * x * x; },
       0.0, 2.0},
      {[](double x) { return std::cos(x) - x; },
       [](double x) { return -std::sin(x) - 1.0; }, 0.0, 1.0},
  };
  rrk::RootConfig cfg;
  cfg.abs_tol = 1e-12;
  cfg.x_tol = 1e-13;
  for (const auto& c : cases) {
    std::vector<double> roots;
    for (auto method : kMethods) {
      cfg.method = method;
      const auto res = rrk::find_root(c.f, c.df, c.lo, c.hi, cfg);
      CHECK(res.converged);
      roots.push_back(res.root);
    }
    for (double r : roots) CHECK(std::abs(r - roots[0]) <= 10.0 * cfg.abs_tol);
  }
}

TEST_CASE("find_root never evaluates outside the bracket") {
  for (auto method : kMethods) {
    CAPTURE(static_cast<int>(method));
    rrk::RootConfig cfg;
    cfg.method = method;
    Recorder rec{[](double x) { return std::sin(3.0 * x) - 0.4; }};
    auto f = [&rec](double x) { return rec(x); };
    auto df = [](double x) { return 3.0 * std::cos(3.0 * x); };
    const double lo = 0.0, hi = 0.5;
    const auto res = rrk::find_root(f, df, lo, hi, cfg);
    CHECK(res.converged);
    CHECK(rec.lo >= lo);
    CHECK(rec.hi <= hi);
  }
}

TEST_CASE("iteration budget exhaustion is reported, not thrown") {
  rrk::RootConfig cfg;
  cfg.method = rrk::RootMethod::bisection;
  cfg.abs_tol = 1e-300;
  cfg.x_tol = 1e-300;
  cfg.max_iters = 5;
  const auto res =
      rrk::find_root([](double x) { return x - 0.3; }, nullptr, 0.0, 1.0, cfg);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations >= 5);
}

TEST_CASE("precondition violations throw") {
  rrk::RootConfig cfg;
  // not a bracket
  CHECK_THROWS_AS(
      rrk::find_root([](double x) { return x + 2.0; }, nullptr, 0.0, 1.0, cfg),
      std::invalid_argument);
  // newton without derivative
  cfg.method = rrk::RootMethod::newton_safeguarded;
  CHECK_THROWS_AS(
      rrk::find_root([](double x) { return x - 0.5; }, nullptr, 0.0, 1.0, cfg),
      std::invalid_argument);
  // bad config
  rrk::RootConfig bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(
      rrk::find_root([](double x) { return x - 0.5; }, nullptr, 0.0, 1.0, bad),
      std::invalid_argument);
}

TEST_CASE("newton falls back to bisection on flat derivatives") {
  rrk::RootConfig cfg;
  cfg.method = rrk::RootMethod::newton_safeguarded;
  auto f = [](double x) { return x - 0.5; };
  auto df = [](double) { return 0.0; };  // always triggers the fallback
  const auto res = rrk::find_root(f, df, 0.0, 1.0, cfg);
  CHECK(res.converged);
  CHECK(std::abs(res.root - 0.5) <= 1e-12);
}

}  // TEST_SUITE
