#include <cmath>
#include <limits>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "rrk/kernels.hpp"

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

// Sizes on both sides of the parallel grain.
const std::size_t kSizes[] = {1, 3, 100, 4095, 4096, 5000, 40000};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("elementwise kernels match the serial reference bitwise") {
  for (std::size_t n : kSizes) {
    const auto u = random_vector(n, 11);
    const auto d = random_vector(n, 12);
    std::vector<double> a(n), b(n);

    rrk::kernels::serial::add_scaled(a, u, 0.37, d);
    rrk::kernels::add_scaled(b, u, 0.37, d);
    CHECK(a == b);

    a = u;
    b = u;
    rrk::kernels::serial::axpy(a, -1.25, d);
    rrk::kernels::axpy(b, -1.25, d);
    CHECK(a == b);
  }
}

TEST_CASE("reductions match the serial reference to roundoff") {
  for (std::size_t n : kSizes) {
    const auto x = random_vector(n, 21);
    const auto y = random_vector(n, 22);
    const double ds = rrk::kernels::serial::dot(x, y);
    const double dp = rrk::kernels::dot(x, y);
    CHECK(std::abs(ds - dp) <= 1e-12 * std::max(1.0, std::abs(ds)));
    const double ss = rrk::kernels::serial::sum(x);
    const double sp = rrk::kernels::sum(x);
    CHECK(std::abs(ss - sp) <= 1e-12 * std::max(1.0, std::abs(ss)));
  }
}

TEST_CASE("blocked reductions do not depend on the thread count") {
  const auto x = random_vector(100000, 31);
  const auto y = random_vector(100000, 32);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double d1 = rrk::kernels::dot(x, y);
  const double s1 = rrk::kernels::sum(x);
  omp_set_num_threads(4);
  const double d4 = rrk::kernels::dot(x, y);
  const double s4 = rrk::kernels::sum(x);
  omp_set_num_threads(saved);
  CHECK(d1 == d4);
  CHECK(s1 == s4);
#else
  // the blocked combine order differs from plain left-to-right summation,
  // but it must still be reproducible
  CHECK(rrk::kernels::dot(x, y) == rrk::kernels::dot(x, y));
  CHECK(rrk::kernels::sum(x) == rrk::kernels::sum(x));
#endif
}

TEST_CASE("all_finite flags the bad entry wherever it sits") {
  for (std::size_t n : {100ul, 5000ul}) {
    auto v = random_vector(n, 41);
    CHECK(rrk::kernels::all_finite(v));
    CHECK(rrk::kernels::serial::all_finite(v));
    v[n / 2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(rrk::kernels::all_finite(v));
    v[n / 2] = std::numeric_limits<double>::infinity();
    CHECK_FALSE(rrk::kernels::all_finite(v));
    CHECK_FALSE(rrk::kernels::serial::all_finite(v));
  }
}

}  // TEST_SUITE
