#include "rrk/kernels.hpp"

#include <cmath>
#include <vector>

namespace rrk::kernels {

namespace serial {

void add_scaled(std::span<double> out, std::span<const double> u, double alpha,
                std::span<const double> d) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = u[i] + alpha * d[i];
}

void axpy(std::span<double> y, double alpha, std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double dot(std::span<const double> x, std::span<const double> y) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  double acc = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum(std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  double acc = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

bool all_finite(std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  for (std::ptrdiff_t i = 0; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

}  // namespace serial

void add_scaled(std::span<double> out, std::span<const double> u, double alpha,
                std::span<const double> d) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = u[i] + alpha * d[i];
}

void axpy(std::span<double> y, double alpha, std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

namespace {

// Fixed-block reduction: per-block partials computed in parallel, combined in
// block order. The summation order never depends on the thread count.
template <typename BlockOp>
double blocked_reduce(std::ptrdiff_t n, BlockOp block_op) {
  const std::ptrdiff_t nblocks = (n + reduction_block - 1) / reduction_block;
  std::vector<double> partial(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < nblocks; ++k) {
    const std::ptrdiff_t lo = k * reduction_block;
    const std::ptrdiff_t hi = std::min(lo + reduction_block, n);
    partial[static_cast<std::size_t>(k)] = block_op(lo, hi);
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  if (n < parallel_grain) return serial::dot(x, y);
  return blocked_reduce(n, [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
    double acc = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) acc += x[i] * y[i];
    return acc;
  });
}

double sum(std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  if (n < parallel_grain) return serial::sum(x);
  return blocked_reduce(n, [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
    double acc = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) acc += x[i];
    return acc;
  });
}

bool all_finite(std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  if (n < parallel_grain) return serial::all_finite(x);
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (std::ptrdiff_t i = 0; i < n; ++i) ok = ok && std::isfinite(x[i]);
  return ok;
}

}  // namespace rrk::kernels
