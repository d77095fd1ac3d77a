#pragma once

#include <cstddef>
#include <span>

namespace rrk::kernels {

/// Loops shorter than this run single-threaded even when OpenMP is enabled,
/// so small ODE states never pay the fork/join overhead.
inline constexpr std::ptrdiff_t parallel_grain = 4096;

/// Reductions are accumulated per fixed-size block and combined in block
/// order, so the result is identical for any thread count.
inline constexpr std::ptrdiff_t reduction_block = 4096;

/// Plain single-threaded reference implementations, kept for testing the
/// parallel kernels against and for the benchmark baseline.
namespace serial {

void add_scaled(std::span<double> out, std::span<const double> u, double alpha,
                std::span<const double> d);
void axpy(std::span<double> y, double alpha, std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
bool all_finite(std::span<const double> x);

}  // namespace serial

/// out = u + alpha * d
void add_scaled(std::span<double> out, std::span<const double> u, double alpha,
                std::span<const double> d);

/// y += alpha * x
void axpy(std::span<double> y, double alpha, std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
bool all_finite(std::span<const double> x);

}  // namespace rrk::kernels
