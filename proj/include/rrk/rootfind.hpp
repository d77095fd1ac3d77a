#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

namespace rrk {

enum class RootMethod { bisection, brent, newton_safeguarded };

struct RootConfig {
  double abs_tol = 1e-14;  // convergence on |f(x)|
  double x_tol = 1e-13;    // convergence on bracket width
  int max_iters = 200;
  RootMethod method = RootMethod::brent;
};

struct RootResult {
  double root = 0.0;
  double f_at_root = 0.0;
  int iterations = 0;
  /// True iff |f_at_root| <= abs_tol or the final bracket width <= x_tol.
  bool converged = false;
};

/// Thrown when no sign change can be found around the initial guess.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expands geometrically around x0 (initial half-width 0.1, growth factor 2,
/// at most 50 expansions) until a sign change is found. The right flank is
/// probed before the left one. Throws BracketError if no sign change exists
/// within the cap.
std::pair<double, double> bracket_root(const std::function<double(double)>& f,
                                       double x0, const RootConfig& cfg);

/// Solves f(x) = 0 on a bracketing interval [lo, hi] with f(lo)*f(hi) <= 0.
/// fprime is only consulted by newton_safeguarded, which falls back to
/// bisection whenever the Newton iterate leaves the bracket or the derivative
/// underflows. No method ever evaluates f outside [lo, hi]. Throws
/// std::invalid_argument on a non-bracketing interval; an exhausted iteration
/// budget is reported through converged = false.
RootResult find_root(const std::function<double(double)>& f,
                     const std::function<double(double)>& fprime, double lo,
                     double hi, const RootConfig& cfg);

}  // namespace rrk
