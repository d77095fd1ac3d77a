#include "rrk/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rrk {

namespace {

void validate(const RootConfig& cfg) {
  if (!(cfg.abs_tol > 0.0)) throw std::invalid_argument("RootConfig: abs_tol must be positive");
  if (!(cfg.x_tol > 0.0)) throw std::invalid_argument("RootConfig: x_tol must be positive");
  if (cfg.max_iters < 1) throw std::invalid_argument("RootConfig: max_iters must be >= 1");
}

RootResult bisection(const std::function<double(double)>& f, double a, double b,
                     double fa, const RootConfig& cfg) {
  int iters = 0;
  while (iters < cfg.max_iters) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    ++iters;
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
    if (std::abs(fm) <= cfg.abs_tol || (b - a) <= cfg.x_tol)
      return {mid, fm, iters, true};
  }
  const double mid = 0.5 * (a + b);
  return {mid, f(mid), iters, false};
}

// Brent's zeroin: inverse quadratic interpolation and secant steps guarded by
// bisection. Iterates never leave the current bracket.
RootResult brent(const std::function<double(double)>& f, double a, double b,
                 double fa, double fb, const RootConfig& cfg) {
  double c = a, fc = fa;
  double d = b - a, e = b - a;
  int iters = 0;
  for (;;) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 =
        2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * cfg.x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= cfg.abs_tol || std::abs(xm) <= tol1)
      return {b, fb, iters, true};
    if (iters >= cfg.max_iters) return {b, fb, iters, false};

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {  // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    ++iters;
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
  }
}

RootResult newton_safeguarded(const std::function<double(double)>& f,
                              const std::function<double(double)>& fprime,
                              double a, double b, double fa, const RootConfig& cfg) {
  if (!fprime)
    throw std::invalid_argument("find_root: newton_safeguarded requires fprime");
  double x = 0.5 * (a + b);
  double fx = f(x);
  int iters = 1;
  for (;;) {
    if ((fa <= 0.0) == (fx <= 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    if (std::abs(fx) <= cfg.abs_tol || (b - a) <= cfg.x_tol)
      return {x, fx, iters, true};
    if (iters >= cfg.max_iters) return {x, fx, iters, false};
    const double dfx = fprime(x);
    double xn = x - fx / dfx;
    // Bisect when the Newton step leaves the bracket or the slope underflows.
    // Every third step bisects regardless, so one-sided Newton convergence
    // cannot stall the bracket-width criterion.
    if (iters % 3 == 0 || !(std::abs(dfx) >= 1e-300) || !std::isfinite(xn) ||
        xn <= a || xn >= b)
      xn = 0.5 * (a + b);
    x = xn;
    fx = f(x);
    ++iters;
  }
}

}  // namespace

std::pair<double, double> bracket_root(const std::function<double(double)>& f,
                                       double x0, const RootConfig& cfg) {
  validate(cfg);
  const double f0 = f(x0);
  if (!std::isfinite(f0))
    throw std::invalid_argument("bracket_root: f is not finite at the initial guess");
  if (f0 == 0.0) return {x0, x0};

  // One flank stays anchored at half-width 0.1 while the other grows
  // geometrically; the right flank is searched first. Anchoring keeps any
  // second root just below x0 (gamma = 0 in the relaxation solve) outside
  // the bracket while the far flank chases the wanted sign change.
  // Probes that overflow (entropies can blow up far from the root) count as
  // "no sign change" rather than poisoning the bracket.
  const auto crosses = [](double fa, double fb) {
    return std::isfinite(fa) && std::isfinite(fb) && fa * fb <= 0.0;
  };

  const double anchor_lo = x0 - 0.1;
  const double f_anchor_lo = f(anchor_lo);
  if (crosses(f_anchor_lo, f0)) return {anchor_lo, x0};
  double w = 0.1;
  for (int k = 0; k < 50; ++k) {
    const double hi = x0 + w;
    if (crosses(f_anchor_lo, f(hi))) return {anchor_lo, hi};
    w *= 2.0;
  }
  const double anchor_hi = x0 + 0.1;
  const double f_anchor_hi = f(anchor_hi);
  w = 0.2;
  for (int k = 0; k < 50; ++k) {
    const double lo = x0 - w;
    if (crosses(f(lo), f_anchor_hi)) return {lo, anchor_hi};
    w *= 2.0;
  }
  throw BracketError("bracket_root: no sign change within 50 expansions around " +
                     std::to_string(x0));
}

RootResult find_root(const std::function<double(double)>& f,
                     const std::function<double(double)>& fprime, double lo,
                     double hi, const RootConfig& cfg) {
  validate(cfg);
  if (!(lo <= hi)) throw std::invalid_argument("find_root: requires lo <= hi");
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0, true};
  if (fhi == 0.0) return {hi, 0.0, 0, true};
  if (!(flo * fhi < 0.0))
    throw std::invalid_argument("find_root: [lo, hi] does not bracket a sign change");

  switch (cfg.method) {
    case RootMethod::bisection:
      return bisection(f, lo, hi, flo, cfg);
    case RootMethod::brent:
      return brent(f, lo, hi, flo, fhi, cfg);
    case RootMethod::newton_safeguarded:
      return newton_safeguarded(f, fprime, lo, hi, flo, cfg);
  }
  throw std::logic_error("find_root: unreachable");
}

}  // namespace rrk
