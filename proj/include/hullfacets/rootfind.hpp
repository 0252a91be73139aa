#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "hullfacets/errors.hpp"

namespace hullfacets {

// Brent's method on [a,b]; requires f(a) and f(b) of opposite sign
// (a zero endpoint is returned as-is).
inline double brent(const std::function<double(double)>& f, double a, double b,
                    double fa, double fb, double xtol = 0.0,
                    double rtol = 1e-15, std::size_t max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw ConvergenceFailure("root not bracketed");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (std::size_t it = 0; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * rtol * std::fabs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0) return b;
    if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
      d = e = m;  // bisect
    } else {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0)
        q = -q;
      else
        p = -p;
      if (2.0 * p < std::fmin(3.0 * m * q - std::fabs(tol * q),
                              std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw ConvergenceFailure("brent: iteration limit reached");
}

inline double brent(const std::function<double(double)>& f, double a, double b,
                    double xtol = 0.0, double rtol = 1e-15,
                    std::size_t max_iter = 200) {
  return brent(f, a, b, f(a), f(b), xtol, rtol, max_iter);
}

struct Bracket {
  double lo, hi, flo, fhi;
};

// Expands [lo,hi] geometrically until f changes sign. f must be evaluable on
// the whole expanded range; `upper` caps the search (infinity allowed).
inline Bracket expand_bracket(const std::function<double(double)>& f,
                              double lo, double hi, double upper,
                              std::size_t max_steps = 200) {
  double flo = f(lo), fhi = f(hi);
  for (std::size_t it = 0; it < max_steps; ++it) {
    if (flo == 0.0) return {lo, lo, 0.0, 0.0};
    if (fhi == 0.0) return {hi, hi, 0.0, 0.0};
    if ((flo > 0.0) != (fhi > 0.0)) return {lo, hi, flo, fhi};
    lo = hi;
    flo = fhi;
    hi = std::fmin(2.0 * hi, upper);
    if (hi <= lo) break;
    fhi = f(hi);
  }
  throw ConvergenceFailure("expand_bracket: no sign change found");
}

}  // namespace hullfacets
