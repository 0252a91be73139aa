#pragma once

// Thin wrappers around the special functions the kernels and asymptotics
// need. Everything that can overflow for large arguments has a log-space
// variant; callers combine logs and exponentiate last.

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

namespace hullfacets::sf {

inline double lgamma(double x) { return std::lgamma(x); }

inline double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double beta(double a, double b) { return std::exp(lbeta(a, b)); }

// Regularized incomplete beta I_x(a,b).
inline double ibeta(double a, double b, double x) {
  return boost::math::ibeta(a, b, x);
}

// Complement 1 - I_x(a,b), stable near x=1.
inline double ibetac(double a, double b, double x) {
  return boost::math::ibetac(a, b, x);
}

// Regularized upper incomplete gamma Q(a,x).
inline double gamma_q(double a, double x) { return boost::math::gamma_q(a, x); }

// log C(n,k) via log-gamma; n may exceed any integer type downstream.
inline double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace hullfacets::sf
