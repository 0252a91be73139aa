#pragma once

// Shared verification helpers: independent alternative quadratures and the
// spline-differentiated line-distance survival used by the identity checks.

#include <cmath>
#include <vector>

#include "hullfacets/interp.hpp"
#include "hullfacets/kernels.hpp"
#include "hullfacets/quadrature.hpp"
#include "hullfacets/radial_model.hpp"

namespace testutil {

using namespace hullfacets;

// Direct d=2 plane-distance survival: (2/pi) int arccos(x/y) |d(F^2)(y)|
// = (4/pi) int_x^sup arccos(x/y) F(y) f(y) dy. Independent of the kernel
// module's substituted route.
inline double plane_distance_d2_direct(const RadialModel& m, double x) {
  quad::Config cfg;
  auto g = [&](double y) {
    return std::acos(std::min(x / y, 1.0)) * m.survival(y) * m.density(y);
  };
  quad::Result r;
  if (std::isfinite(m.support_upper)) {
    r = quad::integrate(g, x, m.support_upper, cfg);
  } else {
    r = quad::integrate(
        [&](double t) {
          const double y = x / t;
          return g(y) * (y / t);
        },
        0.0, 1.0, cfg);
  }
  return r.value * (4.0 / 3.14159265358979323846);
}

// Tabulated line-distance survival with a differentiable spline through it.
// Unbounded supports are compressed through s = y/(y+3) and capped where
// the survival is negligible.
struct LineSurvivalSpline {
  CubicSpline spline;
  double cap;
  double scale = 3.0;
  bool compressed;

  double deriv(double y) const {
    if (y >= cap) return 0.0;
    if (!compressed) return spline.derivative(y);
    const double s = y / (y + scale);
    return spline.derivative(s) * scale / ((y + scale) * (y + scale));
  }
};

inline LineSurvivalSpline tabulate_line_survival(const RadialModel& m,
                                                 int nodes, double cap) {
  LineSurvivalSpline out;
  out.compressed = !std::isfinite(m.support_upper);
  out.cap = out.compressed ? cap : m.support_upper;
  quad::Config cfg;
  cfg.rel_tol = 1e-8;
  std::vector<double> xs(static_cast<std::size_t>(nodes) + 1),
      ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double t = static_cast<double>(i) / nodes;
    double y;
    if (out.compressed) {
      const double s_max = out.cap / (out.cap + out.scale);
      xs[i] = t * s_max;
      y = out.scale * xs[i] / (1.0 - xs[i]);
    } else {
      xs[i] = t * out.cap;
      y = xs[i];
    }
    ys[i] = pair_plane_survival(m, y, cfg).value;
  }
  out.spline = CubicSpline(xs, ys);
  return out;
}

// Left side of the cap identity: int_u^sup (1-u^2/y^2)^{(d-3)/2} |dF0(y)|,
// evaluated through y = u/cos(phi) so the d=2 endpoint factor disappears.
// The right side is the squared pair-norm survival K(u)^2.
inline double line_survival_cap_integral(const LineSurvivalSpline& fs,
                                         const RadialModel& m, double u) {
  const double ymax = std::min(fs.cap, m.support_upper);
  const double phimax = std::acos(std::min(u / ymax, 1.0));
  const int d = m.dim;
  quad::Config cfg;
  cfg.rel_tol = 1e-8;
  cfg.abs_tol = 1e-11;
  auto f = [&](double phi) {
    const double cp = std::cos(phi);
    const double y = u / cp;
    return std::fabs(fs.deriv(y)) * std::pow(std::sin(phi), d - 2) * u /
           (cp * cp);
  };
  return quad::integrate(f, 0.0, phimax, cfg).value;
}

}  // namespace testutil
