#include "hullfacets/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "hullfacets/errors.hpp"

namespace hullfacets::quad {
namespace {

// Gauss-Kronrod 7/15 nodes and weights (positive half, node 7 is the center).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct Segment {
  double a, b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

// One GK15 pass; the error estimate follows the usual rescaling that keeps
// it sharp on smooth segments instead of |K15-G7| alone.
Segment gk15(const Fn& f, double a, double b, int& evals) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);

  double fv1[7], fv2[7];
  const double fc = f(c);
  evals += 15;

  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const double sum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }
  if (!std::isfinite(resk))
    throw QuadratureFailure("non-finite integrand value", resk, INFINITY);

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  resasc *= std::abs(h);
  resabs *= std::abs(h);

  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(eps50 * resabs, err);

  return Segment{a, b, resk * h, err};
}

}  // namespace

Result integrate_segments(const Fn& f, const std::vector<double>& pts,
                          const Config& cfg) {
  if (pts.size() < 2) throw InvalidArgs("need at least two breakpoints");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol >= 0.0) ||
      cfg.max_subdivisions < 10)
    throw InvalidArgs("quadrature config: tolerances must be positive and "
                      "max_subdivisions at least 10");
  Result out;
  std::priority_queue<Segment> heap;
  double total = 0.0, toterr = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i] < pts[i + 1])) throw InvalidArgs("breakpoints not increasing");
    Segment s = gk15(f, pts[i], pts[i + 1], out.evaluations);
    total += s.value;
    toterr += s.error;
    heap.push(s);
  }

  int splits = 0;
  while (toterr > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (splits >= cfg.max_subdivisions)
      throw QuadratureFailure("tolerance not reached after max subdivisions",
                              total, toterr);
    Segment worst = heap.top();
    heap.pop();
    total -= worst.value;
    toterr -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at rounding resolution; keep its estimate and move on.
      total += worst.value;
      worst.error = 0.0;
      heap.push(worst);
      continue;
    }
    Segment left = gk15(f, worst.a, mid, out.evaluations);
    Segment right = gk15(f, mid, worst.b, out.evaluations);
    total += left.value + right.value;
    toterr += left.error + right.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  out.value = total;
  out.abs_error = toterr;
  return out;
}

Result integrate(const Fn& f, double a, double b, const Config& cfg) {
  if (a == b) return Result{};
  return integrate_segments(f, {a, b}, cfg);
}

Result integrate_upper_inf(const Fn& f, double a, const Config& cfg) {
  if (!(a > 0.0)) throw InvalidArgs("integrate_upper_inf needs a > 0");
  // y = a/t, dy = -a/t^2 dt maps (0,1] onto [a,inf).
  auto g = [&](double t) {
    const double y = a / t;
    return f(y) * (a / (t * t));
  };
  return integrate(g, 0.0, 1.0, cfg);
}

Result integrate_to(const Fn& f, double a, double b, const Config& cfg) {
  if (std::isfinite(b)) return integrate(f, a, b, cfg);
  if (a > 0.0) return integrate_upper_inf(f, a, cfg);
  Result head = integrate(f, a, 1.0, cfg);
  Result tail = integrate_upper_inf(f, 1.0, cfg);
  head += tail;
  return head;
}

}  // namespace hullfacets::quad
