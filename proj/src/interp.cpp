#include "hullfacets/interp.hpp"

#include <algorithm>
#include <cmath>

#include "hullfacets/errors.hpp"

namespace hullfacets {

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw InvalidArgs("pchip: need >= 2 nodes");
  for (size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i] < x_[i + 1])) throw InvalidArgs("pchip: x not increasing");

  std::vector<double> h(n - 1), delta(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  m_.assign(n, 0.0);
  if (n == 2) {
    m_[0] = m_[1] = delta[0];
    return;
  }
  // Interior: weighted harmonic mean when the secants share a sign.
  for (size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] > 0.0) {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // Ends: one-sided three-point estimate, clamped to keep shape.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0)
      m = 0.0;
    else if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0))
      m = 3.0 * d0;
    return m;
  };
  m_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  m_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

size_t PchipInterpolant::locate(double x) const {
  size_t lo =
      std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  if (lo == 0) return 0;
  if (lo >= x_.size()) return x_.size() - 2;
  return lo - 1;
}

double PchipInterpolant::operator()(double x) const {
  const size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
}

double PchipInterpolant::derivative(double x) const {
  const size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double dh00 = (6 * t2 - 6 * t) / h, dh10 = 3 * t2 - 4 * t + 1;
  const double dh01 = (-6 * t2 + 6 * t) / h, dh11 = 3 * t2 - 2 * t;
  return dh00 * y_[i] + dh10 * m_[i] + dh01 * y_[i + 1] + dh11 * m_[i + 1];
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 4 || y_.size() != n) throw InvalidArgs("spline: need >= 4 nodes");
  for (size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i] < x_[i + 1])) throw InvalidArgs("spline: x not increasing");

  std::vector<double> h(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  // Second derivatives sig[] with not-a-knot ends. The end conditions
  //   h1*sig0 = (h0+h1)*sig1 - h0*sig2
  //   h_{n-3}*sig_{n-1} = (h_{n-3}+h_{n-2})*sig_{n-2} - h_{n-2}*sig_{n-3}
  // are substituted into the first and last interior rows. The reduced
  // system over sig[1..n-2] stays strictly diagonally dominant, so the
  // pivot-free Thomas sweep is safe for uniform grids as well.
  const size_t m = n - 2;
  std::vector<double> a(m, 0.0), b(m, 0.0), c(m, 0.0), r(m, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    a[i - 1] = h[i - 1];
    b[i - 1] = 2.0 * (h[i - 1] + h[i]);
    c[i - 1] = h[i];
    r[i - 1] =
        6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }
  a[0] = 0.0;
  b[0] += h[0] * (h[0] + h[1]) / h[1];
  c[0] -= h[0] * h[0] / h[1];
  c[m - 1] = 0.0;
  b[m - 1] += h[n - 2] * (h[n - 3] + h[n - 2]) / h[n - 3];
  a[m - 1] -= h[n - 2] * h[n - 2] / h[n - 3];

  for (size_t i = 1; i < m; ++i) {
    const double f = a[i] / b[i - 1];
    b[i] -= f * c[i - 1];
    r[i] -= f * r[i - 1];
  }
  std::vector<double> sig(n, 0.0);
  sig[m] = r[m - 1] / b[m - 1];
  for (size_t i = m - 1; i-- > 0;)
    sig[i + 1] = (r[i] - c[i] * sig[i + 2]) / b[i];
  sig[0] = ((h[0] + h[1]) * sig[1] - h[0] * sig[2]) / h[1];
  sig[n - 1] =
      ((h[n - 3] + h[n - 2]) * sig[n - 2] - h[n - 2] * sig[n - 3]) / h[n - 3];

  c1_.resize(n - 1);
  c2_.resize(n - 1);
  c3_.resize(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    c2_[i] = sig[i] / 2.0;
    c3_[i] = (sig[i + 1] - sig[i]) / (6.0 * h[i]);
    c1_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * sig[i] + sig[i + 1]) / 6.0;
  }
}

size_t CubicSpline::locate(double x) const {
  size_t lo = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  if (lo == 0) return 0;
  if (lo >= x_.size()) return x_.size() - 2;
  return lo - 1;
}

double CubicSpline::operator()(double x) const {
  const size_t i = locate(x);
  const double t = x - x_[i];
  return y_[i] + t * (c1_[i] + t * (c2_[i] + t * c3_[i]));
}

double CubicSpline::derivative(double x) const {
  const size_t i = locate(x);
  const double t = x - x_[i];
  return c1_[i] + t * (2.0 * c2_[i] + t * 3.0 * c3_[i]);
}

}  // namespace hullfacets
