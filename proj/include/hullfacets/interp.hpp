#pragma once

#include <vector>

namespace hullfacets {

// Monotone cubic Hermite interpolant (Fritsch-Carlson slope limiting).
// Preserves monotonicity of the data; used for survival-function caches.
class PchipInterpolant {
public:
  PchipInterpolant() = default;
  PchipInterpolant(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

private:
  size_t locate(double x) const;
  std::vector<double> x_, y_, m_;  // nodes, values, node slopes
};

// Not-a-knot cubic spline. Higher-order derivatives than PCHIP; does not
// guarantee monotonicity. Used where a smooth numeric derivative is needed.
class CubicSpline {
public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

private:
  size_t locate(double x) const;
  std::vector<double> x_, y_, c1_, c2_, c3_;  // piecewise cubic coefficients
};

}  // namespace hullfacets
