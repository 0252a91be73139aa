#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace hullfacets {

// Slowly varying factor L(s) together with (log L)'(s). When only the value
// is supplied the log-derivative falls back to a central difference.
struct SlowlyVaryingFn {
  std::function<double(double)> eval;
  std::function<double(double)> log_derivative;

  SlowlyVaryingFn() : SlowlyVaryingFn([](double) { return 1.0; }) {}

  explicit SlowlyVaryingFn(std::function<double(double)> value_fn)
      : eval(std::move(value_fn)) {
    auto v = eval;
    log_derivative = [v](double s) {
      const double h = s * 1e-6;
      return (std::log(v(s + h)) - std::log(v(s - h))) / (2.0 * h);
    };
  }

  SlowlyVaryingFn(std::function<double(double)> value_fn,
                  std::function<double(double)> log_deriv_fn)
      : eval(std::move(value_fn)), log_derivative(std::move(log_deriv_fn)) {}

  static SlowlyVaryingFn constant(double c = 1.0) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
  }
};

enum class TailVariant { Polynomial, Exponential, Truncated };

// Tail classification of a radial law: survival behaves like
//   Polynomial:  F(x) ~ L(x) x^{-k}        as x -> inf
//   Exponential: all moments finite, scale L(s) = F^{-1}(1/s)
//   Truncated:   F(x) ~ L(1/(1-x)) (1-x)^k as x -> 1
struct TailFamily {
  TailVariant variant;
  double k;
  SlowlyVaryingFn L;
};

}  // namespace hullfacets
