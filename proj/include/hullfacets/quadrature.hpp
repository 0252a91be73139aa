#pragma once

#include <functional>
#include <vector>

namespace hullfacets::quad {

struct Config {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  bool singularity_substitution = true;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;

  Result& operator+=(const Result& o) {
    value += o.value;
    abs_error += o.abs_error;
    evaluations += o.evaluations;
    return *this;
  }
};

using Fn = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod 7/15 over [a,b]. Throws QuadratureFailure
// when the error estimate still exceeds tolerance after max_subdivisions.
Result integrate(const Fn& f, double a, double b, const Config& cfg);

// Same, but the initial segments are given by consecutive breakpoints.
// Useful when the integrand has known kinks or a localized peak.
Result integrate_segments(const Fn& f, const std::vector<double>& breakpoints,
                          const Config& cfg);

// \int_a^inf f, a > 0, via y = a/t mapping onto (0,1].
Result integrate_upper_inf(const Fn& f, double a, const Config& cfg);

// \int_a^b or \int_a^inf depending on whether b is finite; a >= 0.
// For a == 0 with infinite b the range splits at 1.
Result integrate_to(const Fn& f, double a, double b, const Config& cfg);

}  // namespace hullfacets::quad
