#pragma once

// Expected facet counts of the convex hull of N i.i.d. spherically
// symmetric points: exact master-formula quadrature plus the closed-form
// large-N and large-d values for the three tail families.

#include <memory>
#include <string>

#include "hullfacets/quadrature.hpp"
#include "hullfacets/radial_model.hpp"
#include "hullfacets/tails.hpp"

namespace hullfacets {

// Which limit the closed-form value describes. The exact quadrature is
// regime-free; asymptotic evaluators report which display they used.
enum class Regime { FixedD_NtoInf, HighDim_NoverD2toInf };

struct ExactExpectation {
  double value = 0.0;
  long long N = 0;
  int d = 0;
  double quadrature_error = 0.0;
  // True when exp(-(N-d) log 2) underflows and the marginal-survival power
  // term was dropped from the integrand.
  bool used_simplified_form = false;
};

struct AsymptoticValue {
  double value = 0.0;
  Regime regime = Regime::FixedD_NtoInf;
  TailVariant family = TailVariant::Polynomial;
  std::string leading_term;  // formula actually evaluated, for reports
};

// Exact expected facet count. Builds the composition of the plane-distance
// survival with the inverse marginal survival on a log-spaced grid once,
// then reuses it across N. Safe for concurrent exact() calls.
class ExpectationEvaluator {
 public:
  explicit ExpectationEvaluator(RadialModel model, quad::Config cfg = {});

  ExactExpectation exact(long long N) const;
  const RadialModel& model() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// One-shot convenience wrapper; d must equal model.dim.
ExactExpectation expected_facets_exact(const RadialModel& model, long long N,
                                       int d, const quad::Config& cfg = {});

// Polynomial tails: the expected facet count converges to a constant in N.
// k = 0 is allowed only in the fixed-d regime.
AsymptoticValue asymptotic_poly(double k, int d,
                                Regime regime = Regime::FixedD_NtoInf);

// Exponential-type tails, via the slow-variation index of the model's tail
// scale function. Both regimes share one display.
AsymptoticValue asymptotic_exp(const RadialModel& model, double N, int d,
                               Regime regime = Regime::FixedD_NtoInf);

// Truncated supports: polynomial growth N^{(d-1)/(2k+d-1)} with slowly
// varying correction L(N).
AsymptoticValue asymptotic_trunc(double k, const SlowlyVaryingFn& L, double N,
                                 int d, Regime regime = Regime::FixedD_NtoInf);

// Edge coefficients of the truncated-tail laws. coefficient_a has two
// algebraically equal displays; both are exposed so tests can compare them.
double coefficient_a(double k, int d);
double coefficient_a_beta_form(double k, int d);
double coefficient_b(double k, int d);
double log_coefficient_a(double k, int d);
double log_coefficient_b(double k, int d);

// Slow-variation index s (log L(s))'.
double epsilon_fn(const SlowlyVaryingFn& L, double s);

// Carnal regularity diagnostic v(u) = -1/(u (log F(u))') = F(u)/(u f(u)).
// Informational only; exponential-tail asymptotics assume it is regular.
double regularity_diagnostic(const RadialModel& model, double u);

}  // namespace hullfacets
