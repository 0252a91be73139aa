#pragma once

#include <memory>

#include "hullfacets/quadrature.hpp"
#include "hullfacets/radial_model.hpp"

namespace hullfacets {

struct KernelValue {
  double value;
  double abs_error_estimate;
  long evaluations;
};

// Fraction of the unit-sphere surface cut off by a plane at distance r from
// the center. Evaluated through the regularized incomplete beta function.
double kappa(int d, double r);

// Surface fraction with x1^2 + x2^2 >= r^2 on the unit sphere: (1-r^2)^{(d-2)/2}.
double lambda_d(int d, double r);

// Survival of the first coordinate: G(x) = P(X^(1) >= x) = int kappa(x/y)|dF|.
// G(0) = 1/2 exactly.
KernelValue marginal_survival(const RadialModel& model, double x,
                              const quad::Config& cfg = {});

// Survival of the first two coordinates' norm: K(x) = int lambda_d(x/y)|dF|.
KernelValue pair_norm_survival(const RadialModel& model, double x,
                               const quad::Config& cfg = {});

// Survival of the distance from the origin to the affine hull of d samples.
// With singularity_substitution on, evaluated as (2/pi) int_0^tmax
// K^d(x/cos t) dt; otherwise as the integrated-by-parts form in y whose
// integrand keeps the 1/sqrt(y-x) endpoint factor.
KernelValue plane_distance_survival(const RadialModel& model, double x,
                                    const quad::Config& cfg = {});

// Survival of the distance from the origin to the line through two samples.
KernelValue pair_plane_survival(const RadialModel& model, double x,
                                const quad::Config& cfg = {});

// B((n+1)/2, 1/2) c^n / (1-c^2)^{(n+1)/2}.
double h_closed_form(int n, double c);

// The same quantity by adaptive quadrature of its defining integral,
// substituting t = c sin(theta) to tame the (c^2-t^2)^{(n-1)/2} endpoints.
double h_quadrature(int n, double c, const quad::Config& cfg = {});

// Kernel evaluations sharing one memoized pair-norm table per model; the
// table makes repeated H evaluations cheap. Thread-safe: the table is built
// once under a lock and read-only afterwards.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(RadialModel model, quad::Config cfg = {});

  KernelValue G(double x) const;
  KernelValue K(double x) const;   // from the memoized table after warmup
  KernelValue H(double x) const;
  KernelValue F0(double x) const;

  const RadialModel& model() const;
  const quad::Config& config() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace hullfacets
