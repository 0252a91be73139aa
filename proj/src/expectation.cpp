#include "hullfacets/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <vector>

#include "hullfacets/errors.hpp"
#include "hullfacets/interp.hpp"
#include "hullfacets/kernels.hpp"
#include "hullfacets/rootfind.hpp"

namespace hullfacets {
namespace {

constexpr double kLog2 = 0.6931471805599453094172321214581766;
// exp(-x) underflows past this; powers beyond it are dropped, not computed.
constexpr double kUnderflowExponent = 745.0;
// Grid resolution of the composed survival, nodes per decade of w.
constexpr double kNodesPerDecade = 48.0;

double lgamma_s(double x) { return std::lgamma(x); }

}  // namespace

// Composition grid: nodes (log w, log Phi(w)) with w = G(x) marched from 1/2
// downward and Phi(w) = H(G^{-1}(w)). Extended on demand when a larger N
// asks for a smaller w floor; readers take a snapshot of the interpolant.
struct ExpectationEvaluator::Impl {
  RadialModel model;
  quad::Config cfg;
  KernelEvaluator kernels;

  mutable std::mutex mu;
  mutable std::vector<double> lw_desc, lphi_desc;  // descending log w
  mutable double x_floor = 0.0;                    // G^{-1} of smallest w
  mutable std::shared_ptr<const PchipInterpolant> interp;

  Impl(RadialModel m, quad::Config c)
      : model(std::move(m)), cfg(c), kernels(model, c) {}

  double eval_g(double x, double w_scale) const {
    quad::Config gc = cfg;
    gc.abs_tol = std::min(gc.abs_tol, w_scale * 1e-3 * gc.rel_tol);
    return marginal_survival(model, x, gc).value;
  }

  // x with G(x) = w, walking outward from x_lo where G(x_lo) > w.
  double invert_g(double w, double x_lo) const {
    const double sup = model.support_upper;
    double lo = x_lo;
    double flo = eval_g(lo, w) - w;
    if (flo <= 0.0) return lo;
    double hi, fhi;
    if (std::isfinite(sup)) {
      double gap = 0.5 * (sup - lo);
      for (int i = 0;; ++i) {
        if (i >= 200)
          throw ConvergenceFailure("marginal survival does not reach target");
        hi = sup - gap;
        fhi = eval_g(hi, w) - w;
        if (fhi < 0.0) break;
        lo = hi;
        flo = fhi;
        gap *= 0.5;
      }
    } else {
      double step = std::max(0.25 * lo, 0.5);
      for (int i = 0;; ++i) {
        if (i >= 200)
          throw ConvergenceFailure("marginal survival does not reach target");
        hi = lo + step;
        fhi = eval_g(hi, w) - w;
        if (fhi < 0.0) break;
        lo = hi;
        flo = fhi;
        step *= 2.0;
      }
    }
    return brent([&](double x) { return eval_g(x, w) - w; }, lo, hi, flo, fhi,
                 0.0, 1e-13);
  }

  // Make sure the grid covers log w down to lw_floor; returns a snapshot.
  std::shared_ptr<const PchipInterpolant> ensure(double lw_floor) const {
    std::lock_guard<std::mutex> lock(mu);
    const double step = std::log(10.0) / kNodesPerDecade;
    if (lw_desc.empty()) {
      lw_desc.push_back(std::log(0.5));
      lphi_desc.push_back(0.0);  // Phi(1/2) = H(0) = 1
      x_floor = 0.0;
    }
    bool extended = false;
    while (lw_desc.back() > lw_floor + 1e-12) {
      const double lw = lw_desc.back() - step;
      const double w = std::exp(lw);
      const double x = invert_g(w, x_floor);
      const double phi = kernels.H(x).value;
      if (!(phi > 0.0))
        throw QuadratureFailure("plane-distance survival underflowed", phi,
                                0.0);
      lw_desc.push_back(lw);
      lphi_desc.push_back(std::log(phi));
      x_floor = x;
      extended = true;
    }
    if (extended || !interp) {
      std::vector<double> xs(lw_desc.rbegin(), lw_desc.rend());
      std::vector<double> ys(lphi_desc.rbegin(), lphi_desc.rend());
      interp = std::make_shared<const PchipInterpolant>(std::move(xs),
                                                        std::move(ys));
    }
    return interp;
  }
};

ExpectationEvaluator::ExpectationEvaluator(RadialModel model, quad::Config cfg)
    : impl_(std::make_shared<Impl>(std::move(model), cfg)) {
  if (impl_->model.dim < 2)
    throw InvalidArgs("expected_facets: dimension must be at least 2");
}

const RadialModel& ExpectationEvaluator::model() const { return impl_->model; }

ExactExpectation ExpectationEvaluator::exact(long long N) const {
  const int d = impl_->model.dim;
  if (N <= d)
    throw InvalidArgs("expected_facets_exact: N must be at least d+1");
  const double m = static_cast<double>(N - d);

  ExactExpectation out;
  out.N = N;
  out.d = d;
  out.used_simplified_form = m * kLog2 > kUnderflowExponent;

  const double w_min = std::min(1e-4, 1e-3 / m);
  const double s_max = -std::log(w_min);
  auto phi = impl_->ensure(std::log(w_min));

  // Integral over w in (0, 1/2] of ((1-w)^{m-1} - w^{m-1}) Phi(w) dw,
  // taken in s = -log w; the lower power is dropped once it underflows.
  const bool drop_low = out.used_simplified_form;
  auto integrand = [&](double s) {
    const double w = std::exp(-s);
    const double hi_pow = std::exp((m - 1.0) * std::log1p(-w));
    const double lo_pow = drop_low ? 0.0 : std::exp((m - 1.0) * -s);
    return (hi_pow - lo_pow) * std::exp((*phi)(-s)) * w;
  };

  std::set<double> cuts{kLog2, s_max};
  const double s_peak = std::log(2.0 * std::max(m, 2.0));
  if (s_peak < s_max) cuts.insert(s_peak);
  for (double off = 1.0; off < 24.0; off += 3.0)
    if (kLog2 + off < s_max) cuts.insert(kLog2 + off);
  std::vector<double> pieces(cuts.begin(), cuts.end());

  quad::Config icfg = impl_->cfg;
  icfg.abs_tol = 0.0;
  const quad::Result integral = quad::integrate_segments(integrand, pieces,
                                                         icfg);

  const double boundary =
      drop_low ? 0.0 : 2.0 * std::exp(-m * kLog2);  // both powers at w = 1/2
  const double tail_bound =
      std::exp((*phi)(std::log(w_min))) * std::min(1.0, m * w_min);

  const double log_binom =
      lgamma_s(static_cast<double>(N) + 1.0) - lgamma_s(m + 1.0) -
      lgamma_s(static_cast<double>(d) + 1.0);
  const double inner = boundary + m * integral.value;
  out.value = std::exp(log_binom + std::log(inner));
  const double err = m * integral.abs_error + tail_bound;
  out.quadrature_error =
      err > 0.0 ? std::exp(log_binom + std::log(err)) : 0.0;
  return out;
}

ExactExpectation expected_facets_exact(const RadialModel& model, long long N,
                                       int d, const quad::Config& cfg) {
  if (model.dim != d)
    throw InvalidArgs("expected_facets_exact: d does not match the model");
  return ExpectationEvaluator(model, cfg).exact(N);
}

AsymptoticValue asymptotic_poly(double k, int d, Regime regime) {
  if (d < 2) throw InvalidArgs("asymptotic_poly: d must be at least 2");
  if (k < 0.0) throw InvalidArgs("asymptotic_poly: k must be nonnegative");
  AsymptoticValue out;
  out.regime = regime;
  out.family = TailVariant::Polynomial;
  if (regime == Regime::FixedD_NtoInf) {
    const double lv = d * kLog2 + 0.5 * (d - 1) * std::log(M_PI) +
                      d * lgamma_s(0.5 * k + 1.0) +
                      lgamma_s(0.5 * (d * k + 1.0)) -
                      d * lgamma_s(0.5 * (k + 1.0)) -
                      lgamma_s(0.5 * d * k + 1.0);
    out.value = std::exp(lv);
    out.leading_term =
        "2^d pi^((d-1)/2) Gamma^d(k/2+1) Gamma((dk+1)/2) / "
        "(Gamma^d((k+1)/2) Gamma(dk/2+1))";
  } else {
    if (!(k > 0.0))
      throw InvalidArgs("asymptotic_poly: high-dimension form needs k > 0");
    const double lv = 0.5 * (kLog2 - std::log(M_PI * d * k)) +
                      d * (0.5 * std::log(M_PI) + std::log(k) +
                           lgamma_s(0.5 * k) - lgamma_s(0.5 * (k + 1.0)));
    out.value = std::exp(lv);
    out.leading_term =
        "sqrt(2/(pi d k)) (sqrt(pi) k Gamma(k/2) / Gamma((k+1)/2))^d";
  }
  return out;
}

double epsilon_fn(const SlowlyVaryingFn& L, double s) {
  if (!(s > 1.0)) throw InvalidArgs("epsilon_fn: s must exceed 1");
  return s * L.log_derivative(s);
}

AsymptoticValue asymptotic_exp(const RadialModel& model, double N, int d,
                               Regime regime) {
  if (model.tail.variant != TailVariant::Exponential)
    throw InvalidArgs("asymptotic_exp: model tail is not exponential-type");
  if (d < 2 || !(N > d))
    throw InvalidArgs("asymptotic_exp: need N > d and d >= 2");
  const double eps = epsilon_fn(model.tail.L, N);
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw NonPositiveEpsilon("asymptotic_exp: slow-variation index <= 0");
  AsymptoticValue out;
  out.regime = regime;
  out.family = TailVariant::Exponential;
  const double lv = 0.5 * (d - 1) * std::log(M_PI) + 0.5 * (d + 1) * kLog2 -
                    0.5 * std::log(static_cast<double>(d)) -
                    0.5 * (d - 1) * std::log(eps);
  out.value = std::exp(lv);
  out.leading_term = "pi^((d-1)/2) 2^((d+1)/2) d^(-1/2) eps(N)^(-(d-1)/2)";
  return out;
}

double log_coefficient_a(double k, int d) {
  if (!(k > 0.0) || d < 2)
    throw InvalidArgs("coefficient_a: need k > 0 and d >= 2");
  return 0.5 * (d - 3) * kLog2 + std::log(k) + lgamma_s(0.5 * d) +
         lgamma_s(k) - 0.5 * std::log(M_PI) - lgamma_s(k + 0.5 * (d + 1));
}

double coefficient_a(double k, int d) { return std::exp(log_coefficient_a(k, d)); }

double coefficient_a_beta_form(double k, int d) {
  if (!(k > 0.0) || d < 2)
    throw InvalidArgs("coefficient_a: need k > 0 and d >= 2");
  const double log_beta =
      lgamma_s(k) + lgamma_s(0.5 * (d + 1)) - lgamma_s(k + 0.5 * (d + 1));
  const double lv = 0.5 * (d - 1) * kLog2 + std::log(k) + lgamma_s(0.5 * d) -
                    std::log(static_cast<double>(d - 1)) -
                    0.5 * std::log(M_PI) - lgamma_s(0.5 * (d - 1)) + log_beta;
  return std::exp(lv);
}

double log_coefficient_b(double k, int d) {
  if (!(k > 0.0) || d < 2)
    throw InvalidArgs("coefficient_b: need k > 0 and d >= 2");
  const double cap_d = d * (k + 0.5 * d - 1.0);
  const double log_beta_kd =
      lgamma_s(k) + lgamma_s(0.5 * d) - lgamma_s(k + 0.5 * d);
  const double log_beta_half =
      lgamma_s(0.5) + lgamma_s(cap_d + 1.0) - lgamma_s(cap_d + 1.5);
  return d * std::log(k) - std::log(M_PI) +
         (0.5 + d * (0.5 * d - 1.0)) * kLog2 + d * log_beta_kd +
         log_beta_half;
}

double coefficient_b(double k, int d) { return std::exp(log_coefficient_b(k, d)); }

AsymptoticValue asymptotic_trunc(double k, const SlowlyVaryingFn& L, double N,
                                 int d, Regime regime) {
  if (!(k > 0.0) || d < 2 || !(N > d))
    throw InvalidArgs("asymptotic_trunc: need k > 0, d >= 2, N > d");
  const double e = (d - 1.0) / (2.0 * k + d - 1.0);
  const double log_nl = std::log(N) + std::log(L.eval(N));
  AsymptoticValue out;
  out.regime = regime;
  out.family = TailVariant::Truncated;
  double lv;
  if (regime == Regime::FixedD_NtoInf) {
    lv = log_coefficient_b(k, d) - lgamma_s(d + 1.0) +
         (e - d) * log_coefficient_a(k, d) + lgamma_s(d + 1.0 - e) +
         e * log_nl;
    out.leading_term =
        "(b/d!) a^(e-d) Gamma(d+1-e) (N L(N))^e, e = (d-1)/(2k+d-1)";
  } else {
    lv = 0.5 * (d + 2.0 * k) * kLog2 + 0.5 * (d - 2.0) * std::log(M_PI) +
         std::log(k) + lgamma_s(k) + k +
         (0.5 * (d - 3.0) - k) * std::log(static_cast<double>(d)) + e * log_nl;
    out.leading_term =
        "2^((d+2k)/2) pi^((d-2)/2) k Gamma(k) e^k d^((d-3)/2-k) (N L(N))^e";
  }
  out.value = std::exp(lv);
  return out;
}

double regularity_diagnostic(const RadialModel& model, double u) {
  if (!(u > 0.0) || u >= model.support_upper)
    throw DomainError("regularity_diagnostic: u outside the open support");
  const double f = model.density(u);
  const double s = model.survival(u);
  if (!(f > 0.0)) throw DomainError("regularity_diagnostic: zero density");
  return s / (u * f);
}

}  // namespace hullfacets
