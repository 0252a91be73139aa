#include "hullfacets/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "hullfacets/errors.hpp"
#include "hullfacets/interp.hpp"
#include "hullfacets/special.hpp"

namespace hullfacets {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

void require_r01(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("r must lie in [0,1]");
}

// kappa extended to [-1,1]: cutting below the center covers the complement.
double kappa_signed(int d, double r) {
  const double rc = std::clamp(r, -1.0, 1.0);
  if (rc >= 0.0) return kappa(d, rc);
  return 1.0 - kappa(d, -rc);
}

quad::Config inner_config(const quad::Config& cfg) {
  quad::Config in = cfg;
  in.rel_tol = std::max(cfg.rel_tol * 1e-2, 1e-13);
  in.abs_tol = std::min(cfg.abs_tol, 1e-13);
  return in;
}

}  // namespace

double kappa(int d, double r) {
  if (d < 2) throw InvalidParameter("kappa: d must be at least 2");
  require_r01(r);
  if (r == 0.0) return 0.5;
  if (r == 1.0) return 0.0;
  return 0.5 * sf::ibetac(0.5, 0.5 * (d - 1), r * r);
}

double lambda_d(int d, double r) {
  if (d < 2) throw InvalidParameter("lambda_d: d must be at least 2");
  require_r01(r);
  if (d == 2) return 1.0;  // exponent 0, including the r=1 limit
  return std::pow((1.0 - r) * (1.0 + r), 0.5 * (d - 2));
}

KernelValue marginal_survival(const RadialModel& model, double x,
                              const quad::Config& cfg) {
  if (x < 0.0) throw DomainError("marginal_survival: x must be nonnegative");
  if (x == 0.0) return {0.5, 0.0, 0};
  if (x >= model.support_upper) return {0.0, 0.0, 0};
  const int d = model.dim;
  long evals = 0;
  quad::Result r;
  if (std::isfinite(model.support_upper)) {
    r = quad::integrate(
        [&](double y) {
          ++evals;
          return kappa(d, std::min(x / y, 1.0)) * model.density(y);
        },
        x, model.support_upper, cfg);
  } else {
    // y = x/t maps the tail onto (0,1]; the kappa argument becomes t itself.
    r = quad::integrate(
        [&](double t) {
          ++evals;
          const double y = x / t;
          return kappa(d, t) * model.density(y) * (y / t);
        },
        0.0, 1.0, cfg);
  }
  return {r.value, r.abs_error, evals};
}

KernelValue pair_norm_survival(const RadialModel& model, double x,
                               const quad::Config& cfg) {
  if (x < 0.0) throw DomainError("pair_norm_survival: x must be nonnegative");
  if (x == 0.0) return {1.0, 0.0, 0};
  if (x >= model.support_upper) return {0.0, 0.0, 0};
  const int d = model.dim;
  long evals = 0;
  quad::Result r;
  if (std::isfinite(model.support_upper)) {
    r = quad::integrate(
        [&](double y) {
          ++evals;
          return lambda_d(d, std::min(x / y, 1.0)) * model.density(y);
        },
        x, model.support_upper, cfg);
  } else {
    r = quad::integrate(
        [&](double t) {
          ++evals;
          const double y = x / t;
          return lambda_d(d, t) * model.density(y) * (y / t);
        },
        0.0, 1.0, cfg);
  }
  return {r.value, r.abs_error, evals};
}

namespace {

// H(x) through a pair-norm oracle. With the substitution y = x/cos(t) the
// integrated-by-parts form loses its 1/sqrt(y-x) endpoint factor entirely;
// without it the singular y-form is integrated as-is.
template <typename KFn>
KernelValue plane_distance_impl(const RadialModel& model, double x,
                                const quad::Config& cfg, KFn&& pair_norm,
                                long& evals) {
  const int d = model.dim;
  const double sup = model.support_upper;
  quad::Result r;
  if (cfg.singularity_substitution) {
    const double tmax =
        std::isfinite(sup) ? std::acos(std::min(x / sup, 1.0)) : kHalfPi;
    r = quad::integrate(
        [&](double t) {
          return std::pow(pair_norm(x / std::cos(t)), d);
        },
        0.0, tmax, cfg);
  } else if (std::isfinite(sup)) {
    r = quad::integrate(
        [&](double y) {
          const double c = x / y;
          if (1.0 - c == 0.0) return 0.0;  // y-x below rounding resolution
          return std::pow(pair_norm(y), d) * x /
                 (y * y * std::sqrt((1.0 - c) * (1.0 + c)));
        },
        x, sup, cfg);
  } else {
    r = quad::integrate(
        [&](double t) {
          if (1.0 - t == 0.0) return 0.0;
          return std::pow(pair_norm(x / t), d) /
                 std::sqrt((1.0 - t) * (1.0 + t));
        },
        0.0, 1.0, cfg);
  }
  return {r.value * (2.0 / kPi), r.abs_error * (2.0 / kPi) + cfg.abs_tol,
          evals};
}

}  // namespace

KernelValue plane_distance_survival(const RadialModel& model, double x,
                                    const quad::Config& cfg) {
  if (x < 0.0)
    throw DomainError("plane_distance_survival: x must be nonnegative");
  if (x == 0.0) return {1.0, 0.0, 0};
  if (x >= model.support_upper) return {0.0, 0.0, 0};
  const quad::Config in = inner_config(cfg);
  long evals = 0;
  auto pn = [&](double y) {
    const KernelValue kv = pair_norm_survival(model, y, in);
    evals += kv.evaluations;
    return kv.value;
  };
  return plane_distance_impl(model, x, cfg, pn, evals);
}

KernelValue pair_plane_survival(const RadialModel& model, double x,
                                const quad::Config& cfg) {
  if (x < 0.0)
    throw DomainError("pair_plane_survival: x must be nonnegative");
  if (x == 0.0) return {1.0, 0.0, 0};
  if (x >= model.support_upper) return {0.0, 0.0, 0};
  const int d = model.dim;
  const double sup = model.support_upper;
  const quad::Config in = inner_config(cfg);
  long evals = 0;

  // Chord geometry: the slab of directions hitting the x-ball from radius z
  // toward radius y spans [a2/z, a1/z]; its spherical measure is a
  // difference of two cap fractions.
  auto chord = [&](double y, double z) {
    const double cy = x / y;
    const double root = std::sqrt(std::max(0.0, (z - x) * (z + x))) *
                        std::sqrt(std::max(0.0, (1.0 - cy) * (1.0 + cy)));
    const double base = x * x / y;
    return kappa_signed(d, (base - root) / z) -
           kappa_signed(d, (base + root) / z);
  };
  auto inner = [&](double y) {
    if (y <= x) return 0.0;
    quad::Result rz = quad::integrate(
        [&](double z) {
          ++evals;
          return model.density(z) * chord(y, z);
        },
        x, y, in);
    return rz.value;
  };

  quad::Result r;
  if (std::isfinite(sup)) {
    r = quad::integrate(
        [&](double y) {
          ++evals;
          return model.density(y) * inner(y);
        },
        x, sup, cfg);
  } else {
    r = quad::integrate(
        [&](double t) {
          ++evals;
          const double y = x / t;
          return model.density(y) * inner(y) * (y / t);
        },
        0.0, 1.0, cfg);
  }
  return {2.0 * r.value, 2.0 * r.abs_error + cfg.abs_tol, evals};
}

double h_closed_form(int n, double c) {
  if (n < 0) throw DomainError("h_closed_form: n must be nonnegative");
  if (!(c > 0.0 && c < 1.0)) throw DomainError("h_closed_form: c in (0,1)");
  return sf::beta(0.5 * (n + 1), 0.5) * std::pow(c, n) /
         std::pow((1.0 - c) * (1.0 + c), 0.5 * (n + 1));
}

double h_quadrature(int n, double c, const quad::Config& cfg) {
  if (n < 0) throw DomainError("h_quadrature: n must be nonnegative");
  if (!(c > 0.0 && c < 1.0)) throw DomainError("h_quadrature: c in (0,1)");
  auto f = [n, c](double t) {
    const double s = c * std::sin(t);
    return (std::pow(1.0 - s, -(n + 1)) + std::pow(1.0 + s, -(n + 1))) *
           std::pow(std::cos(t), n);
  };
  return std::pow(c, n) * quad::integrate(f, 0.0, kHalfPi, cfg).value;
}

// ---------------------------------------------------------------------------
// KernelEvaluator: memoized pair-norm table.
//
// The table stores log K against a tail-adapted variable where log K is
// asymptotically linear, so a monotone cubic interpolant plus a linear
// extension covers the whole support:
//   truncated tails:   u = log(1 - y/sup), slope k + (d-2)/2 at u -> -inf
//   polynomial tails:  v = log(1 + y^2),   slope -k/2 at v -> inf
//   exponential tails: v = y^2             (exactly linear for Gaussian)

struct KernelEvaluator::Impl {
  RadialModel model;
  quad::Config cfg;

  mutable std::once_flag once;
  mutable PchipInterpolant table;
  mutable double t_lo = 0.0, t_hi = 0.0;   // table range in the variable
  mutable double end_slope = 0.0;          // d(logK)/dvar past the range
  mutable bool truncated = false;

  double to_var(double y) const {
    if (truncated) return std::log1p(-y / model.support_upper);
    if (model.tail.variant == TailVariant::Polynomial)
      return std::log1p(y * y);
    return y * y;
  }

  void build() const;

  double log_k(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= model.support_upper)
      return -std::numeric_limits<double>::infinity();
    const double v = to_var(y);
    if (truncated) {
      if (v <= t_lo) return table(t_lo) + end_slope * (v - t_lo);
      return table(std::min(v, 0.0));
    }
    if (v >= t_hi) return table(t_hi) + end_slope * (v - t_hi);
    return table(v);
  }
};

void KernelEvaluator::Impl::build() const {
  truncated = std::isfinite(model.support_upper);
  const double sup = model.support_upper;
  quad::Config kcfg = cfg;
  kcfg.rel_tol = std::max(cfg.rel_tol, 1e-11);

  std::vector<double> vs, ys;
  if (truncated) {
    // u in [-32, 0], descending y; keep ascending u for the interpolant.
    const int n = 12000;
    for (int i = 0; i <= n; ++i) vs.push_back(-32.0 + 32.0 * i / n);
    for (double u : vs) ys.push_back(sup * (-std::expm1(u)));
  } else {
    const bool poly = model.tail.variant == TailVariant::Polynomial;
    const double hi = poly ? 40.0 : 1500.0;
    const double mid = poly ? 12.0 : 100.0;
    const double step = poly ? 2e-3 : 2e-2;
    vs.push_back(0.0);
    for (double v = 1e-8; v < step; v *= 1.7) vs.push_back(v);
    const int n_mid = static_cast<int>(std::ceil(mid / step));
    for (int i = 1; i <= n_mid; ++i) vs.push_back(mid * i / n_mid);
    const double far_step = poly ? 0.05 : 1.0;
    const int n_far = static_cast<int>(std::ceil((hi - mid) / far_step));
    for (int i = 1; i <= n_far; ++i)
      vs.push_back(mid + (hi - mid) * i / n_far);
    for (double v : vs)
      ys.push_back(poly ? std::sqrt(std::expm1(v)) : std::sqrt(v));
  }

  std::vector<double> grid_v, grid_logk;
  grid_v.reserve(vs.size());
  grid_logk.reserve(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double y = ys[i];
    double val;
    if (y <= 0.0) {
      val = 1.0;
    } else {
      val = pair_norm_survival(model, y, kcfg).value;
      if (!(val > 1e-305)) {
        if (truncated) continue;  // deeper u nodes underflow too; skip them
        break;                    // growing v: the rest of the tail is gone
      }
    }
    grid_v.push_back(vs[i]);
    grid_logk.push_back(std::log(std::min(val, 1.0)));
  }

  table = PchipInterpolant(grid_v, grid_logk);
  t_lo = grid_v.front();
  t_hi = grid_v.back();
  if (truncated)
    end_slope = model.tail.k + 0.5 * (model.dim - 2);
  else if (model.tail.variant == TailVariant::Polynomial)
    end_slope = -0.5 * model.tail.k;
  else
    end_slope = table.derivative(t_hi);
}

KernelEvaluator::KernelEvaluator(RadialModel model, quad::Config cfg)
    : impl_(std::make_shared<Impl>()) {
  impl_->model = std::move(model);
  impl_->cfg = cfg;
}

const RadialModel& KernelEvaluator::model() const { return impl_->model; }
const quad::Config& KernelEvaluator::config() const { return impl_->cfg; }

KernelValue KernelEvaluator::G(double x) const {
  return marginal_survival(impl_->model, x, impl_->cfg);
}

KernelValue KernelEvaluator::K(double x) const {
  if (x < 0.0) throw DomainError("K: x must be nonnegative");
  std::call_once(impl_->once, [this] { impl_->build(); });
  const double v = std::exp(impl_->log_k(x));
  return {v, 1e-8 * v + 1e-13, 0};
}

KernelValue KernelEvaluator::H(double x) const {
  if (x < 0.0) throw DomainError("H: x must be nonnegative");
  if (x == 0.0) return {1.0, 0.0, 0};
  if (x >= impl_->model.support_upper) return {0.0, 0.0, 0};
  std::call_once(impl_->once, [this] { impl_->build(); });
  long evals = 0;
  auto pn = [&](double y) {
    ++evals;
    return std::exp(impl_->log_k(y));
  };
  return plane_distance_impl(impl_->model, x, impl_->cfg, pn, evals);
}

KernelValue KernelEvaluator::F0(double x) const {
  return pair_plane_survival(impl_->model, x, impl_->cfg);
}

}  // namespace hullfacets
