#include "hullfacets/radial_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "hullfacets/errors.hpp"
#include "hullfacets/interp.hpp"
#include "hullfacets/quadrature.hpp"
#include "hullfacets/special.hpp"

namespace hullfacets {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void require_dim(int d) {
  if (d < 2) throw InvalidParameter("dimension must be at least 2");
}

}  // namespace

double sample_radius(const RadialModel& model, double u) {
  if (u == 1.0) return 0.0;
  if (!(u > 0.0 && u < 1.0)) throw DomainError("sample_radius: u outside (0,1]");

  const auto& F = model.survival;
  // Expand [lo,hi] until F(hi) <= u; survival must not increase on the way.
  double lo = 0.0, flo = 1.0;
  double hi = std::isfinite(model.support_upper) ? model.support_upper : 1.0;
  double fhi = F(hi);
  std::size_t guard = 0;
  while (fhi > u) {
    if (++guard > 200) throw ConvergenceFailure("sample_radius: no bracket");
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = F(hi);
    if (fhi > flo + 1e-14)
      throw NonMonotoneSurvival("survival increases on bracket expansion");
  }
  if (fhi == u) return hi;

  // Safeguarded Newton on F(x) - u = 0 within [lo, hi].
  double x = 0.5 * (lo + hi);
  for (std::size_t it = 0; it < 200; ++it) {
    const double g = F(x) - u;
    if (g == 0.0) return x;
    if (g > 0.0) {
      lo = x;
      flo = g + u;
    } else {
      hi = x;
      fhi = g + u;
    }
    if (flo < fhi - 1e-14)
      throw NonMonotoneSurvival("survival increases inside bracket");
    double step = kInf;
    const double dens = model.density(x);
    if (dens > 0.0) step = g / dens;  // F' = -density
    double next = x + step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double dx = std::fabs(next - x);
    x = next;
    if (dx <= 1e-12 * std::fabs(x) || hi - lo <= 1e-12 * lo) return x;
  }
  throw ConvergenceFailure("sample_radius: iteration limit reached");
}

std::vector<double> sample_point(const RadialModel& model, RngStream& rng) {
  const int d = model.dim;
  std::vector<double> p(static_cast<std::size_t>(d));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (int i = 0; i < d; ++i) {
      p[static_cast<std::size_t>(i)] = rng.normal();
      norm += p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-300);  // ZeroVector: resample
  const double r = sample_radius(model, rng.uniform());
  for (auto& c : p) c *= r / norm;
  return p;
}

RadialModel gaussian_model(int d) {
  require_dim(d);
  const double half_d = 0.5 * d;
  const double log_norm = (half_d - 1.0) * std::log(2.0) + sf::lgamma(half_d);
  RadialModel m;
  m.survival = [half_d](double x) {
    if (x <= 0.0) return 1.0;
    return sf::gamma_q(half_d, 0.5 * x * x);
  };
  m.density = [d, log_norm](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp((d - 1) * std::log(x) - 0.5 * x * x - log_norm);
  };
  m.support_upper = kInf;
  m.tail.variant = TailVariant::Exponential;
  m.tail.k = 0.0;
  m.tail.L = SlowlyVaryingFn(
      [](double s) { return std::sqrt(2.0 * std::log(s)); },
      [](double s) { return 1.0 / (2.0 * s * std::log(s)); });
  m.dim = d;
  m.label = "gaussian(d=" + std::to_string(d) + ")";
  return m;
}

RadialModel uniform_ball_model(int d) {
  require_dim(d);
  RadialModel m;
  m.survival = [d](double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return 1.0 - std::pow(x, d);
  };
  m.density = [d](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return d * std::pow(x, d - 1);
  };
  m.support_upper = 1.0;
  m.tail.variant = TailVariant::Truncated;
  m.tail.k = 1.0;
  m.tail.L = SlowlyVaryingFn::constant(static_cast<double>(d));
  m.dim = d;
  m.label = "uniform_ball(d=" + std::to_string(d) + ")";
  return m;
}

RadialModel beta_type_model(double q, int d) {
  require_dim(d);
  if (!(q > -1.0)) throw InvalidParameter("beta_type: q must exceed -1");
  const double a = q + 1.0;
  const double half_d = 0.5 * d;
  const double log_b = sf::lbeta(half_d, a);
  RadialModel m;
  m.survival = [a, half_d](double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return sf::ibeta(a, half_d, 1.0 - x * x);
  };
  m.density = [d, q, log_b](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp(std::log(2.0) + (d - 1) * std::log(x) +
                    q * std::log1p(-x * x) - log_b);
  };
  m.support_upper = 1.0;
  m.tail.variant = TailVariant::Truncated;
  m.tail.k = a;
  m.tail.L = SlowlyVaryingFn::constant(std::exp(a * std::log(2.0) -
                                                std::log(a) - log_b));
  m.dim = d;
  m.label = "beta_type(q=" + fmt_param(q) + ",d=" + std::to_string(d) + ")";
  return m;
}

namespace {

// Radial survival of the t model, tabulated as log F against
// v = log(1 + r^2/k); log F is asymptotically linear in v with slope -k/2,
// so the table extends by that line past its last node.
struct TSurvivalCache {
  PchipInterpolant logf;
  double k;
  double v_max;
  double logf_end;

  double log_survival(double v) const {
    if (v <= 0.0) return 0.0;
    if (v >= v_max) return logf_end - 0.5 * k * (v - v_max);
    return logf(v);
  }
};

std::shared_ptr<const TSurvivalCache> build_t_cache(
    double k, const std::function<double(double)>& dens) {
  const double v_max = std::min(40.0, std::max(6.0, 1200.0 / k));

  std::vector<double> v_nodes;
  v_nodes.push_back(0.0);
  for (double v = 1e-8; v < 5e-4; v *= 1.7) v_nodes.push_back(v);
  const double mid_end = std::min(12.0, v_max);
  const int n_mid = static_cast<int>(std::ceil(mid_end / 5e-4));
  for (int i = 1; i <= n_mid; ++i)
    v_nodes.push_back(mid_end * i / n_mid);
  if (v_max > mid_end) {
    const int n_far = static_cast<int>(std::ceil((v_max - mid_end) / 0.05));
    for (int i = 1; i <= n_far; ++i)
      v_nodes.push_back(mid_end + (v_max - mid_end) * i / n_far);
  }

  const auto r_of = [k](double v) { return std::sqrt(k * std::expm1(v)); };
  const std::size_t n = v_nodes.size();
  std::vector<double> seg(n - 1);
  quad::Config seg_cfg;
  seg_cfg.rel_tol = 1e-13;
  seg_cfg.abs_tol = 0.0;
  seg_cfg.max_subdivisions = 50;
  for (std::size_t j = 0; j + 1 < n; ++j)
    seg[j] = quad::integrate(dens, r_of(v_nodes[j]), r_of(v_nodes[j + 1]),
                             seg_cfg).value;
  quad::Config tail_cfg;
  tail_cfg.rel_tol = 1e-12;
  tail_cfg.abs_tol = 0.0;
  const double tail = quad::integrate_upper_inf(dens, r_of(v_max),
                                                tail_cfg).value;

  std::vector<double> logf(n);
  double s = tail;
  logf[n - 1] = std::log(s);
  for (std::size_t j = n - 1; j-- > 0;) {
    s += seg[j];
    logf[j] = std::log(s);
  }
  const double total = logf[0];  // log of quadrature mass, ~0
  for (auto& lf : logf) lf -= total;

  return std::make_shared<const TSurvivalCache>(TSurvivalCache{
      PchipInterpolant(v_nodes, logf), k, v_max, logf[n - 1]});
}

}  // namespace

RadialModel t_model(double k, int d) {
  require_dim(d);
  if (!(k > 0.0)) throw InvalidParameter("t model: k must be positive");
  const double log_norm = std::log(2.0) + sf::lgamma(0.5 * (k + d)) -
                          sf::lgamma(0.5 * k) - sf::lgamma(0.5 * d) -
                          0.5 * d * std::log(k);
  auto dens = [d, k, log_norm](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(log_norm + (d - 1) * std::log(x) -
                    0.5 * (k + d) * std::log1p(x * x / k));
  };
  auto cache = build_t_cache(k, dens);

  RadialModel m;
  m.survival = [cache, k](double x) {
    if (x <= 0.0) return 1.0;
    return std::exp(cache->log_survival(std::log1p(x * x / k)));
  };
  m.density = dens;
  m.support_upper = kInf;
  m.tail.variant = TailVariant::Polynomial;
  m.tail.k = k;
  // Exact slowly varying factor L(s) = F(s) s^k, evaluated in log space so
  // the underflow of F and overflow of s^k cancel.
  m.tail.L = SlowlyVaryingFn(
      [cache, k](double s) {
        return std::exp(cache->log_survival(std::log1p(s * s / k)) +
                        k * std::log(s));
      },
      [cache, k](double s) {
        const double v = std::log1p(s * s / k);
        double dlogf;
        if (v >= cache->v_max)
          dlogf = -0.5 * k;
        else
          dlogf = cache->logf.derivative(v);
        return dlogf * 2.0 * s / (k + s * s) + k / s;
      });
  m.dim = d;
  m.label = "t(k=" + fmt_param(k) + ",d=" + std::to_string(d) + ")";
  return m;
}

RadialModel custom_model(std::function<double(double)> survival,
                         std::function<double(double)> density,
                         double support_upper, TailFamily tail, int d,
                         std::string label) {
  require_dim(d);
  RadialModel m;
  m.survival = std::move(survival);
  m.density = std::move(density);
  m.support_upper = support_upper;
  m.tail = std::move(tail);
  m.dim = d;
  m.label = std::move(label);
  return m;
}

const std::vector<BuiltinModelInfo>& builtin_models() {
  static const std::vector<BuiltinModelInfo> catalog = {
      {"gaussian", false, false,
       [](int d, double, double) { return gaussian_model(d); }},
      {"t", true, false,
       [](int d, double k, double) { return t_model(k, d); }},
      {"uniform_ball", false, false,
       [](int d, double, double) { return uniform_ball_model(d); }},
      {"beta_type", false, true,
       [](int d, double, double q) { return beta_type_model(q, d); }},
  };
  return catalog;
}

RadialModel model_from_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgs(std::string("model spec: ") + e.what());
  }
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw InvalidArgs("model spec: missing string field 'family'");
  if (!j.contains("d") || !j["d"].is_number_integer())
    throw InvalidArgs("model spec: missing integer field 'd'");
  const std::string family = j["family"].get<std::string>();
  const int d = j["d"].get<int>();
  if (family == "custom")
    throw InvalidArgs("custom models are registered programmatically only");
  for (const auto& info : builtin_models()) {
    if (info.family != family) continue;
    double k = 0.0, q = 0.0;
    if (info.needs_k) {
      if (!j.contains("k") || !j["k"].is_number())
        throw InvalidArgs("model spec: family '" + family + "' needs 'k'");
      k = j["k"].get<double>();
    }
    if (info.needs_q) {
      if (!j.contains("q") || !j["q"].is_number())
        throw InvalidArgs("model spec: family '" + family + "' needs 'q'");
      q = j["q"].get<double>();
    }
    return info.make(d, k, q);
  }
  throw InvalidArgs("model spec: unknown family '" + family + "'");
}

RadialModel model_from_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgs("cannot open model spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_spec(ss.str());
}

uint64_t model_spec_hash(const RadialModel& model) {
  // FNV-1a over the canonical label plus the dimension.
  uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001B3ULL;
  };
  for (const char c : model.label) mix(static_cast<unsigned char>(c));
  for (int i = 0; i < 4; ++i)
    mix(static_cast<unsigned char>((model.dim >> (8 * i)) & 0xFF));
  return h;
}

}  // namespace hullfacets
