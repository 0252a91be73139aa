#include "hullfacets/complexity.hpp"

#include <algorithm>
#include <cmath>

#include "hullfacets/errors.hpp"
#include "hullfacets/radial_model.hpp"
#include "hullfacets/special.hpp"

namespace hullfacets {
namespace {

constexpr double kLogNMax = 690.0;
constexpr double kLog2Pi = 1.8378770664093453;
constexpr double kLogPi = 1.1447298858494002;

// log of c = sqrt(pi) k Gamma(k/2) / Gamma((k+1)/2); c > 1 for every k > 0.
double log_algebraic_base(double k) {
  const double lc =
      0.5 * kLogPi + std::log(k) + sf::lgamma(0.5 * k) - sf::lgamma(0.5 * (k + 1.0));
  if (!(lc > 0.0))
    throw InvalidParameter("threshold base c must exceed 1");
  return lc;
}

double epsilon_at(const TailFamily& family, double N) {
  const double eps = N * family.L.log_derivative(N);
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw NonPositiveEpsilon("tail scale has nonpositive log-derivative");
  return eps;
}

// log of the large-d expected facet count for the family, used for the
// outside-probability bound.
double log_expected_facets(const TailFamily& family, int d, double N) {
  switch (family.variant) {
    case TailVariant::Polynomial: {
      const double k = family.k;
      return 0.5 * (std::log(2.0) - kLogPi - std::log(static_cast<double>(d)) -
                    std::log(k)) +
             d * log_algebraic_base(k);
    }
    case TailVariant::Exponential: {
      const double eps = epsilon_at(family, N);
      return 0.5 * (d - 1.0) * kLogPi + 0.5 * (d + 1.0) * std::log(2.0) -
             0.5 * std::log(static_cast<double>(d)) -
             0.5 * (d - 1.0) * std::log(eps);
    }
    case TailVariant::Truncated: {
      const double k = family.k;
      const double ld = std::log(static_cast<double>(d));
      const double expo = (d - 1.0) / (2.0 * k + d - 1.0);
      const double lL = std::log(family.L.eval(N));
      return 0.5 * (d + 2.0 * k) * std::log(2.0) + 0.5 * (d - 2.0) * kLogPi +
             std::log(k) + sf::lgamma(k) + k + (0.5 * (d - 3.0) - k) * ld +
             expo * (std::log(N) + lL);
    }
  }
  throw InvalidArgs("unknown tail variant");
}

std::string variant_name(TailVariant v) {
  switch (v) {
    case TailVariant::Polynomial:
      return "algebraic";
    case TailVariant::Exponential:
      return "exponential";
    case TailVariant::Truncated:
      return "truncated";
  }
  return "unknown";
}

struct RowLogs {
  double lhs;
  double rhs;
};

RowLogs row_logs(const TailFamily& family, int d, double N) {
  const double ld = std::log(static_cast<double>(d));
  switch (family.variant) {
    case TailVariant::Polynomial: {
      if (!(family.k > 0.0))
        throw InvalidArgs("threshold row needs a positive tail exponent");
      return {std::log(N), d * log_algebraic_base(family.k) - 1.5 * ld};
    }
    case TailVariant::Exponential: {
      const double eps = epsilon_at(family, N);
      return {std::log(N) + 0.5 * (d - 1.0) * std::log(eps),
              0.5 * d * kLog2Pi - 1.5 * ld};
    }
    case TailVariant::Truncated: {
      const double k = family.k;
      if (!(k > 0.0))
        throw InvalidArgs("threshold row needs a positive shape exponent");
      const double lL = std::log(family.L.eval(N));
      return {(2.0 * k / d) * std::log(N) -
                  ((d - 1.0) / (2.0 * k + d - 1.0)) * lL,
              0.5 * d * kLog2Pi + 0.5 * (d - 5.0) * ld};
    }
  }
  throw InvalidArgs("unknown tail variant");
}

ComplexityReport build_report(const TailFamily& family, std::string name,
                              int d, double N, double margin) {
  if (d < 2) throw InvalidArgs("threshold row needs d >= 2");
  if (!(N > d)) throw InvalidArgs("threshold row needs N > d");
  if (!(margin > 0.0)) throw InvalidArgs("margin must be positive");
  const RowLogs logs = row_logs(family, d, N);
  ComplexityReport rep;
  rep.family = std::move(name);
  rep.d = d;
  rep.N = N;
  rep.log_N = std::log(N);
  rep.log_lhs = logs.lhs;
  rep.log_rhs = logs.rhs;
  rep.lhs = std::exp(logs.lhs);
  rep.rhs = std::exp(logs.rhs);
  rep.ratio = std::exp(logs.lhs - logs.rhs);
  rep.margin = margin;
  rep.satisfied = logs.lhs > logs.rhs + std::log(margin);
  const double log_e = log_expected_facets(family, d, N);
  rep.p_bound = std::min(
      1.0, std::exp(log_e - std::log(static_cast<double>(d)) - rep.log_N));
  return rep;
}

}  // namespace

double p_upper_bound(double e_fn, double N, int d) {
  if (!(e_fn > 0.0)) throw InvalidArgs("expected facet count must be positive");
  if (d < 2 || !(N > d)) throw InvalidArgs("bound needs N > d >= 2");
  return std::min(1.0, e_fn / (d * N));
}

ComplexityReport table1_condition(const TailFamily& family, int d, double N,
                                  double margin) {
  return build_report(family, variant_name(family.variant), d, N, margin);
}

FamilySpec algebraic_family(double k) {
  if (!(k > 0.0)) throw InvalidArgs("algebraic family needs k > 0");
  return {"algebraic", [k](int) {
            return TailFamily{TailVariant::Polynomial, k,
                              SlowlyVaryingFn::constant(1.0)};
          }};
}

FamilySpec exponential_family(double k) {
  if (!(k > 0.0)) throw InvalidArgs("exponential family needs k > 0");
  return {"exponential", [k](int) {
            SlowlyVaryingFn L(
                [k](double s) { return std::pow(std::log(s), 1.0 / k); },
                [k](double s) { return 1.0 / (k * s * std::log(s)); });
            return TailFamily{TailVariant::Exponential, 0.0, std::move(L)};
          }};
}

FamilySpec gaussian_family() {
  return {"gaussian", [](int d) { return gaussian_model(d).tail; }};
}

FamilySpec truncated_family(double k) {
  if (!(k > 0.0)) throw InvalidArgs("truncated family needs k > 0");
  return {"truncated", [k](int) {
            return TailFamily{TailVariant::Truncated, k,
                              SlowlyVaryingFn::constant(1.0)};
          }};
}

FamilySpec uniform_ball_family() {
  return {"uniform-ball", [](int d) { return uniform_ball_model(d).tail; }};
}

FamilySpec beta_type_family(double q) {
  return {"beta-type", [q](int d) { return beta_type_model(q, d).tail; }};
}

ComplexityReport sample_complexity_threshold(const FamilySpec& family, int d,
                                             double margin) {
  if (d < 2) throw InvalidArgs("threshold solve needs d >= 2");
  if (!(margin > 0.0)) throw InvalidArgs("margin must be positive");
  const TailFamily tail = family.make(d);
  const double log_margin = std::log(margin);
  auto gap = [&](double log_n) {
    const RowLogs logs = row_logs(tail, d, std::exp(log_n));
    return logs.lhs - logs.rhs - log_margin;
  };

  const double lo = std::log(d + 1.0);
  const double hi = kLogNMax;
  if (gap(hi) < 0.0)
    throw NoSolutionInRange("threshold condition unmet for every log N <= 690");

  // The exponential rows dip before growing; bracket the final crossing.
  const int kScan = 2048;
  double lo_bracket = lo, hi_bracket = hi;
  bool found = false;
  for (int i = kScan - 1; i >= 0; --i) {
    const double x = lo + (hi - lo) * i / kScan;
    if (gap(x) < 0.0) {
      lo_bracket = x;
      hi_bracket = lo + (hi - lo) * (i + 1) / kScan;
      found = true;
      break;
    }
  }
  double solved = lo;
  if (found) {
    for (int iter = 0; iter < 120; ++iter) {
      const double mid = 0.5 * (lo_bracket + hi_bracket);
      (gap(mid) < 0.0 ? lo_bracket : hi_bracket) = mid;
    }
    solved = hi_bracket;
  }
  ComplexityReport rep =
      build_report(tail, family.name, d, std::exp(solved), margin);
  rep.satisfied = true;  // holds at the crossing up to bisection tolerance
  return rep;
}

std::vector<ComplexityReport> complexity_table(
    const std::vector<FamilySpec>& families, const std::vector<int>& d_grid,
    double margin) {
  if (families.empty() || d_grid.empty())
    throw InvalidArgs("threshold table needs nonempty grids");
  std::vector<ComplexityReport> out;
  out.reserve(families.size() * d_grid.size());
  for (const FamilySpec& family : families)
    for (int d : d_grid)
      out.push_back(sample_complexity_threshold(family, d, margin));
  return out;
}

}  // namespace hullfacets
