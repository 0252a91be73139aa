#pragma once

// Sample-size conditions under which a fresh draw lands inside the hull
// with probability tending to one: the facet-count bound on the outside
// probability and the per-family threshold table, all evaluated in log
// space so large dimensions stay finite.

#include <functional>
#include <string>
#include <vector>

#include "hullfacets/tails.hpp"

namespace hullfacets {

struct ComplexityReport {
  std::string family;
  int d = 0;
  double N = 0.0;      // exp(log_N); rounds to inf past log_N ~ 709
  double log_N = 0.0;  // authoritative
  double lhs = 0.0;    // threshold row, left side (may overflow to inf)
  double rhs = 0.0;
  double log_lhs = 0.0;  // authoritative
  double log_rhs = 0.0;
  double ratio = 0.0;  // exp(log_lhs - log_rhs)
  double margin = 0.0;
  bool satisfied = false;  // log_lhs > log_rhs + log(margin)
  double p_bound = 0.0;    // outside-probability bound at this (family,d,N)
};

// min(1, e_fn / (d N)): the outside-probability bound from an expected
// facet count e_fn. Requires e_fn > 0 and N > d >= 2.
double p_upper_bound(double e_fn, double N, int d);

// Evaluates one threshold row at sample count N (need not be integral).
//   Polynomial:  N                     vs  c^d / d^{3/2},
//                c = sqrt(pi) k Gamma(k/2) / Gamma((k+1)/2)
//   Exponential: N eps(N)^{(d-1)/2}    vs  (2 pi)^{d/2} / d^{3/2},
//                eps(N) = N (log L)'(N)
//   Truncated:   N^{2k/d} / L(N)^{(d-1)/(2k+d-1)}
//                                      vs  (2 pi)^{d/2} d^{(d-5)/2}
// "Much greater" is made concrete by the margin: satisfied means
// lhs > margin * rhs. p_bound uses the matching large-d expectation.
ComplexityReport table1_condition(const TailFamily& family, int d, double N,
                                  double margin = 10.0);

// A threshold family instantiated per dimension; the slowly varying
// factor of some families (uniform ball, beta-type) depends on d.
struct FamilySpec {
  std::string name;
  std::function<TailFamily(int d)> make;
};

FamilySpec algebraic_family(double k);
// Survival exp(-x^k) up to slowly varying corrections: eps(N) = 1/(k log N).
FamilySpec exponential_family(double k);
FamilySpec gaussian_family();  // eps(N) = 1/(2 log N)
FamilySpec truncated_family(double k);
FamilySpec uniform_ball_family();
FamilySpec beta_type_family(double q);

// Smallest N with lhs >= margin * rhs, solved over log N in
// [log(d+1), 690]. The exponential rows dip before they grow, so the scan
// locates the final crossing before bisecting. Throws NoSolutionInRange
// when even log N = 690 fails.
ComplexityReport sample_complexity_threshold(const FamilySpec& family, int d,
                                             double margin = 10.0);

std::vector<ComplexityReport> complexity_table(
    const std::vector<FamilySpec>& families, const std::vector<int>& d_grid,
    double margin = 10.0);

}  // namespace hullfacets
