#pragma once

// Monte Carlo verification oracle: exact brute-force facet enumeration over
// sampled clouds, plus empirical estimates of the survival kernels and of
// the probability that a fresh sample lands outside the hull.

#include <cstdint>
#include <string>
#include <vector>

#include "hullfacets/radial_model.hpp"
#include "hullfacets/rng.hpp"

namespace hullfacets {

struct PointCloud {
  int d = 0;
  int N = 0;
  std::vector<double> coords;  // row-major N x d
  std::uint64_t seed = 0;

  const double* point(int i) const {
    return coords.data() + static_cast<std::size_t>(i) * d;
  }
};

// One facet of a simplicial hull: its d point indices and the supporting
// hyperplane, with the normal oriented so the interior satisfies
// normal . x >= offset.
struct HullFacet {
  std::vector<int> indices;
  std::vector<double> normal;
  double offset = 0.0;
};

struct HullCensus {
  std::vector<HullFacet> facets;
  std::vector<int> vertices;  // sorted indices appearing on some facet
  double tau = 0.0;           // tie tolerance used during enumeration
};

struct FacetEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int replicates = 0;
  std::vector<int> per_replicate_counts;
  std::vector<int> per_replicate_vertices;
  long long N = 0;
  int d = 0;
  std::string model_id;
  std::uint64_t seed = 0;
};

struct MembershipEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  long long trials = 0;
  // Vertex-rate estimate of the same probability and the paired difference
  // between the two estimators, for identity checks.
  double vertex_rate = 0.0;
  double diff_mean = 0.0;
  double diff_std_error = 0.0;
};

struct KernelEstimate {
  std::vector<double> x;
  std::vector<double> survival;
  std::vector<double> std_error;
  long long samples = 0;
};

// N points from the model; points closer than 1e-12 in max norm are
// redrawn. Consumes the stream, so repeated calls give fresh clouds.
PointCloud sample_cloud(const RadialModel& model, int N, RngStream& rng);

// Full enumeration of the C(N,d) candidate hyperplanes. Throws
// DegenerateInput when a tie against the tolerance would change the
// answer, or when a candidate subset is affinely dependent.
HullCensus hull_census(const PointCloud& cloud);
int facet_count(const PointCloud& cloud);

// Independent d=2 cross-check: monotone-chain hull, returns the polygon
// size. Throws DegenerateInput on collinear extreme points.
int facet_count_2d(const PointCloud& cloud);

// Weak membership against a census (true also on the boundary band).
bool inside_hull(const HullCensus& census, const double* x, int d);

// Mean facet count over independent replicates. Replicate r draws from
// stream (seed, r); results are identical for every parallelism level.
FacetEstimate estimate_expected_facets(const RadialModel& model, int N, int d,
                                       int replicates, std::uint64_t seed,
                                       int parallelism = 1);

// Fraction of trials where an (N+1)-th sample falls outside the hull of the
// first N, plus the vertex-count estimate of the same quantity.
MembershipEstimate estimate_outside_probability(const RadialModel& model,
                                                int N, int d, long long trials,
                                                std::uint64_t seed);

enum class KernelTag { G, K, H, F0 };

// Empirical survival of the kernel statistic on a grid, with binomial
// standard errors. samples must be at least 1e4.
KernelEstimate empirical_kernel(const RadialModel& model, int d,
                                KernelTag kernel, std::vector<double> x_grid,
                                long long samples, std::uint64_t seed);

}  // namespace hullfacets
