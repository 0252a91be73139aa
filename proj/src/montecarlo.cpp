#include "hullfacets/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "hullfacets/errors.hpp"

namespace hullfacets {
namespace {

constexpr double kCollisionTol = 1e-12;
constexpr double kTieFactor = 1e-9;
constexpr double kRankFactor = 1e-12;

double cloud_scale(const PointCloud& cloud) {
  double s = 0.0;
  for (double v : cloud.coords) s = std::max(s, std::fabs(v));
  return s > 0.0 ? s : 1.0;
}

// Unit normal of the hyperplane through the d subset points: Householder QR
// of the d x (d-1) matrix of differences; the residual column of Q spans the
// null space. Throws when the subset is affinely dependent at tolerance.
std::vector<double> subset_normal(const PointCloud& cloud,
                                  const std::vector<int>& idx, double scale) {
  const int d = cloud.d;
  const int m = d - 1;
  std::vector<double> a(static_cast<std::size_t>(d) * m);  // column-major
  const double* p0 = cloud.point(idx[0]);
  for (int j = 0; j < m; ++j) {
    const double* pj = cloud.point(idx[j + 1]);
    for (int i = 0; i < d; ++i) a[j * d + i] = pj[i] - p0[i];
  }

  std::vector<double> vs(static_cast<std::size_t>(d) * m);  // reflectors
  for (int j = 0; j < m; ++j) {
    double* col = a.data() + j * d;
    double norm = 0.0;
    for (int i = j; i < d; ++i) norm += col[i] * col[i];
    norm = std::sqrt(norm);
    if (norm <= kRankFactor * scale)
      throw DegenerateInput("affinely dependent facet candidate");
    const double alpha = col[j] >= 0.0 ? -norm : norm;
    double* v = vs.data() + j * d;
    std::fill(v, v + d, 0.0);
    for (int i = j; i < d; ++i) v[i] = col[i];
    v[j] -= alpha;
    double vnorm = 0.0;
    for (int i = j; i < d; ++i) vnorm += v[i] * v[i];
    if (vnorm <= 0.0)
      throw DegenerateInput("affinely dependent facet candidate");
    const double inv = 2.0 / vnorm;
    for (int jc = j; jc < m; ++jc) {
      double* c = a.data() + jc * d;
      double dot = 0.0;
      for (int i = j; i < d; ++i) dot += v[i] * c[i];
      dot *= inv;
      for (int i = j; i < d; ++i) c[i] -= dot * v[i];
    }
    if (std::fabs(a[j * d + j]) <= kRankFactor * scale)
      throw DegenerateInput("affinely dependent facet candidate");
  }

  // n = H_0 H_1 ... H_{m-1} e_{d-1}
  std::vector<double> n(d, 0.0);
  n[d - 1] = 1.0;
  for (int j = m - 1; j >= 0; --j) {
    const double* v = vs.data() + j * d;
    double vnorm = 0.0, dot = 0.0;
    for (int i = j; i < d; ++i) {
      vnorm += v[i] * v[i];
      dot += v[i] * n[i];
    }
    dot *= 2.0 / vnorm;
    for (int i = j; i < d; ++i) n[i] -= dot * v[i];
  }
  double nn = 0.0;
  for (double c : n) nn += c * c;
  nn = std::sqrt(nn);
  for (double& c : n) c /= nn;
  return n;
}

}  // namespace

PointCloud sample_cloud(const RadialModel& model, int N, RngStream& rng) {
  if (N < 1) throw InvalidArgs("sample_cloud: N must be positive");
  PointCloud cloud;
  cloud.d = model.dim;
  cloud.N = N;
  cloud.coords.reserve(static_cast<std::size_t>(N) * model.dim);
  for (int i = 0; i < N; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 64)
        throw ConvergenceFailure("sample_cloud: persistent point collisions");
      const std::vector<double> p = sample_point(model, rng);
      bool collides = false;
      for (int j = 0; j < i && !collides; ++j) {
        const double* q = cloud.point(j);
        double dist = 0.0;
        for (int c = 0; c < cloud.d; ++c)
          dist = std::max(dist, std::fabs(p[c] - q[c]));
        collides = dist <= kCollisionTol;
      }
      if (!collides) {
        cloud.coords.insert(cloud.coords.end(), p.begin(), p.end());
        break;
      }
    }
  }
  return cloud;
}

HullCensus hull_census(const PointCloud& cloud) {
  const int d = cloud.d;
  const int N = cloud.N;
  if (d < 2) throw InvalidArgs("hull_census: d must be at least 2");
  if (N < d + 1) throw InvalidArgs("hull_census: need at least d+1 points");
  const double scale = cloud_scale(cloud);
  const double tau = kTieFactor * scale;

  HullCensus out;
  out.tau = tau;
  std::set<int> verts;

  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    std::vector<double> n = subset_normal(cloud, idx, scale);
    const double* p0 = cloud.point(idx[0]);
    double offset = 0.0;
    for (int c = 0; c < d; ++c) offset += n[c] * p0[c];

    int pos = 0, neg = 0, ties = 0;
    for (int j = 0; j < N; ++j) {
      if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
      const double* p = cloud.point(j);
      double s = -offset;
      for (int c = 0; c < d; ++c) s += n[c] * p[c];
      if (s > tau)
        ++pos;
      else if (s < -tau)
        ++neg;
      else
        ++ties;
      if (pos > 0 && neg > 0) break;  // tie cannot change the outcome
    }
    if (pos == 0 || neg == 0) {
      if (ties > 0)
        throw DegenerateInput("point within tolerance of a facet hyperplane");
      if (neg > 0) {  // flip so the interior is the positive side
        for (double& c : n) c = -c;
        offset = -offset;
      }
      out.facets.push_back(HullFacet{idx, std::move(n), offset});
      verts.insert(idx.begin(), idx.end());
    }

    int k = d - 1;
    while (k >= 0 && idx[k] == N - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }

  out.vertices.assign(verts.begin(), verts.end());
  return out;
}

int facet_count(const PointCloud& cloud) {
  return static_cast<int>(hull_census(cloud).facets.size());
}

int facet_count_2d(const PointCloud& cloud) {
  if (cloud.d != 2) throw InvalidArgs("facet_count_2d: d must be 2");
  if (cloud.N < 3) throw InvalidArgs("facet_count_2d: need at least 3 points");
  const double scale = cloud_scale(cloud);
  const double area_tol = kTieFactor * scale * scale;

  std::vector<int> order(cloud.N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double* pa = cloud.point(a);
    const double* pb = cloud.point(b);
    return pa[0] != pb[0] ? pa[0] < pb[0] : pa[1] < pb[1];
  });

  auto cross = [&](int o, int a, int b) {
    const double* po = cloud.point(o);
    const double* pa = cloud.point(a);
    const double* pb = cloud.point(b);
    return (pa[0] - po[0]) * (pb[1] - po[1]) -
           (pa[1] - po[1]) * (pb[0] - po[0]);
  };

  std::vector<int> hull(2 * cloud.N);
  int h = 0;
  for (int pass = 0; pass < 2; ++pass) {
    const int start = h;
    const int base = pass == 0 ? 0 : static_cast<int>(order.size()) - 1;
    const int stop = pass == 0 ? static_cast<int>(order.size()) : -1;
    const int step = pass == 0 ? 1 : -1;
    for (int i = base; i != stop; i += step) {
      const int p = order[i];
      while (h - start >= 2) {
        const double c = cross(hull[h - 2], hull[h - 1], p);
        if (std::fabs(c) <= area_tol)
          throw DegenerateInput("collinear extreme points");
        if (c > 0.0) break;
        --h;
      }
      hull[h++] = p;
    }
    --h;  // endpoint repeats as the next pass's start
  }
  return h;
}

bool inside_hull(const HullCensus& census, const double* x, int d) {
  for (const HullFacet& f : census.facets) {
    double s = -f.offset;
    for (int c = 0; c < d; ++c) s += f.normal[c] * x[c];
    if (s < -census.tau) return false;
  }
  return true;
}

namespace {

// One replicate: sample and enumerate, redrawing the whole cloud while the
// census reports a decision-relevant tie.
HullCensus replicate_census(const RadialModel& model, int N, RngStream& rng,
                            PointCloud* cloud_out) {
  for (int attempt = 0; attempt < 10; ++attempt) {
    PointCloud cloud = sample_cloud(model, N, rng);
    try {
      HullCensus census = hull_census(cloud);
      if (cloud_out) *cloud_out = std::move(cloud);
      return census;
    } catch (const DegenerateInput&) {
      if (attempt == 9) throw;
    }
  }
  throw DegenerateInput("degenerate clouds persisted across resamples");
}

}  // namespace

FacetEstimate estimate_expected_facets(const RadialModel& model, int N, int d,
                                       int replicates, std::uint64_t seed,
                                       int parallelism) {
  if (model.dim != d)
    throw InvalidArgs("estimate_expected_facets: d does not match the model");
  if (N < d + 1)
    throw InvalidArgs("estimate_expected_facets: N must be at least d+1");
  if (replicates < 2)
    throw InvalidArgs("estimate_expected_facets: need at least 2 replicates");

  FacetEstimate out;
  out.replicates = replicates;
  out.N = N;
  out.d = d;
  out.model_id = model.label;
  out.seed = seed;
  out.per_replicate_counts.assign(replicates, 0);
  out.per_replicate_vertices.assign(replicates, 0);

  const int threads = std::max(1, std::min(parallelism, replicates));
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&](int first) {
    for (int r = first; r < replicates; r += threads) {
      try {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        const HullCensus census = replicate_census(model, N, rng, nullptr);
        out.per_replicate_counts[r] = static_cast<int>(census.facets.size());
        out.per_replicate_vertices[r] =
            static_cast<int>(census.vertices.size());
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0.0;
  for (int c : out.per_replicate_counts) sum += c;
  out.mean = sum / replicates;
  double ss = 0.0;
  for (int c : out.per_replicate_counts) {
    const double dlt = c - out.mean;
    ss += dlt * dlt;
  }
  out.std_error = std::sqrt(ss / (replicates - 1.0) / replicates);
  return out;
}

MembershipEstimate estimate_outside_probability(const RadialModel& model,
                                                int N, int d, long long trials,
                                                std::uint64_t seed) {
  if (model.dim != d)
    throw InvalidArgs("estimate_outside_probability: d mismatch");
  if (N < d + 1)
    throw InvalidArgs("estimate_outside_probability: N must be at least d+1");
  if (trials < 1)
    throw InvalidArgs("estimate_outside_probability: need trials >= 1");

  long long outside_count = 0;
  double vertex_sum = 0.0;
  double diff_sum = 0.0, diff_ss = 0.0;
  for (long long t = 0; t < trials; ++t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    bool done = false;
    for (int attempt = 0; attempt < 10 && !done; ++attempt) {
      try {
        PointCloud cloud = sample_cloud(model, N, rng);
        const HullCensus census = hull_census(cloud);
        const std::vector<double> extra = sample_point(model, rng);

        PointCloud grown = cloud;
        grown.N = N + 1;
        grown.coords.insert(grown.coords.end(), extra.begin(), extra.end());
        const HullCensus grown_census = hull_census(grown);

        const bool outside = !inside_hull(census, extra.data(), d);
        const double vrate =
            static_cast<double>(grown_census.vertices.size()) / (N + 1.0);
        outside_count += outside ? 1 : 0;
        vertex_sum += vrate;
        const double diff = (outside ? 1.0 : 0.0) - vrate;
        const double delta = diff - diff_sum / std::max<long long>(t, 1);
        diff_sum += diff;
        diff_ss += delta * (diff - diff_sum / (t + 1.0));
        done = true;
      } catch (const DegenerateInput&) {
        if (attempt == 9) throw;
      }
    }
  }

  MembershipEstimate out;
  out.trials = trials;
  out.p_hat = static_cast<double>(outside_count) / trials;
  out.std_error =
      std::sqrt(std::max(0.0, out.p_hat * (1.0 - out.p_hat) / trials));
  out.vertex_rate = vertex_sum / trials;
  out.diff_mean = diff_sum / trials;
  out.diff_std_error =
      trials > 1 ? std::sqrt(diff_ss / (trials - 1.0) / trials) : 0.0;
  return out;
}

KernelEstimate empirical_kernel(const RadialModel& model, int d,
                                KernelTag kernel, std::vector<double> x_grid,
                                long long samples, std::uint64_t seed) {
  if (model.dim != d) throw InvalidArgs("empirical_kernel: d mismatch");
  if (samples < 10000)
    throw InvalidArgs("empirical_kernel: need at least 1e4 samples");
  if (kernel == KernelTag::F0 && d < 2)
    throw InvalidArgs("empirical_kernel: line statistic needs d >= 2");

  std::vector<double> stats(static_cast<std::size_t>(samples));
  RngStream rng(seed, 0);
  for (long long s = 0; s < samples; ++s) {
    double value = 0.0;
    switch (kernel) {
      case KernelTag::G: {
        const std::vector<double> p = sample_point(model, rng);
        value = p[0];
        break;
      }
      case KernelTag::K: {
        const std::vector<double> p = sample_point(model, rng);
        value = std::hypot(p[0], p[1]);
        break;
      }
      case KernelTag::H: {
        PointCloud cloud;
        cloud.d = d;
        cloud.N = d;
        cloud.coords.reserve(static_cast<std::size_t>(d) * d);
        for (int i = 0; i < d; ++i) {
          const std::vector<double> p = sample_point(model, rng);
          cloud.coords.insert(cloud.coords.end(), p.begin(), p.end());
        }
        std::vector<int> idx(d);
        std::iota(idx.begin(), idx.end(), 0);
        const double scale = cloud_scale(cloud);
        std::vector<double> n;
        try {
          n = subset_normal(cloud, idx, scale);
        } catch (const DegenerateInput&) {
          --s;  // affinely dependent draw, measure zero; redraw
          continue;
        }
        double dist = 0.0;
        const double* p0 = cloud.point(0);
        for (int c = 0; c < d; ++c) dist += n[c] * p0[c];
        value = std::fabs(dist);
        break;
      }
      case KernelTag::F0: {
        const std::vector<double> p = sample_point(model, rng);
        const std::vector<double> q = sample_point(model, rng);
        double uu = 0.0;
        std::vector<double> u(d);
        for (int c = 0; c < d; ++c) {
          u[c] = q[c] - p[c];
          uu += u[c] * u[c];
        }
        if (uu <= 0.0) {
          --s;
          continue;
        }
        double pu = 0.0;
        for (int c = 0; c < d; ++c) pu += p[c] * u[c];
        double dist2 = 0.0;
        for (int c = 0; c < d; ++c) {
          const double r = p[c] - pu / uu * u[c];
          dist2 += r * r;
        }
        value = std::sqrt(std::max(0.0, dist2));
        break;
      }
    }
    stats[static_cast<std::size_t>(s)] = value;
  }
  std::sort(stats.begin(), stats.end());

  KernelEstimate out;
  out.samples = samples;
  out.x = std::move(x_grid);
  out.survival.reserve(out.x.size());
  out.std_error.reserve(out.x.size());
  for (double x : out.x) {
    const auto it = std::upper_bound(stats.begin(), stats.end(), x);
    const double p =
        static_cast<double>(stats.end() - it) / static_cast<double>(samples);
    out.survival.push_back(p);
    out.std_error.push_back(std::sqrt(p * (1.0 - p) / samples));
  }
  return out;
}

}  // namespace hullfacets
