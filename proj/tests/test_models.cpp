#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hullfacets/errors.hpp"
#include "hullfacets/quadrature.hpp"
#include "hullfacets/radial_model.hpp"
#include "hullfacets/rng.hpp"
#include "hullfacets/special.hpp"

using namespace hullfacets;

namespace {

std::vector<RadialModel> all_builtins() {
  return {gaussian_model(2), gaussian_model(3), gaussian_model(5),
          t_model(3.0, 2),   t_model(1.0, 3),   uniform_ball_model(2),
          uniform_ball_model(4), beta_type_model(0.5, 3),
          beta_type_model(-0.5, 2)};
}

// Radial survival of the multivariate t with k dof has the closed form
// I_{k/(k+x^2)}(k/2, d/2); the model itself builds it by quadrature, so
// this is an independent check.
double t_survival_closed(double k, int d, double x) {
  return sf::ibeta(0.5 * k, 0.5 * d, k / (k + x * x));
}

}  // namespace

TEST_CASE("gaussian radial survival in d=2 is exp(-x^2/2)") {
  auto m = gaussian_model(2);
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.5})
    CHECK(m.survival(x) == doctest::Approx(std::exp(-0.5 * x * x))
                               .epsilon(1e-13));
}

TEST_CASE("gaussian radial survival in d=3 matches the erfc form") {
  auto m = gaussian_model(3);
  for (double x : {0.3, 1.0, 2.0}) {
    const double t = 0.5 * x * x;
    const double want =
        std::erfc(std::sqrt(t)) + 2.0 * std::sqrt(t / M_PI) * std::exp(-t);
    CHECK(m.survival(x) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("uniform ball survival is 1 - x^d") {
  CHECK(uniform_ball_model(5).survival(0.5) == doctest::Approx(0.96875));
  CHECK(uniform_ball_model(2).survival(1.0) == 0.0);
  CHECK(uniform_ball_model(2).survival(1.5) == 0.0);
}

TEST_CASE("beta-type with q=0 degenerates to the uniform ball") {
  auto b = beta_type_model(0.0, 3);
  auto u = uniform_ball_model(3);
  for (double x = 0.05; x < 1.0; x += 0.1)
    CHECK(b.survival(x) == doctest::Approx(u.survival(x)).epsilon(1e-12));
}

TEST_CASE("t model tabulated survival agrees with the beta closed form") {
  struct Case {
    double k;
    int d;
  };
  for (auto c : {Case{3, 2}, Case{1, 3}, Case{5, 4}, Case{0.5, 2}}) {
    auto m = t_model(c.k, c.d);
    for (double x : {1e-4, 0.01, 0.3, 1.0, 2.0, 10.0, 100.0, 1e4, 1e7}) {
      const double want = t_survival_closed(c.k, c.d, x);
      const double got = m.survival(x);
      CHECK(std::fabs(std::log(got / want)) < 5e-9);
    }
  }
}

TEST_CASE("t model k=1 d=2 tail is x^{-1}") {
  auto m = t_model(1.0, 2);
  CHECK(m.survival(100.0) * 100.0 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("t model tail constant matches gamma-ratio form") {
  // F(x) ~ (2 Gamma((k+d)/2)/(Gamma(k/2) Gamma(d/2))) k^{k/2-1} x^{-k}
  const double k = 3, d = 2;
  const double c = 2.0 * std::tgamma(0.5 * (k + d)) /
                   (std::tgamma(0.5 * k) * std::tgamma(0.5 * d)) *
                   std::pow(k, 0.5 * k - 1.0);
  CHECK(c == doctest::Approx(5.196152422706632).epsilon(1e-12));
  auto m = t_model(k, 2);
  CHECK(m.survival(100.0) * 1e6 == doctest::Approx(c).epsilon(0.02));
}

TEST_CASE("builtin survival invariants hold on a grid") {
  for (const auto& m : all_builtins()) {
    CHECK(m.survival(0.0) == 1.0);
    const double hi =
        std::isfinite(m.support_upper) ? m.support_upper : 20.0;
    double prev = 1.0;
    for (int i = 1; i <= 1000; ++i) {
      const double v = m.survival(hi * i / 1000.0);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("density integrates to one") {
  quad::Config cfg;
  cfg.rel_tol = 1e-10;
  for (const auto& m : all_builtins()) {
    auto r = quad::integrate_to(m.density, 0.0, m.support_upper, cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("sample_radius inverts the survival") {
  for (const auto& m : all_builtins()) {
    for (double u : {0.9999, 0.9, 0.5, 0.1, 1e-3}) {
      const double x = sample_radius(m, u);
      CHECK(m.survival(x) == doctest::Approx(u).epsilon(1e-10));
    }
    CHECK(sample_radius(m, 1.0) == 0.0);
  }
}

TEST_CASE("quantile of survival recovers the radius") {
  for (const auto& m : all_builtins()) {
    const double cap =
        std::isfinite(m.support_upper) ? m.support_upper : 6.0;
    for (double frac : {0.05, 0.2, 0.5, 0.8, 0.95}) {
      const double x = frac * cap;
      const double u = m.survival(x);
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
      CHECK(sample_radius(m, u) == doctest::Approx(x).epsilon(1e-10));
    }
  }
  // deep tail of an unbounded model
  auto g = gaussian_model(2);
  CHECK(sample_radius(g, g.survival(12.0)) ==
        doctest::Approx(12.0).epsilon(1e-10));
}

TEST_CASE("sample_radius trivial quantiles") {
  auto u2 = uniform_ball_model(2);
  CHECK(sample_radius(u2, 0.75) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("t model 1% quantile matches an empirical quantile") {
  auto m = t_model(3.0, 2);
  const double x01 = sample_radius(m, 0.01);
  RngStream g(2024, 0);
  const int n = 1000000;
  int above = 0;
  for (int i = 0; i < n; ++i)
    if (sample_radius(m, g.uniform()) >= x01) ++above;
  const double se = std::sqrt(0.01 * 0.99 / n);
  CHECK(std::fabs(double(above) / n - 0.01) < 4.0 * se);
}

TEST_CASE("sampled radii pass a KS band against the survival") {
  for (const auto& m : {gaussian_model(3), t_model(3.0, 2),
                        uniform_ball_model(3), beta_type_model(0.5, 2)}) {
    RngStream g(99, 1);
    const int n = 100000;
    std::vector<double> r(n);
    for (auto& v : r) v = sample_radius(m, g.uniform());
    std::sort(r.begin(), r.end());
    double dmax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double cdf = 1.0 - m.survival(r[size_t(i)]);
      dmax = std::max(dmax, std::fabs(cdf - double(i) / n));
      dmax = std::max(dmax, std::fabs(cdf - double(i + 1) / n));
    }
    CHECK(dmax < 1.63 / std::sqrt(double(n)) * 1.5);
  }
}

TEST_CASE("sample_point mean is zero by symmetry") {
  auto m = gaussian_model(3);
  RngStream g(7, 0);
  const int n = 100000;
  double mean[3] = {0, 0, 0}, var[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) {
    auto p = sample_point(m, g);
    for (int c = 0; c < 3; ++c) {
      mean[c] += p[size_t(c)];
      var[c] += p[size_t(c)] * p[size_t(c)];
    }
  }
  for (int c = 0; c < 3; ++c) {
    mean[c] /= n;
    var[c] = var[c] / n - mean[c] * mean[c];
    CHECK(std::fabs(mean[c]) < 4.0 * std::sqrt(var[c] / n));
  }
}

TEST_CASE("uniform ball points land in the half-radius ball at rate 1/8") {
  auto m = uniform_ball_model(3);
  RngStream g(11, 0);
  const int n = 100000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    auto p = sample_point(m, g);
    const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    if (r2 <= 0.25) ++inside;
  }
  const double se = std::sqrt(0.125 * 0.875 / n);
  CHECK(std::fabs(double(inside) / n - 0.125) < 4.0 * se);
}

TEST_CASE("gaussian coordinate tail probability matches erfc") {
  auto m = gaussian_model(2);
  RngStream g(5, 0);
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i)
    if (sample_point(m, g)[0] >= 1.0) ++hits;
  const double want = 0.5 * std::erfc(1.0 / std::sqrt(2.0));
  const double se = std::sqrt(want * (1.0 - want) / n);
  CHECK(std::fabs(double(hits) / n - want) < 4.0 * se);
}

TEST_CASE("non-monotone survival is detected") {
  TailFamily tf{TailVariant::Exponential, 0.0, SlowlyVaryingFn::constant()};
  auto bad = custom_model(
      [](double x) { return x <= 0 ? 1.0 : 0.5 + 0.4 * std::sin(3 * x); },
      [](double) { return 0.1; }, std::numeric_limits<double>::infinity(),
      tf, 2, "bad");
  CHECK_THROWS_AS(sample_radius(bad, 0.05), NonMonotoneSurvival);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(t_model(0.0, 2), InvalidParameter);
  CHECK_THROWS_AS(t_model(-1.0, 3), InvalidParameter);
  CHECK_THROWS_AS(beta_type_model(-1.0, 2), InvalidParameter);
  CHECK_THROWS_AS(gaussian_model(1), InvalidParameter);
  CHECK_THROWS_AS(uniform_ball_model(0), InvalidParameter);
}

TEST_CASE("model spec parsing") {
  auto m = model_from_spec(R"({"family":"t","d":2,"k":3})");
  CHECK(m.dim == 2);
  CHECK(m.tail.k == 3.0);
  CHECK(m.label == "t(k=3,d=2)");
  auto g = model_from_spec(R"({"family":"gaussian","d":4})");
  CHECK(g.dim == 4);
  CHECK_THROWS_AS(model_from_spec(R"({"family":"nope","d":2})"), InvalidArgs);
  CHECK_THROWS_AS(model_from_spec(R"({"family":"t","d":2})"), InvalidArgs);
  CHECK_THROWS_AS(model_from_spec(R"({"family":"custom","d":2})"),
                  InvalidArgs);
  CHECK_THROWS_AS(model_from_spec("not json"), InvalidArgs);
  CHECK_THROWS_AS(model_from_spec(R"({"family":"t","d":1,"k":1})"),
                  InvalidParameter);
  CHECK(model_spec_hash(m) != model_spec_hash(g));
  CHECK(model_spec_hash(m) ==
        model_spec_hash(model_from_spec(R"({"family":"t","d":2,"k":3})")));
}

TEST_CASE("slowly varying factors flatten out at large scale") {
  auto mt = t_model(2.0, 3);
  auto mg = gaussian_model(3);
  for (const auto& L : {mt.tail.L, mg.tail.L}) {
    for (double lam : {0.5, 2.0, 10.0}) {
      double prev = 1e9;
      for (double s = 1e2; s <= 1e12; s *= 100.0) {
        const double dev = std::fabs(L.eval(lam * s) / L.eval(s) - 1.0);
        CHECK(dev < prev + 1e-12);
        prev = dev;
      }
      CHECK(prev < 0.05);
    }
  }
}

TEST_CASE("slowly varying log-derivative matches finite differences") {
  auto m = gaussian_model(2);
  for (double s : {10.0, 1e4, 1e8}) {
    const double h = s * 1e-6;
    const double fd = (std::log(m.tail.L.eval(s + h)) -
                       std::log(m.tail.L.eval(s - h))) /
                      (2 * h);
    CHECK(m.tail.L.log_derivative(s) == doctest::Approx(fd).epsilon(1e-6));
  }
}
