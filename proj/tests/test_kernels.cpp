#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hullfacets/errors.hpp"
#include "hullfacets/kernels.hpp"
#include "hullfacets/radial_model.hpp"

using namespace hullfacets;

TEST_CASE("kappa boundary values and the d=3 linear form") {
  for (int d = 2; d <= 6; ++d) {
    CHECK(kappa(d, 0.0) == 0.5);
    CHECK(kappa(d, 1.0) == 0.0);
  }
  CHECK(kappa(3, 0.3) == doctest::Approx(0.35).epsilon(1e-13));
  for (double r = 0.0; r <= 1.0; r += 0.125)
    CHECK(kappa(3, r) == doctest::Approx(0.5 * (1 - r)).epsilon(1e-12));
}

TEST_CASE("kappa in the plane is the normalized arc cosine") {
  for (double r : {0.1, 0.33, 0.5, 0.9})
    CHECK(kappa(2, r) ==
          doctest::Approx(std::acos(r) / M_PI).epsilon(1e-12));
}

TEST_CASE("lambda_d closed values") {
  for (int d = 2; d <= 6; ++d) CHECK(lambda_d(d, 0.0) == 1.0);
  for (double r : {0.2, 0.7, 1.0}) CHECK(lambda_d(2, r) == 1.0);
  CHECK(lambda_d(4, 0.6) == doctest::Approx(0.64).epsilon(1e-14));
}

TEST_CASE("kappa and lambda_d reject out-of-range arguments") {
  CHECK_THROWS_AS(kappa(3, -0.1), DomainError);
  CHECK_THROWS_AS(kappa(3, 1.1), DomainError);
  CHECK_THROWS_AS(lambda_d(3, 2.0), DomainError);
  CHECK_THROWS_AS(kappa(1, 0.5), InvalidParameter);
}

TEST_CASE("marginal survival of the gaussian is the normal tail") {
  auto m = gaussian_model(2);
  const KernelValue g1 = marginal_survival(m, 1.0);
  const double want = 0.5 * std::erfc(1.0 / std::sqrt(2.0));
  CHECK(want == doctest::Approx(0.15865525393145707).epsilon(1e-15));
  CHECK(g1.value == doctest::Approx(want).epsilon(1e-10));
  CHECK(g1.evaluations > 0);

  auto m3 = gaussian_model(3);
  for (double x : {0.5, 1.5, 3.0})
    CHECK(marginal_survival(m3, x).value ==
          doctest::Approx(0.5 * std::erfc(x / std::sqrt(2.0)))
              .epsilon(1e-9));
}

TEST_CASE("marginal survival boundary behavior") {
  for (const auto& m : {gaussian_model(4), uniform_ball_model(3)}) {
    CHECK(marginal_survival(m, 0.0).value == 0.5);
    CHECK(marginal_survival(m, 1e9).value == 0.0);
  }
  CHECK(marginal_survival(uniform_ball_model(3), 1.0).value == 0.0);
}

TEST_CASE("marginal survival near a truncated edge follows the power law") {
  // G(1-e) ~ a L(1/e) e^{k+(d-1)/2} with a(k=1,d=3)=1/4, L=3.
  auto m = uniform_ball_model(3);
  const double got = marginal_survival(m, 0.999).value;
  const double want = 0.25 * 3.0 * std::pow(1e-3, 2.0);
  CHECK(got == doctest::Approx(want).epsilon(0.05));
}

TEST_CASE("pair-norm survival of the gaussian is exp(-x^2/2) in any d") {
  for (int d : {2, 3, 5}) {
    auto m = gaussian_model(d);
    for (double x = 0.0; x <= 5.0; x += 0.5) {
      const KernelValue k = pair_norm_survival(m, x);
      CHECK(std::fabs(k.value - std::exp(-0.5 * x * x)) < 1e-8);
    }
  }
}

TEST_CASE("pair-norm survival in the plane reduces to the radial survival") {
  auto m = uniform_ball_model(2);
  CHECK(pair_norm_survival(m, 0.5).value ==
        doctest::Approx(0.75).epsilon(1e-10));
  CHECK(pair_norm_survival(m, 0.0).value == 1.0);
}

TEST_CASE("plane-distance survival agrees with the direct d=2 form") {
  for (const auto& m : {gaussian_model(2), uniform_ball_model(2)}) {
    for (double x : {0.25, 0.5, 1.0}) {
      if (x >= m.support_upper) continue;
      const double direct = testutil::plane_distance_d2_direct(m, x);
      CHECK(plane_distance_survival(m, x).value ==
            doctest::Approx(direct).epsilon(1e-8));
    }
  }
}

TEST_CASE("plane-distance survival without the cosine substitution") {
  quad::Config raw;
  raw.singularity_substitution = false;
  raw.rel_tol = 1e-7;
  raw.max_subdivisions = 4000;
  for (const auto& m : {gaussian_model(3), uniform_ball_model(2)}) {
    for (double x : {0.3, 0.8}) {
      const double sub = plane_distance_survival(m, x).value;
      const double unsub = plane_distance_survival(m, x, raw).value;
      CHECK(unsub == doctest::Approx(sub).epsilon(1e-5));
    }
  }
}

TEST_CASE("plane-distance survival near a truncated edge follows its law") {
  // H(1-e) ~ b L^d(1/e) e^{d(k+d/2-1)+1/2}; uniform disk: k=1, L=2, d=2.
  auto m = uniform_ball_model(2);
  const double b = 0.48016870195045663;
  const double want = b * 4.0 * std::pow(1e-3, 2.5);
  CHECK(plane_distance_survival(m, 0.999).value ==
        doctest::Approx(want).epsilon(0.05));
}

TEST_CASE("line-distance survival equals plane-distance survival in d=2") {
  auto m = uniform_ball_model(2);
  for (double x : {0.2, 0.5}) {
    const double h = plane_distance_survival(m, x).value;
    const double f0 = pair_plane_survival(m, x).value;
    CHECK(f0 == doctest::Approx(h).epsilon(1e-8));
  }
}

TEST_CASE("gaussian line-distance survival is the squared pair norm") {
  auto m = gaussian_model(3);
  const double f0 = pair_plane_survival(m, 0.7).value;
  CHECK(f0 == doctest::Approx(std::exp(-0.49)).epsilon(2e-7));
}

TEST_CASE("kernel boundary values at zero") {
  auto m = t_model(3.0, 2);
  CHECK(pair_plane_survival(m, 0.0).value == 1.0);
  CHECK(plane_distance_survival(m, 0.0).value == 1.0);
  CHECK(pair_norm_survival(m, 0.0).value == 1.0);
  CHECK(marginal_survival(m, 0.0).value == 0.5);
}

TEST_CASE("survival kernels are nonincreasing on a grid") {
  struct Probe {
    RadialModel m;
    double hi;
  };
  for (const auto& p :
       {Probe{gaussian_model(3), 4.0}, Probe{t_model(3.0, 2), 6.0},
        Probe{uniform_ball_model(3), 1.0}, Probe{beta_type_model(0.5, 2), 1.0}}) {
    double pg = 0.5, pk = 1.0, ph = 1.0;
    for (int i = 1; i <= 200; ++i) {
      const double x = p.hi * i / 200.0;
      const KernelValue g = marginal_survival(p.m, x);
      const KernelValue k = pair_norm_survival(p.m, x);
      const KernelValue h = plane_distance_survival(p.m, x);
      CHECK(g.value <= pg + g.abs_error_estimate + 1e-12);
      CHECK(k.value <= pk + k.abs_error_estimate + 1e-12);
      CHECK(h.value <= ph + h.abs_error_estimate + 1e-11);
      pg = g.value;
      pk = k.value;
      ph = h.value;
    }
  }
}

TEST_CASE("line-distance survival is nonincreasing on a coarse grid") {
  auto m = gaussian_model(3);
  double prev = 1.0;
  for (int i = 1; i <= 20; ++i) {
    const double x = 3.0 * i / 20.0;
    const KernelValue v = pair_plane_survival(m, x);
    CHECK(v.value <= prev + v.abs_error_estimate + 1e-10);
    prev = v.value;
  }
}

TEST_CASE("closed h matches its quadrature") {
  CHECK(h_closed_form(0, 0.6) ==
        doctest::Approx(3.9269908169872414).epsilon(1e-14));
  CHECK(h_closed_form(1, 0.5) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(h_quadrature(0, 0.6) ==
        doctest::Approx(3.9269908169872414).epsilon(1e-10));
  CHECK(h_quadrature(1, 0.5) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  for (int n = 0; n <= 8; ++n)
    for (double c = 0.1; c < 0.95; c += 0.1)
      CHECK(h_quadrature(n, c) ==
            doctest::Approx(h_closed_form(n, c)).epsilon(1e-8));
  CHECK_THROWS_AS(h_closed_form(2, 0.0), DomainError);
  CHECK_THROWS_AS(h_closed_form(2, 1.0), DomainError);
  CHECK_THROWS_AS(h_closed_form(-1, 0.5), DomainError);
}

TEST_CASE("evaluator tracks the direct kernels") {
  for (const auto& m : {gaussian_model(3), uniform_ball_model(2),
                        t_model(3.0, 2)}) {
    KernelEvaluator ev(m);
    const double hi = std::isfinite(m.support_upper) ? 0.95 : 3.0;
    for (double x = 0.2; x <= hi; x += 0.4) {
      const double kd = pair_norm_survival(m, x).value;
      CHECK(ev.K(x).value == doctest::Approx(kd).epsilon(2e-7));
      const double hd = plane_distance_survival(m, x).value;
      CHECK(ev.H(x).value == doctest::Approx(hd).epsilon(5e-7));
      CHECK(ev.G(x).value ==
            doctest::Approx(marginal_survival(m, x).value).epsilon(1e-12));
    }
    CHECK(ev.H(0.0).value == 1.0);
  }
}

TEST_CASE("line survival cap integral reproduces the squared pair norm") {
  for (int d : {2, 3}) {
    auto m = gaussian_model(d);
    auto fs = testutil::tabulate_line_survival(m, 150, 5.0);
    for (double u : {0.4, 0.9, 1.5}) {
      const double rhs = pair_norm_survival(m, u).value;
      const double lhs = testutil::line_survival_cap_integral(fs, m, u);
      CHECK(std::fabs(lhs - rhs * rhs) < 1e-6);
    }
  }
  auto mu = uniform_ball_model(2);
  auto fsu = testutil::tabulate_line_survival(mu, 150, 1.0);
  for (double u : {0.2, 0.5, 0.8}) {
    const double rhs = pair_norm_survival(mu, u).value;
    CHECK(std::fabs(testutil::line_survival_cap_integral(fsu, mu, u) -
                    rhs * rhs) < 1e-6);
  }
}
