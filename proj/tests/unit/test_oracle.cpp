#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/oracle.hpp"
#include "test_util.hpp"

using namespace nonlocal;
using test_util::rel_err;

TEST_SUITE("oracle_quadrature") {

TEST_CASE("J0 against the standard library") {
  double worst = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = 0.005 * i;
    worst = std::max(worst, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
  }
  CHECK(worst < 5e-14);
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(-3.0) == bessel_j0(3.0));
  // J0 - 1 ~ -x^2/4 with no cancellation
  CHECK(rel_err(bessel_j0_minus_one(1e-6), -0.25e-12 + 1.5625e-26) < 1e-15);
  CHECK(std::abs(bessel_j0_minus_one(2.0) - (std::cyl_bessel_j(0.0, 2.0) - 1.0)) < 1e-15);
}

TEST_CASE("closed form: n = 1, beta = 0, delta = 1, r = pi") {
  // c = 3, m = 6 int_0^1 (cos(pi s) - 1) ds = -6
  const auto p = KernelParams::validate(1, 0.0, 1.0);
  const auto q = multiplier_quadrature(p, std::numbers::pi);
  CHECK(rel_err(q.value, -6.0) < 1e-13);
  CHECK(q.est_error <= 1e-13 * 6.0);
  CHECK(q.evaluations > 0);
}

TEST_CASE("r = 0 gives zero") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(multiplier_quadrature(KernelParams::validate(n, 0.5, 0.7), 0.0).value == 0.0);
  }
}

TEST_CASE("independent of the series on every regime") {
  struct Case {
    int n;
    double beta, delta, r;
  };
  const Case cases[] = {{1, 0.25, 0.1, 999.0}, {1, 2.5, 2.0, 40.0}, {2, 0.75, 1.0, 3.3},
                        {2, 2.0, 0.1, 1e3},    {2, 3.5, 0.4, 150.0}, {3, 1.75, 0.3, 77.0},
                        {3, 4.5, 0.1, 999.0},  {3, 0.0, 5.0, 12.0}};
  for (const auto& c : cases) {
    CAPTURE(c.n);
    CAPTURE(c.beta);
    CAPTURE(c.r);
    const auto p = KernelParams::validate(c.n, c.beta, c.delta);
    const auto q = multiplier_quadrature(p, c.r);
    CHECK(rel_err(q.value, multiplier(p, c.r)) < 1e-12);
  }
}

TEST_CASE("refinement does not move the answer") {
  const auto p = KernelParams::validate(2, 1.3, 0.8);
  const double r = 211.0;
  QuadratureOptions base;
  const auto a = multiplier_quadrature(p, r, base);
  QuadratureOptions fine = base;
  fine.panels_per_period = 2;
  const auto b = multiplier_quadrature(p, r, fine);
  CHECK(rel_err(b.value, a.value) < 2e-13);
  CHECK(b.evaluations > a.evaluations);

  const auto loose = multiplier_quadrature(p, r, 1e-8);
  const auto tight = multiplier_quadrature(p, r, 0.5e-8);
  CHECK(rel_err(loose.value, a.value) < 1e-8);
  CHECK(rel_err(tight.value, a.value) < 0.5e-8);
}

TEST_CASE("panel budget exhaustion") {
  QuadratureOptions opts;
  opts.max_panels = 4;
  CHECK_THROWS_AS(multiplier_quadrature(KernelParams::validate(1, 1.0, 1.0), 500.0, opts), ToleranceError);
}

TEST_CASE("rejected inputs") {
  using Reason = ParameterError::Reason;
  try {
    multiplier_quadrature(KernelParams::validate(1, 3.0, 1.0), 2.0);
    FAIL("classical kernel accepted");
  } catch (const ParameterError& e) {
    CHECK(e.reason() == Reason::not_integrable);
  }
  CHECK_THROWS_AS(multiplier_quadrature(KernelParams::validate(2, 4.5, 1.0), 2.0), ParameterError);
  CHECK_THROWS_AS(multiplier_quadrature(KernelParams::validate(2, 1.0, 1.0), 2.0, 1e-15), ParameterError);
  CHECK_THROWS_AS(multiplier_quadrature(KernelParams::validate(2, 1.0, 1.0), -2.0), ParameterError);
}

}  // TEST_SUITE
