#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/special_functions.hpp"
#include "test_util.hpp"

using namespace nonlocal;
using test_util::rel_err;

namespace {

// Composite 20-point Gauss-Legendre on a geometric mesh toward 0; integrates
// s^e on [0, d] for e > -1 without knowing the closed form.
double graded_power_integral(double e, double d) {
  static const double x[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                               0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                               0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                               0.9931285991850949};
  static const double w[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                               0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                               0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                               0.0176140071391521};
  double total = 0.0;
  double hi = d;
  for (int level = 0; level < 400; ++level) {
    const double lo = hi * 0.5;
    const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
    double panel = 0.0;
    for (int i = 0; i < 10; ++i) {
      panel += w[i] * (std::pow(mid + half * x[i], e) + std::pow(mid - half * x[i], e));
    }
    total += panel * half;
    hi = lo;
  }
  // remaining [0, hi] is below double resolution of the sum for e > -1
  return total;
}

}  // namespace

TEST_SUITE("kernel_core") {

TEST_CASE("validate classifies regimes") {
  const auto a = KernelParams::validate(2, 0.5, 1.2);
  CHECK(a.regime() == KernelRegime::integrable);
  CHECK(a.integrable());

  const auto b = KernelParams::validate(1, 3.5, 0.1);
  CHECK(b.regime() == KernelRegime::extended);

  const auto c = KernelParams::validate(3, 5.0, 0.3);
  CHECK(c.regime() == KernelRegime::classical);
}

TEST_CASE("validate rejects bad input with a reason") {
  using R = ParameterError::Reason;
  auto reason_of = [](int n, double beta, double delta) {
    try {
      KernelParams::validate(n, beta, delta);
    } catch (const ParameterError& e) {
      return e.reason();
    }
    FAIL("expected a ParameterError");
    return R::bad_argument;
  };
  CHECK(reason_of(2, 6.0, 0.1) == R::excluded_pole);
  CHECK(reason_of(1, 7.0, 0.1) == R::excluded_pole);
  CHECK(reason_of(3, 7.0 + 5e-13, 0.1) == R::excluded_pole);
  CHECK(reason_of(2, 0.5, 0.0) == R::non_positive_horizon);
  CHECK(reason_of(2, 0.5, -1.0) == R::non_positive_horizon);
  CHECK(reason_of(0, 0.5, 1.0) == R::bad_dimension);
  CHECK(reason_of(4, 0.5, 1.0) == R::bad_dimension);
  CHECK(reason_of(2, std::nan(""), 1.0) == R::non_finite);
  CHECK(reason_of(2, 0.5, std::numeric_limits<double>::infinity()) == R::non_finite);

  // near a pole but outside the tolerance is fine, as is n + 5
  CHECK_NOTHROW(KernelParams::validate(2, 6.0 + 1e-9, 0.1));
  CHECK_NOTHROW(KernelParams::validate(2, 7.0, 0.1));
}

TEST_CASE("validate is total over random input") {
  for (int i = 0; i < 5000; ++i) {
    const int n = static_cast<int>(test_util::uniform(-3, 7));
    const double beta = test_util::uniform(-20, 20);
    const double delta = test_util::uniform(-2, 5);
    try {
      const auto p = KernelParams::validate(n, beta, delta);
      CHECK(p.delta() > 0.0);
    } catch (const ParameterError&) {
    }
  }
  // integer poles exactly hit
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < 5; ++k) {
      CHECK_THROWS_AS(KernelParams::validate(n, n + 4.0 + 2.0 * k, 1.0), ParameterError);
    }
  }
}

TEST_CASE("scaling constant closed forms") {
  CHECK(rel_err(scaling_constant(KernelParams::validate(1, 0.0, 1.0)), 3.0) < 1e-15);
  CHECK(rel_err(scaling_constant(KernelParams::validate(2, 0.0, 1.0)), 8.0 / std::numbers::pi) < 1e-15);
  // 40-digit evaluation of 2(n+2-beta)Gamma(n/2+1)/(pi^{n/2} delta^{n+2-beta}) with mpmath
  CHECK(rel_err(scaling_constant(KernelParams::validate(3, 1.75, 0.1)),
                2759.464093485781204446802899620083395128) < 1e-14);
  CHECK(scaling_constant(KernelParams::validate(2, 4.0, 0.1)) == 0.0);
  CHECK(scaling_constant(KernelParams::validate(1, 3.5, 0.1)) < 0.0);
}

TEST_CASE("scaling constant normalizes the second moment of the kernel") {
  // c = ( (1/2) int_{B_delta} z_1^2 |z|^{-beta} dz )^{-1}
  //   = ( (omega_n / (2n)) int_0^delta s^{n+1-beta} ds )^{-1}, omega_n the sphere area.
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 3;
    const double beta = test_util::uniform(-1.0, n + 1.9);
    const double delta = test_util::uniform(0.05, 3.0);
    const auto p = KernelParams::validate(n, beta, delta);
    const double omega = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
    const double moment = omega / (2.0 * n) * graded_power_integral(n + 1.0 - beta, delta);
    CHECK_MESSAGE(rel_err(scaling_constant(p), 1.0 / moment) < 1e-10, "n=" << n << " beta=" << beta);
  }
}

TEST_CASE("scaling constant scales as delta^-(n+2-beta)") {
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 3;
    const double beta = test_util::uniform(-2.0, n + 1.99);
    const double d1 = test_util::uniform(0.01, 10.0);
    const double d2 = test_util::uniform(0.01, 10.0);
    const double c1 = scaling_constant(KernelParams::validate(n, beta, d1));
    const double c2 = scaling_constant(KernelParams::validate(n, beta, d2));
    CHECK(rel_err(c1 / c2, std::pow(d2 / d1, n + 2.0 - beta)) < 1e-13);
  }
}

TEST_CASE("gamma and digamma") {
  CHECK(rel_err(gamma_fn(0.5), std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(rel_err(digamma_fn(1.0), -kEulerGamma) < 1e-15);
  // mpmath, 40 digits
  CHECK(rel_err(gamma_fn(7.3), 1271.423633663909273057993626678458337854) < 1e-14);
  CHECK(rel_err(digamma_fn(2.5), 0.7031566406452431872256903336679110994735) < 1e-14);
  CHECK(rel_err(digamma_fn(0.1), -10.42375494041107679516821621901002540429) < 1e-14);
  CHECK(rel_err(digamma_fn(37.25), 3.604169073005627167470488617393354808748) < 1e-14);

  for (int i = 1; i <= 500; ++i) {
    const double x = 0.1 * i;
    CHECK(rel_err(gamma_fn(x), std::tgamma(x)) < 1e-13);
    // recurrence psi(x + 1) = psi(x) + 1/x
    CHECK(std::abs(digamma_fn(x + 1.0) - digamma_fn(x) - 1.0 / x) < 1e-13 * (1.0 + std::abs(digamma_fn(x))));
  }
  // reflection region
  CHECK(rel_err(gamma_fn(-0.5), -2.0 * std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(rel_err(gamma_fn(-2.5), std::tgamma(-2.5)) < 1e-13);

  CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
  CHECK_THROWS_AS(gamma_fn(-3.0), PoleError);
  CHECK_THROWS_AS(digamma_fn(-1.0), PoleError);
  CHECK(reciprocal_gamma(-2.0) == 0.0);
  CHECK(rel_err(reciprocal_gamma(4.0), 1.0 / 6.0) < 1e-15);
}

}  // TEST_SUITE
