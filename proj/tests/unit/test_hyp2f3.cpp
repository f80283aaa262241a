#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/hyp2f3.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/oracle.hpp"
#include "test_util.hpp"

using namespace nonlocal;
using test_util::rel_err;

namespace {

Hyp2F3Params family(int n, double beta) {
  return Hyp2F3Params::multiplier_family(KernelParams::validate(n, beta, 1.0));
}

struct Frozen {
  int n;
  double beta;
  double z;
  double value;  // mpmath hyp2f3 at 60 digits
};

constexpr Frozen kFrozen[] = {
    {2, 0.5, -100.0, 0.0230366897668590025153299092286},
    {1, 0.25, -100.0, 0.0170278536422651669485556626471},
    {3, 4.5, -100.0, 0.443409500282105581354657543743},
    {2, 0.5, -1e4, 0.00023336915004859377821244422953},
    {1, 0.25, -1e6, 0.00000183053787531508828132142481256},
    {3, 1.75, -2.5e5, 0.0000155951997570206344288463448957},
    {1, 3.5, -400.0, 4.22781154583333341823752466867},
};

}  // namespace

TEST_SUITE("hyp2f3") {

TEST_CASE("z = 0 gives exactly one") {
  const auto r = eval_2f3(family(2, 0.75), 0.0);
  CHECK(r.value == 1.0);
  CHECK(r.terms_used >= 1);
  CHECK(r.est_error == 0.0);
}

TEST_CASE("a2 = 0 terminates at the constant term") {
  for (int n = 1; n <= 3; ++n) {
    const auto p = family(n, n + 2.0);
    CHECK(p.a2 == 0.0);
    for (double z : {-1.0, -1e3, -1e8}) {
      const auto r = eval_2f3(p, z);
      CHECK(r.value == 1.0);
      CHECK(r.method == SeriesMethod::terminating);
    }
  }
}

TEST_CASE("negative integer a2 gives the exact finite sum") {
  const Hyp2F3Params p{1.0, -2.0, 2.0, 1.5, 0.5};
  const double z = -3.0;
  // 1 + (1)(-2) z / (2 * 1.5 * 0.5 * 1) + (1)(2)(-2)(-1) z^2 / (2*3 * 1.5*2.5 * 0.5*1.5 * 2)
  const double t1 = (1.0 * -2.0) * z / (2.0 * 1.5 * 0.5 * 1.0);
  const double t2 = t1 * (2.0 * -1.0) * z / (3.0 * 2.5 * 1.5 * 2.0);
  const auto r = eval_2f3(p, z);
  CHECK(r.method == SeriesMethod::terminating);
  CHECK(r.terms_used == 3);
  CHECK(rel_err(r.value, 1.0 + t1 + t2) < 1e-15);
}

TEST_CASE("frozen high-precision values") {
  for (const auto& f : kFrozen) {
    const auto r = eval_2f3(family(f.n, f.beta), f.z);
    CAPTURE(f.n);
    CAPTURE(f.beta);
    CAPTURE(f.z);
    CHECK(rel_err(r.value, f.value) < 1e-13);
    // the reported bound covers the actual error
    CHECK(std::abs(r.value - f.value) <= r.est_error + 1e-16 * std::abs(f.value));
    CHECK(r.est_error >= 0.0);
  }
}

TEST_CASE("extended precision is used once cancellation sets in") {
  CHECK(eval_2f3(family(2, 0.5), -0.5).method == SeriesMethod::series);
  const auto big = eval_2f3(family(2, 0.5), -1e4);
  CHECK(big.method == SeriesMethod::extended_precision_series);
  CHECK(big.digits >= required_precision(-1e4));
}

TEST_CASE("required precision covers the measured cancellation") {
  CHECK(required_precision(0.0) == 16);
  // log10(max |term| / |F|) measured with mpmath for three parameter families
  struct Cal {
    double z;
    double loss;
  };
  for (const Cal c : {Cal{-100.0, 5.77}, Cal{-100.0, 6.25}, Cal{-100.0, 3.34}, Cal{-1e4, 81.94},
                      Cal{-1e4, 82.89}, Cal{-1e4, 77.44}}) {
    CHECK(required_precision(c.z) >= 13 + static_cast<int>(std::ceil(c.loss)));
  }
  // grows like sqrt|z|
  CHECK(required_precision(-1e6) < 2 * required_precision(-2.5e5) + 16);
}

TEST_CASE("doubling the term cap changes nothing beyond the error bound") {
  for (const auto& f : kFrozen) {
    Hyp2F3Options wide;
    wide.cap_scale = 2.0;
    const auto a = eval_2f3(family(f.n, f.beta), f.z);
    const auto b = eval_2f3(family(f.n, f.beta), f.z, wide);
    CHECK(std::abs(a.value - b.value) <= a.est_error);
  }
}

TEST_CASE("tail bound dominates the first omitted term") {
  const auto p = family(3, 1.75);
  for (double z : {-0.3, -4.0, -25.0}) {
    const auto r = eval_2f3(p, z);
    // recompute the first omitted term independently in long double
    long double term = 1.0L;
    for (int k = 0; k < r.terms_used; ++k) {
      term *= static_cast<long double>(z) * (p.a1 + k) * (p.a2 + k) /
              ((p.b1 + k) * (p.b2 + k) * (p.b3 + k) * (k + 1.0L));
    }
    CHECK(r.est_error >= static_cast<double>(std::abs(term)));
  }
}

TEST_CASE("term cap and digit cap raise ConvergenceError") {
  Hyp2F3Options tight;
  tight.max_digits = 40;
  CHECK_THROWS_AS(eval_2f3(family(2, 0.5), -1e5, tight), ConvergenceError);
  Hyp2F3Options short_cap;
  short_cap.cap_scale = 0.01;
  CHECK_THROWS_AS(eval_2f3(family(2, 0.5), -1e4, short_cap), ConvergenceError);
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(eval_2f3(Hyp2F3Params{1, 1, -1.0, 1, 1}, -1.0), ParameterError);
  CHECK_THROWS_AS(eval_2f3(Hyp2F3Params{1, 1, 2, 0.0, 1}, -1.0), ParameterError);
  CHECK_THROWS_AS(eval_2f3(family(1, 0.5), 1.0), ParameterError);
  CHECK_THROWS_AS(eval_2f3(family(1, 0.5), std::nan("")), ParameterError);
}

TEST_CASE("assembled multiplier agrees with the quadrature oracle at random radii") {
  const double rows[9][2] = {{1, 0.25}, {1, 1.0}, {1, 1.5}, {2, 0.75}, {2, 2.0},
                             {2, 3.0},  {3, 1.75}, {3, 3.0}, {3, 4.5}};
  for (const auto& row : rows) {
    const auto p = KernelParams::validate(static_cast<int>(row[0]), row[1], 0.1);
    for (int i = 0; i < 100; ++i) {
      const double r = test_util::uniform(1.0, 318.0 * std::numbers::pi);
      const double m = multiplier(p, r);
      const auto q = multiplier_quadrature(p, r, 1e-14);
      CAPTURE(row[0]);
      CAPTURE(row[1]);
      CAPTURE(r);
      CHECK(rel_err(m, q.value) <= 1e-12);
    }
  }
}

}  // TEST_SUITE
