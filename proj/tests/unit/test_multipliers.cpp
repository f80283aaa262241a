#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/errors.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/special_functions.hpp"
#include "nonlocal/torus_grid.hpp"
#include "test_util.hpp"

using namespace nonlocal;
using test_util::rel_err;

namespace {

struct Row {
  int n;
  double beta;
  double m_at_318pi;  // mpmath, delta = 0.1
};

constexpr Row kRows[] = {
    {1, 0.25, -728.4182158472438890394067}, {1, 1.0, -2074.950101663585933036664},
    {1, 1.5, -6918.024349497048777467777},  {2, 0.75, -1038.064378140385394561999},
    {2, 2.0, -3591.244462862223223622773},  {2, 3.0, -39561.37525864120850361598},
    {3, 1.75, -1551.591064372057455015368}, {3, 3.0, -5017.790008509334108293292},
    {3, 4.5, -200037.521724267651029076},
};

}  // namespace

TEST_SUITE("multipliers") {

TEST_CASE("m(0) = 0 and the classical multiplier is -r^2") {
  for (const auto& row : kRows) CHECK(multiplier(KernelParams::validate(row.n, row.beta, 0.1), 0.0) == 0.0);
  for (int n = 1; n <= 3; ++n) {
    const auto p = KernelParams::validate(n, n + 2.0, 0.37);
    CHECK(multiplier(p, 5.0) == -25.0);
    for (int i = 0; i <= 1000; ++i) {
      const double r = i;
      CHECK(std::abs(multiplier(p, r) + r * r) <= 1e-13 * std::max(1.0, r * r));
    }
  }
}

TEST_CASE("high-precision values at r = 318 pi") {
  const double r = 318.0 * std::numbers::pi;
  for (const auto& row : kRows) {
    CAPTURE(row.n);
    CAPTURE(row.beta);
    CHECK(rel_err(multiplier(KernelParams::validate(row.n, row.beta, 0.1), r), row.m_at_318pi) < 1e-12);
  }
}

TEST_CASE("extended regime value") {
  // mpmath, n = 1, beta = 3.5, delta = 0.1, r = 200
  CHECK(rel_err(multiplier(KernelParams::validate(1, 3.5, 0.1), 200.0), -119617.207678227861932505718022) <
        1e-12);
}

TEST_CASE("negative or non-finite radius is rejected") {
  const auto p = KernelParams::validate(2, 0.5, 1.0);
  CHECK_THROWS_AS(multiplier(p, -1.0), ParameterError);
  CHECK_THROWS_AS(multiplier(p, std::nan("")), ParameterError);
}

TEST_CASE("log-branch asymptotic formula") {
  const auto p = KernelParams::validate(2, 2.0, 1.0);
  for (double r : {2.0, 50.0, 1e4}) {
    const double expected =
        -(4.0 / 1.0) * (2.0 * std::log(r) + std::log(0.25) + kEulerGamma - digamma_fn(1.0));
    CHECK(rel_err(multiplier_asymptotic(p, r), expected) < 1e-14);
  }
  CHECK_THROWS_AS(multiplier_asymptotic(KernelParams::validate(2, 4.0, 1.0), 3.0), ParameterError);
  CHECK_THROWS_AS(multiplier_asymptotic(p, 0.0), ParameterError);
}

TEST_CASE("asymptotic ratio approaches one monotonically") {
  // mpmath reference values of m at r = 1e3, 1e4, 1e5
  const auto p = KernelParams::validate(1, 0.25, 0.1);
  const double ref1[3] = {-727.97394326862732771, -731.42823255057248688, -733.09222014707877892};
  const auto q = KernelParams::validate(2, 2.0, 0.1);
  const double ref2[3] = {-3592.01104779227111, -5433.4552676829649489, -7275.5267931446289027};
  const double radii[3] = {1e3, 1e4, 1e5};
  double gap_p = INFINITY, gap_q = INFINITY;
  for (int i = 0; i < 3; ++i) {
    const double mp = multiplier(p, radii[i]);
    const double mq = multiplier(q, radii[i]);
    CHECK(rel_err(mp, ref1[i]) < 1e-12);
    CHECK(rel_err(mq, ref2[i]) < 1e-12);
    const double gp = std::abs(mp / multiplier_asymptotic(p, radii[i]) - 1.0);
    const double gq = std::abs(mq / multiplier_asymptotic(q, radii[i]) - 1.0);
    CHECK(gp < gap_p);
    CHECK(gq < gap_q);
    gap_p = gp;
    gap_q = gq;
  }
  CHECK(gap_p < 1e-3);
  CHECK(gap_q < 1e-3);
}

TEST_CASE("bounded plateau for beta < n") {
  const auto p = KernelParams::validate(2, 0.5, 1e-3);
  const double plateau = -2.0 * 2 * (4.0 - 0.5) / (1e-6 * (2.0 - 0.5));
  const double m = multiplier(p, 1e6);
  CHECK(rel_err(m, -9333055.69582831509722741610786) < 1e-12);  // mpmath
  CHECK(rel_err(m, plateau) < 1e-4);
  CHECK(rel_err(m, multiplier_asymptotic(p, 1e6)) < 1e-4);
}

TEST_CASE("near-zero expansion") {
  CHECK(multiplier_near_zero(KernelParams::validate(2, 3.0, 0.1), 0.0) == 0.0);
  const auto p = KernelParams::validate(2, 3.0, 0.1);
  CHECK(std::abs(multiplier(p, 0.01) - (-0.0000999999979166667013888885013641)) < 1e-11);

  for (const auto& row : kRows) {
    const auto q = KernelParams::validate(row.n, row.beta, 0.1);
    const double c = near_zero_constant(q, 0.1);
    const auto f = Hyp2F3Params::multiplier_family(q);
    // the bound starts from the first series coefficient
    CHECK(c >= std::abs(f.a1 * f.a2 / (f.b1 * f.b2 * f.b3)) * 0.0025);
    for (int i = 0; i < 100; ++i) {
      const double r = 0.1 * i / 99.0;
      const double m = multiplier(q, r);
      CHECK(std::abs(m - multiplier_near_zero(q, r)) <= c * std::pow(r, 4));
    }
  }
}

TEST_CASE("lattice frequencies follow FFT order") {
  const TorusGrid g({2.0}, {6});
  CHECK(g.frequency_index(0, 0) == 0);
  CHECK(g.frequency_index(0, 3) == 3);
  CHECK(g.frequency_index(0, 4) == -2);
  CHECK(g.wavenumber(0, 5) == doctest::Approx(-std::numbers::pi));
  CHECK_THROWS_AS(TorusGrid({1.0}, {1}), ParameterError);
  CHECK_THROWS_AS(TorusGrid({-1.0}, {4}), ParameterError);
  CHECK_THROWS_AS(TorusGrid({1.0, 2.0}, {4}), ParameterError);
}

TEST_CASE("deduplicated lattice equals the naive per-point evaluation") {
  const auto p = KernelParams::validate(2, 0.5, 1.2);
  const TorusGrid g = TorusGrid::uniform(2, 20.0, 32, -10.0);
  const auto lattice = eigenvalue_lattice(p, g);
  for (std::size_t flat = 0; flat < g.total_points(); ++flat) {
    CHECK(lattice.values[flat] == multiplier(p, wavenumber_norm(g, flat)));
  }
  CHECK(lattice.values[0] == 0.0);
  // radius is |nu| up to rounding
  for (std::size_t flat = 0; flat < g.total_points(); ++flat) {
    const auto idx = g.unflatten(flat);
    const double a = g.wavenumber(0, idx[0]);
    const double b = g.wavenumber(1, idx[1]);
    CHECK(std::abs(wavenumber_norm(g, flat) - std::hypot(a, b)) <= 1e-14 * (1.0 + std::hypot(a, b)));
  }
  const auto radii = lattice_radii(g);
  CHECK(radii.radii.size() < g.total_points() / 4);
}

TEST_CASE("anisotropic 3D lattice") {
  const auto p = KernelParams::validate(3, 1.75, 0.5);
  const TorusGrid g({1.0, 2.0, 1.0}, {6, 4, 5});
  const auto lattice = eigenvalue_lattice(p, g);
  for (std::size_t flat = 0; flat < g.total_points(); ++flat) {
    CHECK(lattice.values[flat] == multiplier(p, wavenumber_norm(g, flat)));
  }
}

TEST_CASE("classical lattice is the spectral Laplacian") {
  const auto p = KernelParams::validate(2, 4.0, 0.3);
  const TorusGrid g({3.0, 5.0}, {16, 12});
  const auto lattice = eigenvalue_lattice(p, g);
  for (std::size_t flat = 0; flat < g.total_points(); ++flat) {
    const auto idx = g.unflatten(flat);
    const double a = g.wavenumber(0, idx[0]);
    const double b = g.wavenumber(1, idx[1]);
    CHECK(lattice.values[flat] == doctest::Approx(-(a * a + b * b)).epsilon(1e-14));
  }
}

}  // TEST_SUITE
