#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "nonlocal/errors.hpp"
#include "nonlocal/multiplier_table.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/spectral.hpp"
#include "test_util.hpp"

using namespace nonlocal;
using cplx = std::complex<double>;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_abs(const std::vector<double>& a) {
  double d = 0.0;
  for (double v : a) d = std::max(d, std::abs(v));
  return d;
}

std::vector<double> random_values(std::size_t count) {
  std::vector<double> v(count);
  for (auto& x : v) x = test_util::uniform(-1.0, 1.0);
  return v;
}

double l2(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

// Crossing points of {u = level} on grid edges, by linear interpolation.
std::vector<std::array<double, 2>> level_set(const TorusGrid& g, const std::vector<double>& u, double level) {
  const std::size_t nx = g.points()[0], ny = g.points()[1];
  std::vector<std::array<double, 2>> pts;
  auto at = [&](std::size_t i, std::size_t j) { return u[i * ny + j] - level; };
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const double f0 = at(i, j), fx = at(i + 1, j), fy = at(i, j + 1);
      const double x0 = g.coordinate(0, i), y0 = g.coordinate(1, j);
      if ((f0 < 0) != (fx < 0)) pts.push_back({x0 + g.spacing(0) * f0 / (f0 - fx), y0});
      if ((f0 < 0) != (fy < 0)) pts.push_back({x0, y0 + g.spacing(1) * f0 / (f0 - fy)});
    }
  }
  return pts;
}

double hausdorff(const std::vector<std::array<double, 2>>& a, const std::vector<std::array<double, 2>>& b) {
  auto directed = [](const auto& p, const auto& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = INFINITY;
      for (const auto& y : q) best = std::min(best, std::hypot(x[0] - y[0], x[1] - y[1]));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("transform round trip and conjugate symmetry") {
  const TorusGrid g({3.0, 7.0}, {16, 13});
  const auto v = random_values(g.total_points());
  const auto f = SpectralField::from_values(g, v);
  CHECK(max_abs_diff(f.to_values(), v) < 1e-13);

  const auto idx_of = [&](long a, long b) {
    const long na = 16, nb = 13;
    return static_cast<std::size_t>(((a % na + na) % na) * nb + ((b % nb + nb) % nb));
  };
  double worst = 0.0;
  for (long a = 0; a < 16; ++a)
    for (long b = 0; b < 13; ++b)
      worst = std::max(worst, std::abs(f.coeffs()[idx_of(a, b)] - std::conj(f.coeffs()[idx_of(-a, -b)])));
  CHECK(worst < 1e-16);

  auto bad = f;
  bad.coeffs()[1] += cplx(0.0, 0.1);
  CHECK_THROWS_AS(bad.to_values(), InstabilityError);
  CHECK_THROWS_AS(SpectralField(g, std::vector<cplx>(3)), ParameterError);
}

TEST_CASE("operator basics") {
  const auto p = KernelParams::validate(2, 0.5, 1.2);
  const TorusGrid g = TorusGrid::uniform(2, 2.0 * std::numbers::pi, 24);

  const std::vector<double> ones(g.total_points(), 3.5);
  CHECK(max_abs(apply_operator(p, SpectralField::from_values(g, ones)).to_values()) < 1e-13);

  // three modes, each scaled by its own multiplier
  auto f = [](std::span<const double> x) {
    return std::cos(x[0]) + 0.5 * std::sin(2.0 * x[0] + 3.0 * x[1]) - 0.25 * std::cos(5.0 * x[1]);
  };
  const auto out = apply_operator(p, SpectralField::from_function(g, f)).to_values();
  const double m1 = multiplier(p, 1.0), m2 = multiplier(p, std::sqrt(13.0)), m3 = multiplier(p, 5.0);
  std::vector<double> want(g.total_points());
  for (std::size_t k = 0; k < want.size(); ++k) {
    const auto idx = g.unflatten(k);
    const double x = g.coordinate(0, idx[0]), y = g.coordinate(1, idx[1]);
    want[k] = m1 * std::cos(x) + 0.5 * m2 * std::sin(2.0 * x + 3.0 * y) - 0.25 * m3 * std::cos(5.0 * y);
  }
  CHECK(max_abs_diff(out, want) < 1e-12 * max_abs(want));

  // classical kernel is the spectral Laplacian
  const auto q = KernelParams::validate(2, 4.0, 0.7);
  const auto lap = apply_operator(q, SpectralField::from_function(g, f)).to_values();
  for (std::size_t k = 0; k < want.size(); ++k) {
    const auto idx = g.unflatten(k);
    const double x = g.coordinate(0, idx[0]), y = g.coordinate(1, idx[1]);
    want[k] = -std::cos(x) - 0.5 * 13.0 * std::sin(2.0 * x + 3.0 * y) + 0.25 * 25.0 * std::cos(5.0 * y);
  }
  CHECK(max_abs_diff(lap, want) < 1e-12 * max_abs(want));
}

TEST_CASE("operator linearity on random fields") {
  const auto p = KernelParams::validate(1, 1.5, 0.3);
  const TorusGrid g({20.0}, {256});
  const auto eigen = eigenvalue_lattice(p, g);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_values(g.total_points());
    const auto v = random_values(g.total_points());
    const double a = test_util::uniform(-2, 2), b = test_util::uniform(-2, 2);
    std::vector<double> w(u.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = a * u[i] + b * v[i];
    const auto lu = apply_operator(eigen, SpectralField::from_values(g, u)).to_values();
    const auto lv = apply_operator(eigen, SpectralField::from_values(g, v)).to_values();
    const auto lw = apply_operator(eigen, SpectralField::from_values(g, w)).to_values();
    std::vector<double> combo(u.size());
    for (std::size_t i = 0; i < w.size(); ++i) combo[i] = a * lu[i] + b * lv[i];
    CHECK(max_abs_diff(lw, combo) < 1e-13 * max_abs(lw));
  }
}

TEST_CASE("table-backed operator matches the direct one") {
  const auto p = KernelParams::validate(2, 2.3, 0.4);
  const TorusGrid g = TorusGrid::uniform(2, 10.0, 32);
  const auto table = build_table(p, g.max_wavenumber_norm() * (1.0 + 1e-9), 64, 1024);
  const auto f = SpectralField::from_values(g, random_values(g.total_points()));
  const auto a = apply_operator(table, f).to_values();
  const auto b = apply_operator(p, f).to_values();
  CHECK(max_abs_diff(a, b) < 1e-8 * max_abs(b));
  const auto tiny = build_table(p, 1.0, 16, 64);
  CHECK_THROWS_AS(apply_operator(tiny, f), RangeError);
}

TEST_CASE("heat: single mode and identity") {
  const auto p = KernelParams::validate(2, 1.0, 1.0);
  const TorusGrid g({4.0, 6.0}, {32, 24});
  const double nx = 2.0 * std::numbers::pi * 3.0 / 4.0, ny = 2.0 * std::numbers::pi * 2.0 / 6.0;
  auto mode = [&](std::span<const double> x) { return std::cos(nx * x[0] + ny * x[1]); };
  // exact single mode in coefficient space: +-(3, 2) at 1/2 each
  std::vector<cplx> coeffs(g.total_points());
  coeffs[3 * 24 + 2] = 0.5;
  coeffs[(32 - 3) * 24 + (24 - 2)] = 0.5;
  const SpectralField u0(g, coeffs);
  const HeatSolution sol(eigenvalue_lattice(p, g), u0);
  const auto same = heat_evolve(sol, 0.0);
  for (std::size_t k = 0; k < g.total_points(); ++k) CHECK(same.coeffs()[k] == u0.coeffs()[k]);

  const double m = multiplier(p, std::hypot(nx, ny));
  for (double t : {0.1, 0.7, 3.0}) {
    const auto u = heat_evolve(sol, t).to_values();
    const auto base = sample_on_grid(g, mode);
    double err = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) err = std::max(err, std::abs(u[k] - std::exp(m * t) * base[k]));
    CHECK(err <= 1e-12 * std::exp(m * t));
  }
  CHECK_THROWS_AS(heat_evolve(sol, -1.0), ParameterError);
}

TEST_CASE("heat: L2 norm never increases") {
  const auto p = KernelParams::validate(1, 0.75, 0.6);
  const TorusGrid g({10.0}, {128});
  const auto eigen = eigenvalue_lattice(p, g);
  for (double lam : eigen.values) REQUIRE(lam <= 0.0);
  for (int trial = 0; trial < 50; ++trial) {
    const HeatSolution sol(eigen, SpectralField::from_values(g, random_values(g.total_points())));
    double prev = l2(sol.initial());
    for (double t : {0.01, 0.1, 0.5, 1.0, 5.0}) {
      const double now = l2(sol.at(t));
      CHECK(now <= prev);
      prev = now;
    }
  }
}

TEST_CASE("wave: single mode, initial data and energy") {
  const auto p = KernelParams::validate(2, 3.0, 0.5);
  const TorusGrid g({5.0, 5.0}, {20, 20});
  const double nu = 2.0 * std::numbers::pi * 2.0 / 5.0;
  auto mode = [&](std::span<const double> x) { return std::cos(nu * x[0]); };
  const auto eigen = eigenvalue_lattice(p, g);
  const auto zero = SpectralField::from_values(g, std::vector<double>(g.total_points(), 0.0));
  const WaveSolution sol(eigen, SpectralField::from_function(g, mode), zero);
  const double w = std::sqrt(-multiplier(p, nu));
  const auto base = sample_on_grid(g, mode);
  for (double t : {0.0, 0.3, 2.0, 9.5}) {
    const auto u = wave_evolve(sol, t).to_values();
    double err = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) err = std::max(err, std::abs(u[k] - std::cos(w * t) * base[k]));
    CHECK(err < 1e-12);
  }

  // velocity at 0 is v0; one-sided second-order difference
  const auto u0 = SpectralField::from_values(g, random_values(g.total_points()));
  const auto v0 = SpectralField::from_values(g, random_values(g.total_points()));
  const WaveSolution sol2(eigen, u0, v0);
  const double h = 1e-6;
  const auto a = sol2.at(0.0).to_values(), b = sol2.at(h).to_values(), c = sol2.at(2 * h).to_values();
  const auto v = v0.to_values();
  std::vector<double> fd(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) fd[k] = (-3.0 * a[k] + 4.0 * b[k] - c[k]) / (2.0 * h);
  CHECK(max_abs_diff(fd, v) < 1e-6 * max_abs(v));
  CHECK(max_abs_diff(sol2.velocity_at(0.0).to_values(), v) < 1e-14);

  const double e0 = sol2.energy(0.0);
  for (int i = 1; i <= 100; ++i) CHECK(std::abs(sol2.energy(0.1 * i) - e0) <= 1e-10 * e0);
}

TEST_CASE("wave: zero mode grows linearly") {
  const auto p = KernelParams::validate(1, 2.0, 1.0);
  const TorusGrid g({1.0}, {8});
  const WaveSolution sol(eigenvalue_lattice(p, g),
                         SpectralField::from_values(g, std::vector<double>(8, 1.0)),
                         SpectralField::from_values(g, std::vector<double>(8, 0.5)));
  for (double u : sol.at(4.0).to_values()) CHECK(u == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("pseudo-spectral integrator reproduces the exact mode") {
  const auto p = KernelParams::validate(1, 1.0 / 3.0, 0.3);
  const TorusGrid g({20.0}, {128});
  const auto eigen = eigenvalue_lattice(p, g);
  const double nu = 2.0 * std::numbers::pi * 5.0 / 20.0;
  auto mode = [&](std::span<const double> x) { return std::cos(nu * x[0]) + 0.3 * std::sin(2 * nu * x[0]); };
  const auto u0 = sample_on_grid(g, mode);
  const std::vector<double> v0(g.total_points(), 0.0);
  AdaptiveStats stats;
  const auto u = wave_pseudospectral_run(eigen, u0, v0, 10.0, {}, &stats);
  const WaveSolution exact(eigen, SpectralField::from_values(g, u0), SpectralField::from_values(g, v0));
  CHECK(max_abs_diff(u, exact.at(10.0).to_values()) < 1e-6);
  CHECK(stats.accepted > 0);
  CHECK(stats.rhs_evaluations >= 6 * stats.accepted);
}

TEST_CASE("heat: small-horizon level sets track the classical ones") {
  // reduced-resolution version of the 800x800 blob study
  const TorusGrid g = TorusGrid::uniform(2, 20.0, 200, -10.0);
  auto blob = [](std::span<const double> x) { return std::exp(-std::pow(x[0], 8) - std::pow(x[1], 8)); };
  const auto u0 = SpectralField::from_function(g, blob);
  const auto classical = HeatSolution(eigenvalue_lattice(KernelParams::validate(2, 4.0, 0.1), g), u0);
  const auto ref = level_set(g, classical.at(2.0).to_values(), 0.1);
  REQUIRE(ref.size() > 100);
  for (double beta : {1.0, 3.0, 5.0}) {
    CAPTURE(beta);
    const HeatSolution sol(eigenvalue_lattice(KernelParams::validate(2, beta, 0.1), g), u0);
    const auto pts = level_set(g, sol.at(2.0).to_values(), 0.1);
    CHECK(hausdorff(pts, ref) <= g.spacing(0));
  }
}

}  // TEST_SUITE
