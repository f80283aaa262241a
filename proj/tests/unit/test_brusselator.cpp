#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "nonlocal/brusselator.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/multipliers.hpp"
#include "test_util.hpp"

using namespace nonlocal;

namespace {

BrusselatorConfig config(double beta, double delta, std::size_t points) {
  return BrusselatorConfig{KernelParams::validate(1, beta, delta), TorusGrid({20.0}, {points})};
}

double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

}  // namespace

TEST_SUITE("brusselator") {

TEST_CASE("step count of the full-resolution run") {
  const auto cfg = config(3.0, 1.0, 1600);
  const std::size_t steps = brusselator_step_count(cfg);
  // 40 / (1.9 * 0.0125^2) = 134736.84...
  CHECK(steps == 134737);
  CHECK(std::abs(static_cast<double>(steps) - 134738.0) <= 1.0);
  CHECK(brusselator_step_count(config(3.0, 1.0, 800)) == 33685);
}

TEST_CASE("2/3 dealiasing filter") {
  const TorusGrid g({1.0}, {12});
  std::vector<std::complex<double>> c(12, 1.0);
  apply_dealias(g, c);
  for (std::size_t k = 0; k < 12; ++k) {
    const long alpha = k <= 6 ? static_cast<long>(k) : static_cast<long>(k) - 12;
    CHECK(c[k] == (3 * std::abs(alpha) > 12 ? 0.0 : 1.0));
  }
  const TorusGrid g2({1.0, 2.0}, {16, 9});
  std::vector<std::complex<double>> d(g2.total_points());
  for (auto& x : d) x = {test_util::uniform(-1, 1), test_util::uniform(-1, 1)};
  apply_dealias(g2, d);
  const auto once = d;
  apply_dealias(g2, d);
  CHECK(d == once);
}

TEST_CASE("homogeneous state is an exact fixed point") {
  const BrusselatorModel model(config(2.5, 1.0, 64));
  const std::vector<double> u(64, 3.0), v(64, 11.0 / 3.0);
  std::vector<double> du(64), dv(64);
  model.rhs(u, v, du, dv);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(du[i] == 0.0);
    CHECK(dv[i] == 0.0);
  }
  const auto result = model.run(u, v);
  CHECK(result.steps == brusselator_step_count(model.config()));
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(std::abs(result.u[i] - 3.0) <= 1e-10);
    CHECK(std::abs(result.v[i] - 11.0 / 3.0) <= 1e-10);
  }
}

TEST_CASE("linearization about the fixed point") {
  const auto cfg = config(1.5, 1.0, 64);
  const BrusselatorModel model(cfg);
  const double nu = 2.0 * std::numbers::pi * 4.0 / 20.0;
  const double m = multiplier(cfg.params, nu);
  for (double eps : {1e-3, 1e-6}) {
    std::vector<double> u(64, 3.0), v(64), du(64), dv(64);
    for (std::size_t i = 0; i < 64; ++i) v[i] = 11.0 / 3.0 + eps * std::cos(nu * cfg.grid.coordinate(0, i));
    model.rhs(u, v, du, dv);
    for (std::size_t i = 0; i < 64; ++i) {
      const double c = std::cos(nu * cfg.grid.coordinate(0, i));
      // d(u^2 v)/dv = u^2 = 9, and a - (b+1)u + u^2 (b/a) = 0
      CHECK(std::abs(du[i] - 9.0 * eps * c) <= 1e-12 * (1.0 + 9.0 * eps));
      CHECK(std::abs(dv[i] - (cfg.Dv * m - 9.0) * eps * c) <= 1e-12 * (1.0 + 9.0 * eps));
    }
  }
}

TEST_CASE("spatial mean follows the reaction ODE") {
  auto cfg = config(2.5, 1.0, 64);
  cfg.t_end = 1.0;
  cfg.cfl_const = 0.05;
  const BrusselatorModel model(cfg);
  std::vector<double> u0(64), v0(64);
  for (std::size_t i = 0; i < 64; ++i) {
    const double x = cfg.grid.coordinate(0, i);
    u0[i] = 3.0 * (1.0 + 0.5 * std::sin(std::numbers::pi * x / 10.0));
    v0[i] = 11.0 / 3.0 + 0.1 * std::cos(3.0 * std::numbers::pi * x / 5.0);
  }
  const auto result = model.run(u0, v0, 1);
  const std::size_t frames = result.times.size();
  REQUIRE(frames == result.steps + 1);
  std::vector<double> g(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    std::vector<double> p(64);
    for (std::size_t i = 0; i < 64; ++i) p[i] = result.u_frames[f][i] * result.u_frames[f][i] * result.v_frames[f][i];
    g[f] = cfg.a - (cfg.b + 1.0) * mean(result.u_frames[f]) + mean(p);
  }
  // <u>(t) - <u>(0) against a cumulative Simpson integral of the reaction mean
  const double h = result.dt;
  double integral = 0.0, worst = 0.0;
  for (std::size_t f = 2; f < frames; f += 2) {
    integral += h / 3.0 * (g[f - 2] + 4.0 * g[f - 1] + g[f]);
    worst = std::max(worst, std::abs(mean(result.u_frames[f]) - mean(result.u_frames[0]) - integral));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("blow-up is detected") {
  auto cfg = config(3.0, 1.0, 64);
  cfg.cfl_const = 10.0;
  const BrusselatorModel model(cfg);
  std::vector<double> u(64), v(64);
  for (std::size_t i = 0; i < 64; ++i) {
    u[i] = 3.0 + 0.01 * std::sin(0.7 * static_cast<double>(i));
    v[i] = 11.0 / 3.0;
  }
  CHECK_THROWS_AS(model.run(u, v), InstabilityError);
}

}  // TEST_SUITE
