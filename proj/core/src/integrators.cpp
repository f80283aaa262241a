#include "nonlocal/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nonlocal/errors.hpp"

namespace nonlocal {

Rk4Stepper::Rk4Stepper(std::size_t dimension)
    : k1_(dimension), k2_(dimension), k3_(dimension), k4_(dimension), tmp_(dimension) {}

void Rk4Stepper::step(const OdeRhs& f, double t, double h, std::span<double> y) {
  const std::size_t n = y.size();
  f(t, y, k1_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k1_[i];
  f(t + 0.5 * h, tmp_, k2_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
  f(t + 0.5 * h, tmp_, k3_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
  f(t + h, tmp_, k4_);
  const double h6 = h / 6.0;
  for (std::size_t i = 0; i < n; ++i) y[i] += h6 * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
}

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (error weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

AdaptiveStats integrate_dopri5(const OdeRhs& f, double t0, double t1, std::span<double> y,
                               const AdaptiveOptions& opts) {
  AdaptiveStats stats;
  if (!(t1 >= t0)) throw ParameterError(ParameterError::Reason::bad_argument, "integration needs t1 >= t0");
  if (t1 == t0) return stats;
  const std::size_t n = y.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);

  auto scale = [&](double a, double b) {
    return opts.atol + opts.rtol * std::max(std::abs(a), std::abs(b));
  };

  double t = t0;
  f(t, y, k1);
  ++stats.rhs_evaluations;

  double h = opts.initial_step;
  if (h <= 0.0) {
    // Hairer-Wanner starting step heuristic.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = scale(y[i], y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t1 - t0);
  }

  double previous_error = 1e-4;
  while (t < t1) {
    if (stats.accepted + stats.rejected >= opts.max_steps) {
      throw InstabilityError("adaptive integrator exhausted its step budget");
    }
    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < min_step) {
      std::ostringstream os;
      os << "step size underflow at t = " << t << " (h = " << h << ")";
      throw InstabilityError(os.str());
    }
    const bool last = t + h >= t1;
    if (last) h = t1 - t;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + h, ynew, k7);
    stats.rhs_evaluations += 6;

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double r = e / scale(y[i], ynew[i]);
      err += r * r;
    }
    err = std::sqrt(err / n);
    if (!std::isfinite(err)) {
      throw InstabilityError("non-finite state in adaptive integrator");
    }

    if (err <= 1.0) {
      t = last ? t1 : t + h;
      std::copy(ynew.begin(), ynew.end(), y.begin());
      std::swap(k1, k7);
      ++stats.accepted;
      // PI controller (Hairer-Wanner, beta = 0.04).
      const double factor = err == 0.0 ? 10.0
                                       : std::clamp(0.9 * std::pow(err, -0.7 / 5.0) *
                                                        std::pow(previous_error, 0.04),
                                                    0.2, 10.0);
      previous_error = std::max(err, 1e-4);
      h *= factor;
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return stats;
}

}  // namespace nonlocal
