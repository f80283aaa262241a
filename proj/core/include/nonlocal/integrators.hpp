#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nonlocal {

/// dy/dt = f(t, y), written into dydt.
using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Classical fixed-step Runge-Kutta 4 stepper with reusable scratch space.
class Rk4Stepper {
 public:
  explicit Rk4Stepper(std::size_t dimension);
  /// Advances y from t to t + h in place.
  void step(const OdeRhs& f, double t, double h, std::span<double> y);

 private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

struct AdaptiveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  ///< 0 selects a step from the initial derivative
  std::size_t max_steps = 50'000'000;
};

struct AdaptiveStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

/// Dormand-Prince 5(4) with local extrapolation, FSAL, and the usual
/// error-per-step control on the RMS of err_i / (atol + rtol max(|y_i|, |y_new_i|)).
/// Integrates y in place from t0 to t1. Throws InstabilityError on step-size
/// underflow, non-finite states or when max_steps is exhausted.
AdaptiveStats integrate_dopri5(const OdeRhs& f, double t0, double t1, std::span<double> y,
                               const AdaptiveOptions& opts = {});

}  // namespace nonlocal
