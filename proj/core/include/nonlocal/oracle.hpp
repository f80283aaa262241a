#pragma once

#include <cstddef>

#include "nonlocal/kernel.hpp"

namespace nonlocal {

/// Bessel J0. Ascending series for x <= 4, trapezoidal rule on the Bessel
/// integral for 4 < x < 25, Hankel asymptotic expansion beyond.
double bessel_j0(double x);

/// J0(x) - 1 without cancellation near x = 0.
double bessel_j0_minus_one(double x);

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;  ///< absolute
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  /// Relative tolerance on the integral, >= 1e-14.
  double tol = 1e-13;
  /// Sub-panels per half-period pi/r of the oscillation.
  std::size_t panels_per_period = 1;
  /// ToleranceError once refinement would exceed this many panels.
  std::size_t max_panels = 200000;
};

/// m(r) by adaptive Gauss-Kronrod (7/15) quadrature of the radially reduced
/// integral form, independent of the hypergeometric series:
///   n = 1: c * 2  int_0^delta (cos(rs) - 1) s^{-beta} ds
///   n = 2: c * 2pi int_0^delta (J0(rs) - 1) s^{1-beta} ds
///   n = 3: c * 4pi int_0^delta (sin(rs)/(rs) - 1) s^{2-beta} ds
/// Panels follow the half-periods s = k pi / r, a geometric mesh resolves the
/// s -> 0 end, and [0, 1e-4/r] is integrated from the Taylor expansion.
/// Requires beta < n + 2 (ParameterError otherwise).
QuadratureResult multiplier_quadrature(const KernelParams& p, double r,
                                       const QuadratureOptions& opts = {});

inline QuadratureResult multiplier_quadrature(const KernelParams& p, double r, double tol) {
  QuadratureOptions opts;
  opts.tol = tol;
  return multiplier_quadrature(p, r, opts);
}

}  // namespace nonlocal
