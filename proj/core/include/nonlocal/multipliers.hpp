#pragma once

#include <functional>
#include <vector>

#include "nonlocal/hyp2f3.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/torus_grid.hpp"

namespace nonlocal {

class MultiplierTable;

/// m(r) = -r^2 2F3(1, (n+2-beta)/2; 2, (n+2)/2, (n+4-beta)/2; -r^2 delta^2 / 4).
/// Exactly 0 at r = 0 and exactly -r^2 in the classical case. Throws
/// ParameterError for r < 0 or non-finite r and propagates ConvergenceError.
double multiplier(const KernelParams& p, double r);

/// Same as multiplier() but also returns the series report (value is of 2F3).
double multiplier(const KernelParams& p, double r, EvalReport& report);

/// Leading-order large-r behaviour:
///   beta != n: -2n(n+2-beta)/(delta^2 (n-beta))
///              + 2 (2/delta)^{n+2-beta} Gamma((n+4-beta)/2) Gamma((n+2)/2)
///                / ((n-beta) Gamma(beta/2)) r^{beta-n}
///   beta == n: -(2n/delta^2) (2 ln r + ln(delta^2/4) + gamma - psi(n/2))
/// The log branch is used when |beta - n| <= 1e-12. Requires r > 0 and a
/// non-classical beta.
double multiplier_asymptotic(const KernelParams& p, double r);

/// Small-r approximation -r^2.
double multiplier_near_zero(const KernelParams& p, double r);

/// C with |m(r) + r^2| <= C r^4 for r <= r_max: the k = 1 series coefficient
/// a1 a2 delta^2 / (4 b1 b2 b3), inflated to cover the remaining terms of the
/// series on [0, r_max].
double near_zero_constant(const KernelParams& p, double r_max = 0.1);

/// Eigenvalues lambda_alpha = m(|nu_alpha|) of the operator on a torus, one per
/// lattice point in the grid's row-major FFT layout.
struct EigenLattice {
  TorusGrid grid;
  std::vector<double> values;
};

/// Direct evaluation, once per distinct radius, in parallel.
EigenLattice eigenvalue_lattice(const KernelParams& p, const TorusGrid& grid);

/// Lookup through an interpolation table. Throws RangeError if the lattice
/// reaches beyond the table's cutoff.
EigenLattice eigenvalue_lattice(const MultiplierTable& table, const TorusGrid& grid);

/// Any radial symbol, evaluated once per distinct radius.
EigenLattice eigenvalue_lattice(const std::function<double(double)>& symbol, const TorusGrid& grid);

}  // namespace nonlocal
