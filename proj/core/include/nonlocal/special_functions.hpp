#pragma once

namespace nonlocal {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Gamma function. Lanczos approximation (g = 7, 9 terms) with reflection
/// for x < 1/2. Throws PoleError at 0, -1, -2, ...
double gamma_fn(double x);

/// 1/Gamma(x); entire, returns exactly 0 at the poles of Gamma.
double reciprocal_gamma(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x). Upward recurrence into the
/// asymptotic regime, reflection for x < 0. Throws PoleError at 0, -1, ...
double digamma_fn(double x);

}  // namespace nonlocal
