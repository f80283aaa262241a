#include <cmath>

#include "nonlocal/oracle.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {
namespace {

// sum_{k>=1} (-x^2/4)^k / (k!)^2
double j0_series_minus_one(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// J0(x) = (1/pi) int_0^pi cos(x sin t) dt. The integrand is smooth and
// periodic, so the trapezoidal rule with n panels errs by about 2 J_{2n}(x).
double j0_trapezoid(double x) {
  const int n = static_cast<int>(std::ceil(x)) + 24;
  const double h = kPi / n;
  double sum = 0.5 * (1.0 + 1.0);  // cos(0) at both ends
  for (int k = 1; k < n; ++k) sum += std::cos(x * std::sin(k * h));
  return sum / n;
}

double j0_hankel(double x) {
  // P and Q series with a_k = prod_{j=1..k} (-(2j-1)^2) / (k! 8^k).
  double p = 1.0;
  double q = 0.0;
  double a = 1.0;
  double last = INFINITY;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= -(odd * odd) / (8.0 * k * x);
    if (std::abs(a) >= last) break;  // asymptotic series started to diverge
    last = std::abs(a);
    // terms alternate between Q (odd k) and P (even k) with sign pattern
    // P = sum (-1)^m a_{2m}, Q = sum (-1)^m a_{2m+1}
    const int m = (k - 1) / 2;
    if (k % 2 == 1) {
      q += (m % 2 == 0 ? 1.0 : -1.0) * a;
    } else {
      const int mp = k / 2;
      p += (mp % 2 == 0 ? 1.0 : -1.0) * a;
    }
    if (last < 1e-17) break;
  }
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= 4.0) return 1.0 + j0_series_minus_one(x);
  if (x < 25.0) return j0_trapezoid(x);
  return j0_hankel(x);
}

double bessel_j0_minus_one(double x) {
  x = std::abs(x);
  if (x <= 4.0) return j0_series_minus_one(x);
  return bessel_j0(x) - 1.0;
}

}  // namespace nonlocal
