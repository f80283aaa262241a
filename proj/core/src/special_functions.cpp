#include "nonlocal/special_functions.hpp"

#include <cmath>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

bool is_non_positive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

// sin(pi x) with exact zeros at integers and reduced argument.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r > 1.0) return -std::sin(kPi * (r - 1.0));
  return std::sin(kPi * r);
}

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) return x;
  if (is_non_positive_integer(x)) {
    throw PoleError("gamma_fn: pole at x = " + std::to_string(x));
  }
  return std::tgamma(x);
}

double reciprocal_gamma(double x) {
  if (is_non_positive_integer(x)) return 0.0;
  // past ~171.6 tgamma overflows; go through lgamma so 1/Gamma underflows cleanly
  if (x > 171.0) return std::exp(-std::lgamma(x));
  return 1.0 / std::tgamma(x);
}

double digamma_fn(double x) {
  if (std::isnan(x)) return x;
  if (is_non_positive_integer(x)) {
    throw PoleError("digamma_fn: pole at x = " + std::to_string(x));
  }
  if (x < 0.0) {
    // psi(x) = psi(1 - x) - pi cot(pi x)
    const double s = sin_pi(x);
    const double c = std::cos(kPi * std::fmod(x, 2.0));
    return digamma_fn(1.0 - x) - kPi * c / s;
  }
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series with Bernoulli numbers B2..B14.
  const double inv2 = 1.0 / (x * x);
  const double tail =
      inv2 * (1.0 / 12.0 -
      inv2 * (1.0 / 120.0 -
      inv2 * (1.0 / 252.0 -
      inv2 * (1.0 / 240.0 -
      inv2 * (1.0 / 132.0 -
      inv2 * (691.0 / 32760.0 -
      inv2 * (1.0 / 12.0)))))));
  return shift + std::log(x) - 0.5 / x - tail;
}

}  // namespace nonlocal
