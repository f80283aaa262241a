#include "nonlocal/kernel.hpp"

#include <cmath>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {

std::string to_string(KernelRegime regime) {
  switch (regime) {
    case KernelRegime::integrable: return "integrable";
    case KernelRegime::classical: return "classical";
    case KernelRegime::extended: return "extended";
  }
  return "unknown";
}

KernelParams KernelParams::validate(int n, double beta, double delta) {
  using Reason = ParameterError::Reason;
  if (n < 1 || n > 3) {
    throw ParameterError(Reason::bad_dimension,
                         "dimension n must be 1, 2 or 3 (got " + std::to_string(n) + ")");
  }
  if (!std::isfinite(beta) || !std::isfinite(delta)) {
    throw ParameterError(Reason::non_finite, "beta and delta must be finite");
  }
  if (delta <= 0.0) {
    std::ostringstream os;
    os << "horizon delta must be positive (got " << delta << ")";
    throw ParameterError(Reason::non_positive_horizon, os.str());
  }

  // Poles sit at beta = n + 4, n + 6, ...; they are where the third
  // denominator parameter (n + 4 - beta)/2 hits 0, -1, -2, ...
  const double offset = beta - static_cast<double>(n) - 4.0;
  if (offset > -kPoleTolerance) {
    const double nearest_even = 2.0 * std::round(offset / 2.0);
    if (std::abs(offset - nearest_even) <= kPoleTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "beta = " << beta << " is an excluded pole (n + " << (4.0 + nearest_even) << ")";
      throw ParameterError(Reason::excluded_pole, os.str());
    }
  }

  const double classical_beta = static_cast<double>(n) + 2.0;
  KernelRegime regime = KernelRegime::integrable;
  if (beta == classical_beta) {
    regime = KernelRegime::classical;
  } else if (beta > classical_beta) {
    regime = KernelRegime::extended;
  }
  return KernelParams(n, beta, delta, regime);
}

KernelParams KernelParams::with_delta(double delta) const {
  return validate(n_, beta_, delta);
}

double scaling_constant(const KernelParams& p) {
  const double n = p.dimension();
  const double exponent = n + 2.0 - p.beta();
  if (exponent == 0.0) return 0.0;
  return 2.0 * exponent * gamma_fn(0.5 * n + 1.0) /
         (std::pow(kPi, 0.5 * n) * std::pow(p.delta(), exponent));
}

}  // namespace nonlocal
