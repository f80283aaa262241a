#pragma once

#include <string>

namespace nonlocal {

/// How the multiplier of a kernel exponent is defined.
enum class KernelRegime {
  integrable,  ///< beta < n + 2: the integral operator exists.
  classical,   ///< beta == n + 2: multipliers are exactly -|nu|^2.
  extended,    ///< beta > n + 2: defined through the hypergeometric multiplier only.
};

std::string to_string(KernelRegime regime);

/// Absolute distance in beta within which n + 4, n + 6, ... count as poles.
inline constexpr double kPoleTolerance = 1e-12;

/// Validated operator parameters: dimension n, kernel exponent beta, horizon delta.
/// Instances are only obtainable through validate(), so holding one means the
/// invariants hold.
class KernelParams {
 public:
  /// Throws ParameterError (with a classified reason) when the triple is
  /// invalid: n outside {1, 2, 3}, non-finite values, delta <= 0, or beta
  /// within kPoleTolerance of n + 4, n + 6, ...
  static KernelParams validate(int n, double beta, double delta);

  int dimension() const noexcept { return n_; }
  double beta() const noexcept { return beta_; }
  double delta() const noexcept { return delta_; }
  KernelRegime regime() const noexcept { return regime_; }
  bool integrable() const noexcept { return regime_ == KernelRegime::integrable; }

  /// Same n and beta with a different horizon.
  KernelParams with_delta(double delta) const;

  friend bool operator==(const KernelParams&, const KernelParams&) = default;

 private:
  KernelParams(int n, double beta, double delta, KernelRegime regime)
      : n_(n), beta_(beta), delta_(delta), regime_(regime) {}

  int n_;
  double beta_;
  double delta_;
  KernelRegime regime_;
};

/// c^{delta,beta} = 2 (n + 2 - beta) Gamma(n/2 + 1) / (pi^{n/2} delta^{n + 2 - beta}).
/// Zero in the classical case and negative for beta > n + 2.
double scaling_constant(const KernelParams& p);

}  // namespace nonlocal
