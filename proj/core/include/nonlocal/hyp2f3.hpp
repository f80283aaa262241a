#pragma once

#include <cstddef>
#include <string>

namespace nonlocal {

class KernelParams;

/// Parameters of 2F3(a1, a2; b1, b2, b3; z).
struct Hyp2F3Params {
  double a1 = 1.0;
  double a2 = 1.0;
  double b1 = 1.0;
  double b2 = 1.0;
  double b3 = 1.0;

  /// The family whose value at z = -r^2 delta^2 / 4 gives -m(r)/r^2:
  /// a = (1, (n+2-beta)/2), b = (2, (n+2)/2, (n+4-beta)/2).
  static Hyp2F3Params multiplier_family(const KernelParams& p);
};

enum class SeriesMethod {
  series,                     ///< plain double-precision Taylor sum
  extended_precision_series,  ///< Taylor sum in MPFR arithmetic sized to the cancellation
  terminating,                ///< a numerator parameter is 0, -1, -2, ...; finite sum
};

std::string to_string(SeriesMethod method);

struct EvalReport {
  double value = 0.0;
  int terms_used = 1;
  SeriesMethod method = SeriesMethod::series;
  /// Absolute error bound: truncation tail plus accumulated rounding.
  double est_error = 0.0;
  /// Working precision in decimal digits (16 for the double path).
  int digits = 16;
};

struct Hyp2F3Options {
  /// Target relative accuracy of the returned value.
  double rel_tol = 1e-13;
  /// Refuse to run the series above this many working digits.
  int max_digits = 60000;
  /// Multiplies the term cap of term_cap(z).
  double cap_scale = 1.0;
};

/// Evaluates 2F3 at z <= 0 by its Taylor series. For |z| beyond a few units the
/// alternating series cancels catastrophically, so the sum is carried in
/// extended precision sized by required_precision() and then re-checked against
/// an a posteriori rounding bound, escalating the precision if needed.
///
/// Throws ParameterError for a bad parameter set (b_i a non-positive integer,
/// non-finite input, z > 0) and ConvergenceError when the term cap or the digit
/// cap is exceeded.
EvalReport eval_2f3(const Hyp2F3Params& p, double z, const Hyp2F3Options& opts = {});

/// Working decimal digits that keep ~13 significant digits after summing the
/// alternating series at z: 16 + ceil((2 sqrt|z| + ln(1 + |z|)) / ln 10).
/// The largest term sits near k = sqrt|z| with magnitude about e^{2 sqrt|z|}.
int required_precision(double z);

/// Hard cap on the number of series terms: 10 ceil(sqrt|z|) + 200.
std::size_t term_cap(double z);

}  // namespace nonlocal
