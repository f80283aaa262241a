#include "nonlocal/hyp2f3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "bigfloat.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/kernel.hpp"

namespace nonlocal {
namespace {

using detail::BigFloat;

constexpr double kLog2Of10 = 3.32192809488736234787;
// Products of up to four (param + k) doubles and k + 1 are exact at this width.
constexpr mpfr_prec_t kFactorBits = 256;
// Series is stopped once a term drops below 2^-kStopBits of the partial sum.
constexpr int kStopBits = 60;

bool is_non_positive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

struct SeriesShape {
  bool terminating = false;
  long last_index = 0;  // highest k with a non-zero term when terminating
  long settled_index = 0;  // from here on every (param + k) is positive
};

SeriesShape classify(const Hyp2F3Params& p) {
  SeriesShape shape;
  for (double a : {p.a1, p.a2}) {
    if (is_non_positive_integer(a)) {
      const long last = static_cast<long>(-a);
      if (!shape.terminating || last < shape.last_index) shape.last_index = last;
      shape.terminating = true;
    }
  }
  double biggest = 0.0;
  for (double v : {p.a1, p.a2, p.b1, p.b2, p.b3}) biggest = std::max(biggest, std::abs(v));
  shape.settled_index = static_cast<long>(std::ceil(biggest)) + 2;
  return shape;
}

double term_ratio(const Hyp2F3Params& p, double z, long k) {
  const double kk = static_cast<double>(k);
  return z * (p.a1 + kk) * (p.a2 + kk) /
         ((p.b1 + kk) * (p.b2 + kk) * (p.b3 + kk) * (kk + 1.0));
}

// log10 of the largest |term| of the series (0 for the constant term).
double log10_peak_term(const Hyp2F3Params& p, double z, const SeriesShape& shape,
                       std::size_t cap) {
  double log_term = 0.0;
  double best = 0.0;
  for (long k = 0; k < static_cast<long>(cap); ++k) {
    if (shape.terminating && k >= shape.last_index) break;
    const double ratio = std::abs(term_ratio(p, z, k));
    if (ratio == 0.0) break;
    log_term += std::log10(ratio);
    best = std::max(best, log_term);
    if (k >= shape.settled_index && ratio < 1.0) break;
  }
  return best;
}

struct SumResult {
  double value = 0.0;
  double abs_error = 0.0;
  double rel_rounding = 0.0;
  int terms = 1;
};

[[noreturn]] void throw_term_cap(double z, std::size_t cap) {
  std::ostringstream os;
  os << "2F3 series did not settle within " << cap << " terms at z = " << z;
  throw ConvergenceError(os.str());
}

SumResult sum_double(const Hyp2F3Params& p, double z, const SeriesShape& shape,
                     std::size_t cap) {
  double term = 1.0;
  double sum = 1.0;
  double abs_sum = 1.0;
  double tail = 0.0;
  long k = 0;
  for (;; ++k) {
    if (shape.terminating && k >= shape.last_index) break;
    if (k >= static_cast<long>(cap)) throw_term_cap(z, cap);
    term *= term_ratio(p, z, k);
    sum += term;
    abs_sum += std::abs(term);
    if (!shape.terminating && k + 1 >= shape.settled_index &&
        std::abs(term) <= std::ldexp(std::abs(sum), -kStopBits)) {
      const double ratio_next = std::abs(term_ratio(p, z, k + 1));
      if (ratio_next <= 0.5) {
        tail = 2.0 * ratio_next * std::abs(term);
        ++k;
        break;
      }
    }
  }
  SumResult out;
  out.value = sum;
  out.terms = static_cast<int>(k) + 1;
  const double rounding = (4.0 * out.terms + 4.0) * std::ldexp(1.0, -53) * abs_sum;
  out.abs_error = rounding + tail;
  out.rel_rounding = sum == 0.0 ? INFINITY : rounding / std::abs(sum);
  return out;
}

SumResult sum_mpfr(const Hyp2F3Params& p, double z, const SeriesShape& shape,
                   std::size_t cap, mpfr_prec_t bits) {
  BigFloat term(bits, 1.0);
  BigFloat sum(bits, 1.0);
  BigFloat abs_sum(64, 1.0);
  BigFloat magnitude(64);

  // Running (param + k) values; exact at kFactorBits.
  std::array<BigFloat, 2> upper = {BigFloat(kFactorBits, p.a1), BigFloat(kFactorBits, p.a2)};
  std::array<BigFloat, 3> lower = {BigFloat(kFactorBits, p.b1), BigFloat(kFactorBits, p.b2),
                                   BigFloat(kFactorBits, p.b3)};
  BigFloat numer(kFactorBits);
  BigFloat denom(kFactorBits);
  BigFloat zz(kFactorBits, z);

  double tail = 0.0;
  long k = 0;
  for (;; ++k) {
    if (shape.terminating && k >= shape.last_index) break;
    if (k >= static_cast<long>(cap)) throw_term_cap(z, cap);

    mpfr_mul(numer.get(), upper[0].get(), upper[1].get(), MPFR_RNDN);
    mpfr_mul(numer.get(), numer.get(), zz.get(), MPFR_RNDN);
    mpfr_mul(denom.get(), lower[0].get(), lower[1].get(), MPFR_RNDN);
    mpfr_mul(denom.get(), denom.get(), lower[2].get(), MPFR_RNDN);
    mpfr_mul_ui(denom.get(), denom.get(), static_cast<unsigned long>(k + 1), MPFR_RNDN);

    mpfr_mul(term.get(), term.get(), numer.get(), MPFR_RNDN);
    mpfr_div(term.get(), term.get(), denom.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    mpfr_abs(magnitude.get(), term.get(), MPFR_RNDU);
    mpfr_add(abs_sum.get(), abs_sum.get(), magnitude.get(), MPFR_RNDU);

    for (auto& u : upper) mpfr_add_ui(u.get(), u.get(), 1, MPFR_RNDN);
    for (auto& l : lower) mpfr_add_ui(l.get(), l.get(), 1, MPFR_RNDN);

    if (!shape.terminating && k + 1 >= shape.settled_index && !term.is_zero() &&
        !sum.is_zero() && mpfr_get_exp(term.get()) < mpfr_get_exp(sum.get()) - kStopBits) {
      const double ratio_next = std::abs(term_ratio(p, z, k + 1));
      if (ratio_next <= 0.5) {
        BigFloat tail_abs(64);
        mpfr_abs(tail_abs.get(), term.get(), MPFR_RNDU);
        mpfr_mul_d(tail_abs.get(), tail_abs.get(), 2.0 * ratio_next, MPFR_RNDU);
        tail = tail_abs.to_double();
        ++k;
        break;
      }
    }
  }

  SumResult out;
  out.terms = static_cast<int>(k) + 1;
  out.value = sum.to_double();

  BigFloat rounding(64);
  mpfr_mul_d(rounding.get(), abs_sum.get(), 4.0 * out.terms + 4.0, MPFR_RNDU);
  mpfr_mul_2si(rounding.get(), rounding.get(), -static_cast<long>(bits), MPFR_RNDU);
  if (sum.is_zero()) {
    out.rel_rounding = INFINITY;
  } else {
    BigFloat rel(64);
    mpfr_div(rel.get(), rounding.get(), sum.get(), MPFR_RNDU);
    mpfr_abs(rel.get(), rel.get(), MPFR_RNDU);
    out.rel_rounding = rel.to_double();
  }
  out.abs_error = rounding.to_double() + tail;
  return out;
}

void check_params(const Hyp2F3Params& p, double z) {
  using Reason = ParameterError::Reason;
  for (double v : {p.a1, p.a2, p.b1, p.b2, p.b3, z}) {
    if (!std::isfinite(v)) throw ParameterError(Reason::non_finite, "2F3: non-finite parameter");
  }
  for (double b : {p.b1, p.b2, p.b3}) {
    if (is_non_positive_integer(b)) {
      std::ostringstream os;
      os << "2F3: denominator parameter " << b << " is a non-positive integer";
      throw ParameterError(Reason::excluded_pole, os.str());
    }
  }
  if (z > 0.0) {
    throw ParameterError(Reason::bad_argument, "2F3: only z <= 0 is supported");
  }
}

mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 32;
}

}  // namespace

Hyp2F3Params Hyp2F3Params::multiplier_family(const KernelParams& p) {
  const double n = p.dimension();
  const double beta = p.beta();
  return Hyp2F3Params{1.0, 0.5 * (n + 2.0 - beta), 2.0, 0.5 * (n + 2.0), 0.5 * (n + 4.0 - beta)};
}

std::string to_string(SeriesMethod method) {
  switch (method) {
    case SeriesMethod::series: return "series";
    case SeriesMethod::extended_precision_series: return "extended_precision_series";
    case SeriesMethod::terminating: return "terminating";
  }
  return "unknown";
}

int required_precision(double z) {
  const double mag = std::abs(z);
  return 16 + static_cast<int>(std::ceil((2.0 * std::sqrt(mag) + std::log1p(mag)) / std::log(10.0)));
}

std::size_t term_cap(double z) {
  return 10 * static_cast<std::size_t>(std::ceil(std::sqrt(std::abs(z)))) + 200;
}

EvalReport eval_2f3(const Hyp2F3Params& p, double z, const Hyp2F3Options& opts) {
  check_params(p, z);
  const SeriesShape shape = classify(p);

  EvalReport report;
  if (z == 0.0 || (shape.terminating && shape.last_index == 0)) {
    report.value = 1.0;
    report.terms_used = 1;
    report.method = shape.terminating ? SeriesMethod::terminating : SeriesMethod::series;
    report.est_error = 0.0;
    return report;
  }

  const auto cap = static_cast<std::size_t>(std::ceil(static_cast<double>(term_cap(z)) * opts.cap_scale));
  const double peak = log10_peak_term(p, z, shape, cap);
  const double accept = opts.rel_tol / 8.0;

  if (peak <= 1.0) {
    const SumResult r = sum_double(p, z, shape, cap);
    if (r.rel_rounding <= accept) {
      report.value = r.value;
      report.terms_used = r.terms;
      report.est_error = r.abs_error;
      report.method = shape.terminating ? SeriesMethod::terminating : SeriesMethod::series;
      report.digits = 16;
      return report;
    }
  }

  int digits = std::max(required_precision(z),
                        20 + static_cast<int>(std::ceil(peak + std::log10(1.0 + std::abs(z)))));
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (digits > opts.max_digits) break;
    const SumResult r = sum_mpfr(p, z, shape, cap, bits_for_digits(digits));
    if (r.rel_rounding <= accept) {
      report.value = r.value;
      report.terms_used = r.terms;
      report.est_error = r.abs_error;
      report.method =
          shape.terminating ? SeriesMethod::terminating : SeriesMethod::extended_precision_series;
      report.digits = digits;
      return report;
    }
    const double deficit = std::isfinite(r.rel_rounding) ? std::log10(r.rel_rounding / accept) : 40.0;
    digits += static_cast<int>(std::ceil(deficit)) + 8;
  }

  std::ostringstream os;
  os << "2F3 at z = " << z << " needs more than " << opts.max_digits
     << " working digits; use the asymptotic form";
  throw ConvergenceError(os.str());
}

}  // namespace nonlocal
