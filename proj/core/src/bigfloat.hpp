#pragma once

// Minimal RAII handle over an MPFR number. Internal to the core library.

#include <mpfr.h>

#include <utility>

namespace nonlocal::detail {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(value_, bits); mpfr_set_zero(value_, 1); }
  BigFloat(mpfr_prec_t bits, double x) { mpfr_init2(value_, bits); mpfr_set_d(value_, x, MPFR_RNDN); }
  ~BigFloat() { mpfr_clear(value_); }

  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

 private:
  mpfr_t value_;
};

}  // namespace nonlocal::detail
