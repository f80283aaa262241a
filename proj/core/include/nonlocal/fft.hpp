#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace nonlocal {

/// Unnormalized complex FFT over a row-major array of the given shape.
/// forward computes sum_x f(x) e^{-i k x}, inverse the same with e^{+i k x}.
/// Plans are created once (planner calls are serialized internally) and may
/// be executed concurrently on different arrays.
class FftPlan {
 public:
  explicit FftPlan(std::vector<std::size_t> shape);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return size_; }
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }

  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

 private:
  struct Impl;
  std::vector<std::size_t> shape_;
  std::size_t size_ = 0;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nonlocal
