#include "nonlocal/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

// The FFTW planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct FftPlan::Impl {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

FftPlan::FftPlan(std::vector<std::size_t> shape) : shape_(std::move(shape)), impl_(std::make_unique<Impl>()) {
  if (shape_.empty()) throw ParameterError(ParameterError::Reason::bad_grid, "FFT shape is empty");
  size_ = 1;
  std::vector<int> dims;
  for (std::size_t d : shape_) {
    if (d == 0) throw ParameterError(ParameterError::Reason::bad_grid, "FFT extent is zero");
    size_ *= d;
    dims.push_back(static_cast<int>(d));
  }
  std::vector<std::complex<double>> scratch(size_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->forward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, FFTW_FORWARD, flags);
  impl_->inverse = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, FFTW_BACKWARD, flags);
  if (!impl_->forward || !impl_->inverse) throw Error("FFTW could not create a plan");
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<std::complex<double>> data) const {
  if (data.size() != size_) throw ParameterError(ParameterError::Reason::bad_grid, "FFT size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->forward, buf, buf);
}

void FftPlan::inverse(std::span<std::complex<double>> data) const {
  if (data.size() != size_) throw ParameterError(ParameterError::Reason::bad_grid, "FFT size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->inverse, buf, buf);
}

}  // namespace nonlocal
