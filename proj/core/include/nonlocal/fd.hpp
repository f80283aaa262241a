#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nonlocal/integrators.hpp"
#include "nonlocal/kernel.hpp"

namespace nonlocal {

/// Symmetric 1D finite-difference approximation of the nonlocal operator:
///   (A u)_i = a_0 u_i + sum_{j=1..r} a_j (u_{i+j} + u_{i-j}).
///
/// Coefficients come from piecewise-linear interpolation, on the nodes j dx,
/// of the first divided difference g(s) = (u(x+s) + u(x-s) - 2u(x)) / s
/// (with g(0) = 0) inside L u = c int_0^delta g(s) s^{1-beta} ds:
///   a_j = c W_j / (j dx),  W_j = int_0^delta psi_j(s) s^{1-beta} ds,
///   a_0 = -2 sum a_j,
/// where psi_j is the hat function centred at j dx. The rule is exact for
/// quadratics, so A u -> L u as dx -> 0 at fixed delta.
class FDStencil {
 public:
  /// Requires n = 1, beta < 3, and r dx >= delta (hats beyond delta are
  /// clipped at delta). Throws ParameterError otherwise.
  static FDStencil build(const KernelParams& p, std::size_t r, double dx);

  /// Fixed horizon: r = ceil(delta / dx).
  static FDStencil build_fixed_delta(const KernelParams& p, double dx);

  std::size_t radius() const noexcept { return a_.size() - 1; }
  double dx() const noexcept { return dx_; }
  const KernelParams& params() const noexcept { return params_; }
  /// a_0 .. a_r
  const std::vector<double>& coefficients() const noexcept { return a_; }

  /// |a_0| + 2 sum |a_j|: the max-norm of the operator, used as the natural
  /// scale when comparing applied values.
  double norm() const;

 private:
  FDStencil(KernelParams p, double dx, std::vector<double> a) : params_(p), dx_(dx), a_(std::move(a)) {}

  KernelParams params_;
  double dx_;
  std::vector<double> a_;
};

inline FDStencil build_stencil(const KernelParams& p, std::size_t r, double dx) {
  return FDStencil::build(p, r, dx);
}

/// lambda_k = a_0 + 2 sum a_j cos(2 pi k j dx / L), evaluated as
/// -4 sum a_j sin^2(pi k j dx / L) to avoid cancellation. k may be fractional.
std::vector<double> fd_eigenvalues(const FDStencil& s, double L, std::span<const double> ks);
double fd_eigenvalue(const FDStencil& s, double L, double k);

/// Periodic application of a stencil on an M-point grid: direct summation for
/// r <= 64, FFT-diagonal (circular convolution) beyond.
class StencilOperator {
 public:
  static constexpr std::size_t kDirectRadiusLimit = 64;

  StencilOperator(const FDStencil& s, std::size_t points);
  ~StencilOperator();
  StencilOperator(StencilOperator&&) noexcept;
  StencilOperator& operator=(StencilOperator&&) noexcept;

  std::size_t points() const noexcept { return points_; }
  bool uses_fft() const noexcept { return static_cast<bool>(fft_); }

  void apply(std::span<const double> u, std::span<double> out) const;

 private:
  struct FftPath;
  std::vector<double> a_;
  std::size_t points_;
  std::unique_ptr<FftPath> fft_;
};

/// Adaptive Dormand-Prince run of u_tt = A u on an M-point periodic grid.
std::vector<double> fd_wave_run(const FDStencil& s, std::span<const double> u0, std::span<const double> v0,
                                double t_end, const AdaptiveOptions& opts = {},
                                AdaptiveStats* stats = nullptr);

}  // namespace nonlocal
