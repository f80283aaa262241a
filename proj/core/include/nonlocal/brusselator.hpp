#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nonlocal/fft.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/torus_grid.hpp"

namespace nonlocal {

/// u_t = Du L u + a - (b + 1) u + u^2 v
/// v_t = Dv L v + b u - u^2 v
struct BrusselatorConfig {
  KernelParams params;
  TorusGrid grid;
  double Du = 0.0625;
  double Dv = 0.12;
  double a = 3.0;
  double b = 11.0;
  double t_end = 40.0;
  double cfl_const = 1.9;          ///< dt = cfl_const * dx^2 (smallest spacing)
  double blowup_threshold = 1e6;   ///< abort once max|u| exceeds this
};

/// Steps for a run: ceil(t_end / (cfl_const dx^2)), with the step then
/// shrunk uniformly to t_end / steps so the run ends exactly at t_end.
std::size_t brusselator_step_count(const BrusselatorConfig& cfg);

/// Zero every coefficient with |alpha_i| > N_i / 3 on some axis.
void apply_dealias(const TorusGrid& grid, std::span<std::complex<double>> coeffs);

struct BrusselatorResult {
  std::size_t steps = 0;
  double dt = 0.0;
  std::vector<double> times;                  ///< recorded frame times
  std::vector<std::vector<double>> u_frames;  ///< u at each recorded time
  std::vector<std::vector<double>> v_frames;
  std::vector<double> u;  ///< final state
  std::vector<double> v;
};

/// Pseudo-spectral Brusselator: diffusion applied diagonally in Fourier
/// space, reaction pointwise, the u^2 v product dealiased by the 2/3 rule,
/// fixed-step RK4 in time.
class BrusselatorModel {
 public:
  explicit BrusselatorModel(BrusselatorConfig cfg);
  /// Uses precomputed eigenvalues (e.g. from a table) instead of direct evaluation.
  BrusselatorModel(BrusselatorConfig cfg, EigenLattice eigen);

  const BrusselatorConfig& config() const noexcept { return cfg_; }
  const EigenLattice& eigen() const noexcept { return eigen_; }

  /// Right-hand side on physical samples.
  void rhs(std::span<const double> u, std::span<const double> v, std::span<double> du,
           std::span<double> dv) const;

  /// Runs to t_end, recording every `record_every` steps (0: first and last
  /// only). `on_frame` is called for each recorded frame when set.
  BrusselatorResult run(std::span<const double> u0, std::span<const double> v0,
                        std::size_t record_every = 0,
                        const std::function<void(double, std::span<const double>)>& on_frame = {}) const;

 private:
  BrusselatorConfig cfg_;
  EigenLattice eigen_;
  FftPlan plan_;
  std::vector<char> keep_;
  mutable std::vector<std::complex<double>> work_;
  mutable std::vector<std::complex<double>> product_;
};

}  // namespace nonlocal
