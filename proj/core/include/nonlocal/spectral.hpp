#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nonlocal/integrators.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/torus_grid.hpp"

namespace nonlocal {

class MultiplierTable;

/// Fourier coefficients of a field on a torus, normalized so that
///   u(x) = sum_alpha c_alpha exp(i nu_alpha . (x - origin)),
/// i.e. c = FFT(u) / total_points. Stored in the grid's row-major FFT layout.
class SpectralField {
 public:
  SpectralField(TorusGrid grid, std::vector<std::complex<double>> coeffs);

  /// Forward transform of real samples (one per grid point, row-major).
  static SpectralField from_values(const TorusGrid& grid, std::span<const double> values);

  /// Samples f at every grid point and transforms.
  static SpectralField from_function(const TorusGrid& grid,
                                     const std::function<double(std::span<const double>)>& f);

  const TorusGrid& grid() const noexcept { return grid_; }
  std::span<const std::complex<double>> coeffs() const noexcept { return coeffs_; }
  std::span<std::complex<double>> coeffs() noexcept { return coeffs_; }

  /// Inverse transform. The imaginary residue must stay below
  /// imag_tolerance * max|u| (InstabilityError otherwise) and is dropped.
  std::vector<double> to_values(double imag_tolerance = 1e-12) const;

  /// Complex inverse transform without the realness check.
  std::vector<std::complex<double>> to_complex_values() const;

 private:
  TorusGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Samples of f on the grid, row-major; f receives the point coordinates.
std::vector<double> sample_on_grid(const TorusGrid& grid,
                                   const std::function<double(std::span<const double>)>& f);

/// Multiplies every coefficient by its eigenvalue. Grids must agree.
SpectralField apply_operator(const EigenLattice& eigen, const SpectralField& f);
SpectralField apply_operator(const KernelParams& p, const SpectralField& f);
/// Throws RangeError when the grid reaches beyond the table's cutoff.
SpectralField apply_operator(const MultiplierTable& table, const SpectralField& f);

/// u(t) = sum exp(lambda_alpha t) u0_alpha e_alpha.
class HeatSolution {
 public:
  HeatSolution(EigenLattice eigen, SpectralField initial);

  const EigenLattice& eigen() const noexcept { return eigen_; }
  const SpectralField& initial() const noexcept { return initial_; }

  /// Throws ParameterError for t < 0.
  SpectralField at(double t) const;

 private:
  EigenLattice eigen_;
  SpectralField initial_;
};

/// Per mode, u'' = lambda u with u(0) = u0, u'(0) = v0:
///   lambda < 0: u0 cos(w t) + v0 sin(w t) / w,  w = sqrt(-lambda)
///   lambda = 0: u0 + v0 t
///   lambda > 0: u0 cosh(w t) + v0 sinh(w t) / w
class WaveSolution {
 public:
  WaveSolution(EigenLattice eigen, SpectralField u0, SpectralField v0);

  const EigenLattice& eigen() const noexcept { return eigen_; }

  SpectralField at(double t) const;
  SpectralField velocity_at(double t) const;

  /// E(t) = sum_alpha |u'_alpha|^2 + |lambda_alpha| |u_alpha|^2.
  double energy(double t) const;

 private:
  EigenLattice eigen_;
  SpectralField u0_;
  SpectralField v0_;
};

/// Pseudo-spectral method of lines for u_tt = L u: the pair (u, u_t) is
/// integrated by Dormand-Prince 5(4) with L applied through FFTs.
/// Returns u at t_end on the grid; stats are filled when given.
std::vector<double> wave_pseudospectral_run(const EigenLattice& eigen, std::span<const double> u0,
                                            std::span<const double> v0, double t_end,
                                            const AdaptiveOptions& opts = {},
                                            AdaptiveStats* stats = nullptr);

inline SpectralField heat_evolve(const HeatSolution& sol, double t) { return sol.at(t); }
inline SpectralField wave_evolve(const WaveSolution& sol, double t) { return sol.at(t); }

}  // namespace nonlocal
