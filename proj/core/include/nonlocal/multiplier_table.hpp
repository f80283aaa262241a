#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nonlocal/cubic_spline.hpp"
#include "nonlocal/kernel.hpp"

namespace nonlocal {

/// Fast radial interpolant of m(r) on [0, K].
///
/// Built by sampling m(theta) = m((K/2)(1 + cos theta)) on N equispaced angles,
/// transforming, zero-padding the spectrum to M modes, transforming back and
/// fitting a natural cubic spline through the M/2 + 1 resampled values, which
/// sit on the Chebyshev points of the second kind r_j = (K/2)(1 + cos(2 pi j/M)).
class MultiplierTable {
 public:
  /// Throws ParameterError unless K > 0, N >= 4, M even and M > N.
  static MultiplierTable build(const KernelParams& p, double K, std::size_t N, std::size_t M);

  /// Spline value; throws RangeError outside [0, K].
  double eval(double r) const { return spline_(r); }
  double operator()(double r) const { return spline_(r); }

  const KernelParams& params() const noexcept { return params_; }
  double cutoff() const noexcept { return K_; }
  std::size_t coarse_samples() const noexcept { return N_; }  ///< 0 for a loaded table
  std::size_t fine_samples() const noexcept { return M_; }
  const CubicSpline& spline() const noexcept { return spline_; }

  /// |c_k| / max |c|, k = 0..N/2, of the sampled m(theta). Empty when loaded.
  const std::vector<double>& coefficient_decay() const noexcept { return decay_; }
  /// Largest relative coefficient among the top 10% of resolved modes.
  double tail_ratio() const noexcept { return tail_ratio_; }
  /// Human-readable build warnings (e.g. an under-resolved spectrum).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Binary "NLMT" format, little-endian: magic, version u32, n u32, beta f64,
  /// delta f64, K f64, M u64, then M/2+1 node values and M/2+1 second derivatives.
  void save(const std::filesystem::path& path) const;
  static MultiplierTable load(const std::filesystem::path& path);

  /// Two columns r,m at the nodes, 17 significant digits.
  void write_csv(std::ostream& os) const;

 private:
  MultiplierTable(KernelParams p, double K, std::size_t N, std::size_t M)
      : params_(p), K_(K), N_(N), M_(M) {}

  KernelParams params_;
  double K_;
  std::size_t N_;
  std::size_t M_;
  CubicSpline spline_;
  std::vector<double> decay_;
  double tail_ratio_ = 0.0;
  std::vector<std::string> warnings_;
};

inline MultiplierTable build_table(const KernelParams& p, double K, std::size_t N, std::size_t M) {
  return MultiplierTable::build(p, K, N, M);
}

inline double table_eval(const MultiplierTable& t, double r) { return t.eval(r); }

/// Chebyshev node r_i = K sin^2(pi i / M), i = 0..M/2, ascending from 0 to K.
/// Equal to (K/2)(1 + cos(2 pi j / M)) with j = M/2 - i, but exact at both ends.
double chebyshev_node(double K, std::size_t M, std::size_t i);

}  // namespace nonlocal
