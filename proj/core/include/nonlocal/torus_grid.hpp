#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nonlocal {

/// Periodic box prod_i [o_i, o_i + l_i) sampled with N_i points per axis.
/// Arrays over the grid are row-major with the last axis fastest, and the
/// Fourier index along axis i follows the FFT order 0, 1, ..., -1.
class TorusGrid {
 public:
  /// Throws ParameterError (bad_grid) for mismatched sizes, dimension outside
  /// 1..3, lengths <= 0 or non-finite, or fewer than 2 points per axis.
  TorusGrid(std::vector<double> lengths, std::vector<std::size_t> points,
            std::vector<double> origin = {});

  /// Cube [o, o + length)^n with the same point count on every axis.
  static TorusGrid uniform(int n, double length, std::size_t points, double origin = 0.0);

  int dimension() const noexcept { return static_cast<int>(lengths_.size()); }
  const std::vector<double>& lengths() const noexcept { return lengths_; }
  const std::vector<std::size_t>& points() const noexcept { return points_; }
  const std::vector<double>& origin() const noexcept { return origin_; }
  std::size_t total_points() const noexcept { return total_; }

  double spacing(int axis) const { return lengths_.at(axis) / static_cast<double>(points_.at(axis)); }
  double coordinate(int axis, std::size_t j) const {
    return origin_.at(axis) + static_cast<double>(j) * spacing(axis);
  }

  /// Signed integer frequency of FFT slot j along an axis (j <= N/2 maps to j).
  long frequency_index(int axis, std::size_t j) const;

  /// Angular wavenumber 2 pi alpha / l along an axis for FFT slot j.
  double wavenumber(int axis, std::size_t j) const;

  /// Multi-index of flat position `flat` (row-major).
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  /// Largest |nu_alpha| over the lattice.
  double max_wavenumber_norm() const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  std::vector<double> lengths_;
  std::vector<std::size_t> points_;
  std::vector<double> origin_;
  std::size_t total_ = 1;
};

/// Distinct |nu_alpha| values of a grid and, for every lattice point, the
/// slot of its radius. Radii are grouped by an exact integer key: the tuple of
/// sum alpha_i^2 over each set of axes that share the same length.
struct LatticeRadii {
  std::vector<double> radii;            ///< ascending, distinct keys
  std::vector<std::uint32_t> slot_of;   ///< one entry per lattice point
};

LatticeRadii lattice_radii(const TorusGrid& grid);

/// |nu_alpha| for the lattice point at flat position `flat`, computed from the
/// same integer keys as lattice_radii, so both agree bit for bit.
double wavenumber_norm(const TorusGrid& grid, std::size_t flat);

}  // namespace nonlocal
