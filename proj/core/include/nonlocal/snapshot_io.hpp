#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/torus_grid.hpp"

namespace nonlocal {

/// A field sample at one time.
struct Snapshot {
  std::vector<std::size_t> shape;
  double time = 0.0;
  std::vector<double> values;  ///< row-major
};

/// Binary "NLFD" file, little-endian: magic, version u32, n u32,
/// N_1..N_n as u64, t f64, then the row-major f64 field.
void write_snapshot(const std::filesystem::path& path, const TorusGrid& grid, double t,
                    std::span<const double> values);
Snapshot read_snapshot(const std::filesystem::path& path);

/// CSV "x,u" of a 1D field (or of the first axis of an n-D field along index 0
/// of the others), 17 significant digits.
void write_slice_csv(const std::filesystem::path& path, const TorusGrid& grid,
                     std::span<const double> values);

/// Collects snapshot files and writes index.json listing {time, file} pairs.
class SnapshotSeries {
 public:
  SnapshotSeries(std::filesystem::path directory, std::string stem, TorusGrid grid);

  /// Writes <stem>_<count>.nlfd and remembers it.
  void add(double t, std::span<const double> values);

  /// Writes <directory>/index.json.
  void write_index() const;

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::filesystem::path dir_;
  std::string stem_;
  TorusGrid grid_;
  std::vector<std::pair<double, std::string>> entries_;
};

}  // namespace nonlocal
