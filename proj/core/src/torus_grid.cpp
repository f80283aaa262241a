#include "nonlocal/torus_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "nonlocal/errors.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {

TorusGrid::TorusGrid(std::vector<double> lengths, std::vector<std::size_t> points,
                     std::vector<double> origin)
    : lengths_(std::move(lengths)), points_(std::move(points)), origin_(std::move(origin)) {
  using Reason = ParameterError::Reason;
  if (lengths_.empty() || lengths_.size() > 3 || points_.size() != lengths_.size()) {
    throw ParameterError(Reason::bad_grid, "grid needs 1 to 3 axes with one length and one point count each");
  }
  if (origin_.empty()) origin_.assign(lengths_.size(), 0.0);
  if (origin_.size() != lengths_.size()) {
    throw ParameterError(Reason::bad_grid, "grid origin has the wrong number of axes");
  }
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    if (!std::isfinite(lengths_[i]) || lengths_[i] <= 0.0 || !std::isfinite(origin_[i])) {
      throw ParameterError(Reason::bad_grid, "grid lengths must be positive and finite");
    }
    if (points_[i] < 2) throw ParameterError(Reason::bad_grid, "grid needs at least 2 points per axis");
    total_ *= points_[i];
  }
}

TorusGrid TorusGrid::uniform(int n, double length, std::size_t points, double origin) {
  if (n < 1 || n > 3) {
    throw ParameterError(ParameterError::Reason::bad_grid, "grid dimension must be 1, 2 or 3");
  }
  const auto dims = static_cast<std::size_t>(n);
  return TorusGrid(std::vector<double>(dims, length), std::vector<std::size_t>(dims, points),
                   std::vector<double>(dims, origin));
}

long TorusGrid::frequency_index(int axis, std::size_t j) const {
  const std::size_t n = points_.at(axis);
  return j <= n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

double TorusGrid::wavenumber(int axis, std::size_t j) const {
  return 2.0 * kPi * static_cast<double>(frequency_index(axis, j)) / lengths_.at(axis);
}

std::vector<std::size_t> TorusGrid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(points_.size());
  for (std::size_t i = points_.size(); i-- > 0;) {
    idx[i] = flat % points_[i];
    flat /= points_[i];
  }
  return idx;
}

double TorusGrid::max_wavenumber_norm() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    const double k = wavenumber(static_cast<int>(i), points_[i] / 2);
    sum += k * k;
  }
  return std::sqrt(sum);
}

namespace {

using Key = std::array<std::int64_t, 3>;

// Axes with bit-identical lengths share a group; within a group only the
// integer sum of alpha_i^2 matters.
struct AxisGroups {
  std::array<int, 3> group_of{};
  std::vector<double> length;

  explicit AxisGroups(const TorusGrid& grid) {
    for (int i = 0; i < grid.dimension(); ++i) {
      const double l = grid.lengths()[i];
      auto it = std::find(length.begin(), length.end(), l);
      group_of[i] = static_cast<int>(it - length.begin());
      if (it == length.end()) length.push_back(l);
    }
  }

  double radius(const Key& key) const {
    double sum = 0.0;
    for (std::size_t g = 0; g < length.size(); ++g) {
      const double scale = 2.0 * kPi / length[g];
      sum += static_cast<double>(key[g]) * scale * scale;
    }
    return std::sqrt(sum);
  }
};

Key key_of(const TorusGrid& grid, const AxisGroups& groups, const std::vector<std::size_t>& idx) {
  Key key{};
  for (int i = 0; i < grid.dimension(); ++i) {
    const std::int64_t a = grid.frequency_index(i, idx[i]);
    key[groups.group_of[i]] += a * a;
  }
  return key;
}

}  // namespace

double wavenumber_norm(const TorusGrid& grid, std::size_t flat) {
  const AxisGroups groups(grid);
  return groups.radius(key_of(grid, groups, grid.unflatten(flat)));
}

LatticeRadii lattice_radii(const TorusGrid& grid) {
  const int n = grid.dimension();
  const AxisGroups groups(grid);

  const std::size_t total = grid.total_points();
  std::vector<Key> keys(total);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    keys[flat] = key_of(grid, groups, idx);
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < grid.points()[i]) break;
      idx[i] = 0;
    }
  }

  std::vector<Key> unique_keys = keys;
  std::sort(unique_keys.begin(), unique_keys.end());
  unique_keys.erase(std::unique(unique_keys.begin(), unique_keys.end()), unique_keys.end());

  std::vector<std::size_t> order(unique_keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> radius(unique_keys.size());
  for (std::size_t u = 0; u < unique_keys.size(); ++u) radius[u] = groups.radius(unique_keys[u]);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return radius[x] < radius[y]; });
  std::vector<std::uint32_t> rank(unique_keys.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<std::uint32_t>(pos);

  LatticeRadii out;
  out.radii.resize(unique_keys.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) out.radii[pos] = radius[order[pos]];
  out.slot_of.resize(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto it = std::lower_bound(unique_keys.begin(), unique_keys.end(), keys[flat]);
    out.slot_of[flat] = rank[static_cast<std::size_t>(it - unique_keys.begin())];
  }
  return out;
}

}  // namespace nonlocal
