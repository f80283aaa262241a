#pragma once

#include <vector>

namespace nonlocal {

/// Natural cubic spline (zero second derivative at both ends) through
/// strictly increasing, possibly non-uniform nodes.
class CubicSpline {
 public:
  CubicSpline() = default;

  /// Throws ParameterError when sizes differ, fewer than 2 nodes are given or
  /// the nodes are not strictly increasing.
  CubicSpline(std::vector<double> x, std::vector<double> y);

  /// Rebuilds from stored second derivatives (used when loading from disk).
  static CubicSpline from_parts(std::vector<double> x, std::vector<double> y,
                                std::vector<double> second);

  /// Value at t; t must lie in [front, back] (RangeError otherwise).
  double operator()(double t) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  const std::vector<double>& nodes() const noexcept { return x_; }
  const std::vector<double>& values() const noexcept { return y_; }
  const std::vector<double>& second_derivatives() const noexcept { return y2_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> y2_;
};

}  // namespace nonlocal
