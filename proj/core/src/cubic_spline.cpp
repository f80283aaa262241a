#include "nonlocal/cubic_spline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

void check_nodes(const std::vector<double>& x, std::size_t ny) {
  using Reason = ParameterError::Reason;
  if (x.size() < 2 || x.size() != ny) {
    throw ParameterError(Reason::bad_argument, "spline needs at least 2 nodes and one value per node");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw ParameterError(Reason::bad_argument, "spline nodes must be strictly increasing");
    }
  }
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  check_nodes(x_, y_.size());
  const std::size_t n = x_.size();
  y2_.assign(n, 0.0);
  if (n < 3) return;

  // Tridiagonal system for interior second derivatives (Thomas algorithm).
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    const double lower = h0 / 6.0;
    double d = (h0 + h1) / 3.0;
    double r = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    if (i > 1) {
      const double w = lower / diag[i - 1];
      d -= w * upper[i - 1];
      r -= w * rhs[i - 1];
    }
    diag[i] = d;
    upper[i] = h1 / 6.0;
    rhs[i] = r;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    const double next = (i + 2 < n) ? y2_[i + 1] : 0.0;
    y2_[i] = (rhs[i] - upper[i] * next) / diag[i];
    if (i == 1) break;
  }
}

CubicSpline CubicSpline::from_parts(std::vector<double> x, std::vector<double> y,
                                    std::vector<double> second) {
  check_nodes(x, y.size());
  if (second.size() != x.size()) {
    throw ParameterError(ParameterError::Reason::bad_argument, "spline second derivatives size mismatch");
  }
  CubicSpline s;
  s.x_ = std::move(x);
  s.y_ = std::move(y);
  s.y2_ = std::move(second);
  return s;
}

double CubicSpline::operator()(double t) const {
  if (!(t >= x_.front() && t <= x_.back())) {
    std::ostringstream os;
    os.precision(17);
    os << "spline query " << t << " outside [" << x_.front() << ", " << x_.back() << "]";
    throw RangeError(os.str());
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  if (hi >= x_.size()) hi = x_.size() - 1;
  const std::size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - t) / h;
  const double b = (t - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * (h * h) / 6.0;
}

}  // namespace nonlocal
