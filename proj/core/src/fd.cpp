#include "nonlocal/fd.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/fft.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {
namespace {

constexpr int kGaussPoints = 24;

struct GaussLegendre {
  std::array<double, kGaussPoints> x{};
  std::array<double, kGaussPoints> w{};

  GaussLegendre() {
    const int n = kGaussPoints;
    for (int i = 0; i < n; ++i) {
      double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-16) break;
      }
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

// int_lo^hi f(t) dt for smooth f.
template <typename F>
double integrate_smooth(const F& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const auto& gl = gauss_legendre();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) sum += gl.w[i] * f(mid + half * gl.x[i]);
  return sum * half;
}

// W_j / dx^{2-beta} = int (1 - |t|) (j + t)^{1-beta} dt over t in [-1, 1],
// clipped to s = dx (j + t) <= delta.
double hat_weight(std::size_t j, double beta, double t_max) {
  const double jj = static_cast<double>(j);
  const double q = 1.0 - beta;
  double w = 0.0;

  // Rising half t in [-1, 0].
  const double rise_hi = std::min(0.0, t_max);
  if (rise_hi > -1.0) {
    if (j == 1) {
      // (1 + t) (1 + t)^{1-beta}: integrable singularity at s = 0, in closed form.
      w += std::pow(1.0 + rise_hi, 3.0 - beta) / (3.0 - beta);
    } else {
      w += integrate_smooth([&](double t) { return (1.0 + t) * std::pow(jj + t, q); }, -1.0, rise_hi);
    }
  }
  // Falling half t in [0, 1].
  const double fall_hi = std::min(1.0, t_max);
  if (fall_hi > 0.0) {
    w += integrate_smooth([&](double t) { return (1.0 - t) * std::pow(jj + t, q); }, 0.0, fall_hi);
  }
  return w;
}

}  // namespace

FDStencil FDStencil::build(const KernelParams& p, std::size_t r, double dx) {
  using Reason = ParameterError::Reason;
  if (p.dimension() != 1) throw ParameterError(Reason::bad_dimension, "finite-difference stencils are 1D only");
  if (!p.integrable()) throw ParameterError(Reason::not_integrable, "finite-difference stencils need beta < 3");
  if (r == 0) throw ParameterError(Reason::bad_argument, "stencil radius must be >= 1");
  if (!std::isfinite(dx) || dx <= 0.0) throw ParameterError(Reason::bad_argument, "grid spacing must be positive");
  const double delta = p.delta();
  if (static_cast<double>(r) * dx < delta * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "stencil of radius " << r << " and spacing " << dx << " does not reach delta = " << delta;
    throw ParameterError(Reason::bad_argument, os.str());
  }

  const double beta = p.beta();
  const double c = scaling_constant(p);
  const double reach = delta / dx;  // delta in units of dx
  std::vector<double> a(r + 1, 0.0);
  double sum = 0.0;
  for (std::size_t j = 1; j <= r; ++j) {
    const double jj = static_cast<double>(j);
    // Treat delta within rounding of a node as exactly on it.
    const double t_max = std::abs(reach - std::round(reach)) <= 1e-12 * reach ? std::round(reach) - jj
                                                                             : reach - jj;
    const double w = hat_weight(j, beta, std::min(1.0, t_max)) * std::pow(dx, 2.0 - beta);
    a[j] = c * w / (jj * dx);
    sum += a[j];
  }
  a[0] = -2.0 * sum;
  return FDStencil(p, dx, std::move(a));
}

FDStencil FDStencil::build_fixed_delta(const KernelParams& p, double dx) {
  if (!std::isfinite(dx) || dx <= 0.0) {
    throw ParameterError(ParameterError::Reason::bad_argument, "grid spacing must be positive");
  }
  const auto r = static_cast<std::size_t>(std::ceil(p.delta() / dx - 1e-9));
  return build(p, std::max<std::size_t>(r, 1), dx);
}

double FDStencil::norm() const {
  double s = std::abs(a_[0]);
  for (std::size_t j = 1; j < a_.size(); ++j) s += 2.0 * std::abs(a_[j]);
  return s;
}

double fd_eigenvalue(const FDStencil& s, double L, double k) {
  const auto& a = s.coefficients();
  const double phase = kPi * k * s.dx() / L;
  double sum = 0.0;
  for (std::size_t j = 1; j < a.size(); ++j) {
    const double h = std::sin(phase * static_cast<double>(j));
    sum += a[j] * h * h;
  }
  return -4.0 * sum;
}

std::vector<double> fd_eigenvalues(const FDStencil& s, double L, std::span<const double> ks) {
  std::vector<double> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) out[i] = fd_eigenvalue(s, L, ks[i]);
  return out;
}

struct StencilOperator::FftPath {
  FftPlan plan;
  std::vector<double> lambda;
  mutable std::vector<std::complex<double>> work;
};

StencilOperator::StencilOperator(const FDStencil& s, std::size_t points)
    : a_(s.coefficients()), points_(points) {
  if (points < 2) throw ParameterError(ParameterError::Reason::bad_grid, "stencil grid needs >= 2 points");
  if (s.radius() > kDirectRadiusLimit) {
    auto path = std::make_unique<FftPath>(FftPath{FftPlan({points}), std::vector<double>(points),
                                                  std::vector<std::complex<double>>(points)});
    // dx / L = 1 / points on the periodic grid.
    const double length = static_cast<double>(points) * s.dx();
    for (std::size_t k = 0; k < points; ++k) {
      const double kk = k <= points / 2 ? static_cast<double>(k) : static_cast<double>(k) - points;
      path->lambda[k] = fd_eigenvalue(s, length, kk) / static_cast<double>(points);
    }
    fft_ = std::move(path);
  }
}

StencilOperator::~StencilOperator() = default;
StencilOperator::StencilOperator(StencilOperator&&) noexcept = default;
StencilOperator& StencilOperator::operator=(StencilOperator&&) noexcept = default;

void StencilOperator::apply(std::span<const double> u, std::span<double> out) const {
  const std::size_t m = points_;
  if (u.size() != m || out.size() != m) {
    throw ParameterError(ParameterError::Reason::bad_grid, "field size does not match the stencil grid");
  }
  if (fft_) {
    auto& w = fft_->work;
    for (std::size_t i = 0; i < m; ++i) w[i] = u[i];
    fft_->plan.forward(w);
    for (std::size_t i = 0; i < m; ++i) w[i] *= fft_->lambda[i];
    fft_->plan.inverse(w);
    for (std::size_t i = 0; i < m; ++i) out[i] = w[i].real();
    return;
  }
  // sum_j a_j (u_{i+j} + u_{i-j} - 2 u_i), algebraically equal to the a_0 form.
  const std::size_t r = a_.size() - 1;
  const double* a = a_.data();
  for (std::size_t i = 0; i < m; ++i) {
    if (i >= r && i + r < m) {  // interior, no wrap-around
      const double* c = u.data() + i;
      double acc = 0.0;
      for (std::size_t j = 1; j <= r; ++j) acc += a[j] * ((c[j] - c[0]) + (c[-static_cast<std::ptrdiff_t>(j)] - c[0]));
      out[i] = acc;
      continue;
    }
    double acc = 0.0;
    for (std::size_t j = 1; j <= r; ++j) {
      const std::size_t jm = j % m;
      const double right = u[(i + jm) % m];
      const double left = u[(i + m - jm) % m];
      acc += a_[j] * ((right - u[i]) + (left - u[i]));
    }
    out[i] = acc;
  }
}

std::vector<double> fd_wave_run(const FDStencil& s, std::span<const double> u0, std::span<const double> v0,
                                double t_end, const AdaptiveOptions& opts, AdaptiveStats* stats) {
  const std::size_t m = u0.size();
  if (v0.size() != m) throw ParameterError(ParameterError::Reason::bad_grid, "u0 and v0 differ in size");
  const StencilOperator op(s, m);
  const OdeRhs f = [&](double, std::span<const double> y, std::span<double> dy) {
    for (std::size_t i = 0; i < m; ++i) dy[i] = y[m + i];
    op.apply(y.first(m), dy.subspan(m));
  };
  std::vector<double> y(2 * m);
  std::copy(u0.begin(), u0.end(), y.begin());
  std::copy(v0.begin(), v0.end(), y.begin() + static_cast<std::ptrdiff_t>(m));
  const AdaptiveStats st = integrate_dopri5(f, 0.0, t_end, y, opts);
  if (stats) *stats = st;
  y.resize(m);
  return y;
}

}  // namespace nonlocal
