#include "nonlocal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/fft.hpp"
#include "nonlocal/multiplier_table.hpp"

namespace nonlocal {
namespace {

void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (!(a == b)) throw ParameterError(ParameterError::Reason::bad_grid, "fields live on different grids");
}

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ParameterError(ParameterError::Reason::bad_argument, "evolution time must be finite and >= 0");
  }
}

}  // namespace

SpectralField::SpectralField(TorusGrid grid, std::vector<std::complex<double>> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.total_points()) {
    throw ParameterError(ParameterError::Reason::bad_grid, "coefficient count does not match the grid");
  }
}

SpectralField SpectralField::from_values(const TorusGrid& grid, std::span<const double> values) {
  if (values.size() != grid.total_points()) {
    throw ParameterError(ParameterError::Reason::bad_grid, "sample count does not match the grid");
  }
  std::vector<std::complex<double>> c(values.begin(), values.end());
  FftPlan(grid.points()).forward(c);
  const double scale = 1.0 / static_cast<double>(grid.total_points());
  for (auto& v : c) v *= scale;
  return SpectralField(grid, std::move(c));
}

SpectralField SpectralField::from_function(const TorusGrid& grid,
                                           const std::function<double(std::span<const double>)>& f) {
  const std::vector<double> values = sample_on_grid(grid, f);
  return from_values(grid, values);
}

std::vector<std::complex<double>> SpectralField::to_complex_values() const {
  std::vector<std::complex<double>> u(coeffs_);
  FftPlan(grid_.points()).inverse(u);
  return u;
}

std::vector<double> SpectralField::to_values(double imag_tolerance) const {
  const std::vector<std::complex<double>> u = to_complex_values();
  double max_real = 0.0;
  double max_imag = 0.0;
  for (const auto& v : u) {
    max_real = std::max(max_real, std::abs(v.real()));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (max_imag > imag_tolerance * std::max(max_real, 1e-300) && max_imag > 1e-300) {
    std::ostringstream os;
    os << "field is not real: imaginary residue " << max_imag << " against max " << max_real;
    throw InstabilityError(os.str());
  }
  std::vector<double> out(u.size());
  std::transform(u.begin(), u.end(), out.begin(), [](const auto& v) { return v.real(); });
  return out;
}

std::vector<double> sample_on_grid(const TorusGrid& grid,
                                   const std::function<double(std::span<const double>)>& f) {
  const int n = grid.dimension();
  std::vector<double> values(grid.total_points());
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    for (int i = 0; i < n; ++i) x[i] = grid.coordinate(i, idx[i]);
    values[flat] = f(x);
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < grid.points()[i]) break;
      idx[i] = 0;
    }
  }
  return values;
}

SpectralField apply_operator(const EigenLattice& eigen, const SpectralField& f) {
  require_same_grid(eigen.grid, f.grid());
  std::vector<std::complex<double>> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= eigen.values[k];
  return SpectralField(f.grid(), std::move(c));
}

SpectralField apply_operator(const KernelParams& p, const SpectralField& f) {
  return apply_operator(eigenvalue_lattice(p, f.grid()), f);
}

SpectralField apply_operator(const MultiplierTable& table, const SpectralField& f) {
  return apply_operator(eigenvalue_lattice(table, f.grid()), f);
}

HeatSolution::HeatSolution(EigenLattice eigen, SpectralField initial)
    : eigen_(std::move(eigen)), initial_(std::move(initial)) {
  require_same_grid(eigen_.grid, initial_.grid());
}

SpectralField HeatSolution::at(double t) const {
  require_time(t);
  std::vector<std::complex<double>> c(initial_.coeffs().begin(), initial_.coeffs().end());
  if (t > 0.0) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::exp(eigen_.values[k] * t);
  }
  return SpectralField(initial_.grid(), std::move(c));
}

WaveSolution::WaveSolution(EigenLattice eigen, SpectralField u0, SpectralField v0)
    : eigen_(std::move(eigen)), u0_(std::move(u0)), v0_(std::move(v0)) {
  require_same_grid(eigen_.grid, u0_.grid());
  require_same_grid(eigen_.grid, v0_.grid());
}

namespace {

// Returns (position factor, velocity factor) pairs for one mode:
// u(t) = A u0 + B v0 and u'(t) = C u0 + D v0.
struct ModeFactors {
  double a, b, c, d;
};

ModeFactors mode_factors(double lambda, double t) {
  if (lambda < 0.0) {
    const double w = std::sqrt(-lambda);
    const double cs = std::cos(w * t);
    const double sn = std::sin(w * t);
    return {cs, sn / w, -w * sn, cs};
  }
  if (lambda == 0.0) return {1.0, t, 0.0, 1.0};
  const double w = std::sqrt(lambda);
  const double ch = std::cosh(w * t);
  const double sh = std::sinh(w * t);
  return {ch, sh / w, w * sh, ch};
}

}  // namespace

SpectralField WaveSolution::at(double t) const {
  require_time(t);
  std::vector<std::complex<double>> c(u0_.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const ModeFactors m = mode_factors(eigen_.values[k], t);
    c[k] = m.a * u0_.coeffs()[k] + m.b * v0_.coeffs()[k];
  }
  return SpectralField(u0_.grid(), std::move(c));
}

SpectralField WaveSolution::velocity_at(double t) const {
  require_time(t);
  std::vector<std::complex<double>> c(u0_.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const ModeFactors m = mode_factors(eigen_.values[k], t);
    c[k] = m.c * u0_.coeffs()[k] + m.d * v0_.coeffs()[k];
  }
  return SpectralField(u0_.grid(), std::move(c));
}

double WaveSolution::energy(double t) const {
  require_time(t);
  double e = 0.0;
  for (std::size_t k = 0; k < eigen_.values.size(); ++k) {
    const ModeFactors m = mode_factors(eigen_.values[k], t);
    const auto u = m.a * u0_.coeffs()[k] + m.b * v0_.coeffs()[k];
    const auto v = m.c * u0_.coeffs()[k] + m.d * v0_.coeffs()[k];
    e += std::norm(v) + std::abs(eigen_.values[k]) * std::norm(u);
  }
  return e;
}

std::vector<double> wave_pseudospectral_run(const EigenLattice& eigen, std::span<const double> u0,
                                            std::span<const double> v0, double t_end,
                                            const AdaptiveOptions& opts, AdaptiveStats* stats) {
  const std::size_t n = eigen.grid.total_points();
  if (u0.size() != n || v0.size() != n) {
    throw ParameterError(ParameterError::Reason::bad_grid, "initial data does not match the grid");
  }
  require_time(t_end);
  const FftPlan plan(eigen.grid.points());
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<std::complex<double>> work(n);

  const OdeRhs f = [&](double, std::span<const double> y, std::span<double> dy) {
    for (std::size_t k = 0; k < n; ++k) {
      dy[k] = y[n + k];
      work[k] = y[k];
    }
    plan.forward(work);
    for (std::size_t k = 0; k < n; ++k) work[k] *= eigen.values[k] * inv_n;
    plan.inverse(work);
    for (std::size_t k = 0; k < n; ++k) dy[n + k] = work[k].real();
  };

  std::vector<double> y(2 * n);
  std::copy(u0.begin(), u0.end(), y.begin());
  std::copy(v0.begin(), v0.end(), y.begin() + static_cast<std::ptrdiff_t>(n));
  const AdaptiveStats s = integrate_dopri5(f, 0.0, t_end, y, opts);
  if (stats) *stats = s;
  y.resize(n);
  return y;
}

}  // namespace nonlocal
