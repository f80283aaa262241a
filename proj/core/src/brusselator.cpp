#include "nonlocal/brusselator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/integrators.hpp"

namespace nonlocal {
namespace {

double smallest_spacing(const TorusGrid& grid) {
  double dx = grid.spacing(0);
  for (int i = 1; i < grid.dimension(); ++i) dx = std::min(dx, grid.spacing(i));
  return dx;
}

std::vector<char> dealias_keep(const TorusGrid& grid) {
  std::vector<char> keep(grid.total_points(), 1);
  const int n = grid.dimension();
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t flat = 0; flat < keep.size(); ++flat) {
    for (int i = 0; i < n; ++i) {
      const long alpha = std::labs(grid.frequency_index(i, idx[i]));
      // |alpha| > N/3, compared in integers: 3 |alpha| > N.
      if (3 * static_cast<std::size_t>(alpha) > grid.points()[i]) keep[flat] = 0;
    }
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < grid.points()[i]) break;
      idx[i] = 0;
    }
  }
  return keep;
}

void check_config(const BrusselatorConfig& cfg) {
  using Reason = ParameterError::Reason;
  for (double v : {cfg.Du, cfg.Dv, cfg.a, cfg.b, cfg.t_end, cfg.cfl_const, cfg.blowup_threshold}) {
    if (!std::isfinite(v)) throw ParameterError(Reason::non_finite, "Brusselator parameters must be finite");
  }
  if (cfg.Du <= 0.0 || cfg.Dv <= 0.0) throw ParameterError(Reason::bad_argument, "diffusivities must be positive");
  if (cfg.t_end <= 0.0 || cfg.cfl_const <= 0.0) {
    throw ParameterError(Reason::bad_argument, "t_end and cfl_const must be positive");
  }
  if (cfg.params.dimension() != cfg.grid.dimension()) {
    throw ParameterError(Reason::bad_grid, "kernel dimension differs from grid dimension");
  }
}

}  // namespace

std::size_t brusselator_step_count(const BrusselatorConfig& cfg) {
  const double dx = smallest_spacing(cfg.grid);
  const double dt = cfg.cfl_const * dx * dx;
  return static_cast<std::size_t>(std::ceil(cfg.t_end / dt - 1e-9));
}

void apply_dealias(const TorusGrid& grid, std::span<std::complex<double>> coeffs) {
  if (coeffs.size() != grid.total_points()) {
    throw ParameterError(ParameterError::Reason::bad_grid, "coefficient count does not match the grid");
  }
  const std::vector<char> keep = dealias_keep(grid);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!keep[k]) coeffs[k] = 0.0;
  }
}

BrusselatorModel::BrusselatorModel(BrusselatorConfig cfg)
    : BrusselatorModel(cfg, eigenvalue_lattice(cfg.params, cfg.grid)) {}

BrusselatorModel::BrusselatorModel(BrusselatorConfig cfg, EigenLattice eigen)
    : cfg_(std::move(cfg)),
      eigen_(std::move(eigen)),
      plan_(cfg_.grid.points()),
      keep_(dealias_keep(cfg_.grid)),
      work_(cfg_.grid.total_points()),
      product_(cfg_.grid.total_points()) {
  check_config(cfg_);
  if (!(eigen_.grid == cfg_.grid)) {
    throw ParameterError(ParameterError::Reason::bad_grid, "eigenvalues belong to a different grid");
  }
}

void BrusselatorModel::rhs(std::span<const double> u, std::span<const double> v, std::span<double> du,
                           std::span<double> dv) const {
  const std::size_t n = work_.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Both diffusion terms through one complex transform of (u - u0) + i (v - v0);
  // the eigenvalues are real and even, so real and imaginary parts separate.
  // Shifting by a constant keeps homogeneous states exactly stationary.
  const double u_ref = u[0];
  const double v_ref = v[0];
  for (std::size_t k = 0; k < n; ++k) work_[k] = {u[k] - u_ref, v[k] - v_ref};
  plan_.forward(work_);
  for (std::size_t k = 0; k < n; ++k) work_[k] *= eigen_.values[k] * inv_n;
  plan_.inverse(work_);

  // Dealiased u^2 v, again relative to its value at the first point.
  double p_ref = u[0] * u[0] * v[0];
  for (std::size_t k = 0; k < n; ++k) product_[k] = u[k] * u[k] * v[k] - p_ref;
  plan_.forward(product_);
  for (std::size_t k = 0; k < n; ++k) product_[k] = keep_[k] ? product_[k] * inv_n : 0.0;
  plan_.inverse(product_);

  const double a = cfg_.a;
  const double b = cfg_.b;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = product_[k].real() + p_ref;
    du[k] = cfg_.Du * work_[k].real() + (a - (b + 1.0) * u[k]) + p;
    dv[k] = cfg_.Dv * work_[k].imag() + (b * u[k] - p);
  }
}

BrusselatorResult BrusselatorModel::run(std::span<const double> u0, std::span<const double> v0,
                                        std::size_t record_every,
                                        const std::function<void(double, std::span<const double>)>& on_frame) const {
  const std::size_t n = work_.size();
  if (u0.size() != n || v0.size() != n) {
    throw ParameterError(ParameterError::Reason::bad_grid, "initial data does not match the grid");
  }
  BrusselatorResult out;
  out.steps = brusselator_step_count(cfg_);
  out.dt = cfg_.t_end / static_cast<double>(out.steps);

  // State layout: [u | v].
  std::vector<double> y(2 * n);
  std::copy(u0.begin(), u0.end(), y.begin());
  std::copy(v0.begin(), v0.end(), y.begin() + static_cast<std::ptrdiff_t>(n));
  const OdeRhs f = [this, n](double, std::span<const double> s, std::span<double> ds) {
    rhs(s.first(n), s.subspan(n), ds.first(n), ds.subspan(n));
  };

  auto record = [&](double t) {
    out.times.push_back(t);
    out.u_frames.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    out.v_frames.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
    if (on_frame) on_frame(t, out.u_frames.back());
  };
  record(0.0);

  Rk4Stepper stepper(2 * n);
  for (std::size_t step = 1; step <= out.steps; ++step) {
    const double t = static_cast<double>(step - 1) * out.dt;
    stepper.step(f, t, out.dt, y);

    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) peak = std::max(peak, std::abs(y[k]));
    if (!(peak <= cfg_.blowup_threshold)) {
      std::ostringstream os;
      os << "Brusselator blew up at step " << step << " (t = " << static_cast<double>(step) * out.dt
         << ", max|u| = " << peak << "); reduce cfl_const";
      throw InstabilityError(os.str());
    }
    const bool last = step == out.steps;
    if (last || (record_every > 0 && step % record_every == 0)) {
      record(last ? cfg_.t_end : static_cast<double>(step) * out.dt);
    }
  }
  out.u.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  out.v.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
  return out;
}

}  // namespace nonlocal
