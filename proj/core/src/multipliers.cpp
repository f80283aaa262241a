#include "nonlocal/multipliers.hpp"

#include <cmath>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/multiplier_table.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {
namespace {

void check_radius(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    std::ostringstream os;
    os << "multiplier radius must be finite and >= 0 (got " << r << ")";
    throw ParameterError(ParameterError::Reason::bad_argument, os.str());
  }
}

}  // namespace

double multiplier(const KernelParams& p, double r, EvalReport& report) {
  check_radius(r);
  const double r2 = r * r;
  if (r == 0.0 || p.regime() == KernelRegime::classical) {
    report = EvalReport{};
    report.method = r == 0.0 ? SeriesMethod::series : SeriesMethod::terminating;
    report.value = 1.0;
    return -r2;
  }
  const double half_arg = 0.5 * r * p.delta();
  report = eval_2f3(Hyp2F3Params::multiplier_family(p), -(half_arg * half_arg));
  return -r2 * report.value;
}

double multiplier(const KernelParams& p, double r) {
  EvalReport report;
  return multiplier(p, r, report);
}

double multiplier_asymptotic(const KernelParams& p, double r) {
  if (!std::isfinite(r) || r <= 0.0) {
    throw ParameterError(ParameterError::Reason::bad_argument, "asymptotic form needs r > 0");
  }
  if (p.regime() == KernelRegime::classical) {
    throw ParameterError(ParameterError::Reason::bad_argument,
                         "asymptotic form is undefined at beta = n + 2 (m is exactly -r^2)");
  }
  const double n = p.dimension();
  const double beta = p.beta();
  const double delta = p.delta();

  if (std::abs(beta - n) <= 1e-12) {
    return -(2.0 * n / (delta * delta)) *
           (2.0 * std::log(r) + std::log(0.25 * delta * delta) + kEulerGamma - digamma_fn(0.5 * n));
  }
  const double plateau = -2.0 * n * (n + 2.0 - beta) / (delta * delta * (n - beta));
  const double growth = 2.0 * std::pow(2.0 / delta, n + 2.0 - beta) * gamma_fn(0.5 * (n + 4.0 - beta)) *
                        gamma_fn(0.5 * (n + 2.0)) * reciprocal_gamma(0.5 * beta) / (n - beta);
  return plateau + growth * std::pow(r, beta - n);
}

double multiplier_near_zero(const KernelParams&, double r) {
  check_radius(r);
  return -r * r;
}

double near_zero_constant(const KernelParams& p, double r_max) {
  const Hyp2F3Params f = Hyp2F3Params::multiplier_family(p);
  const double scale = 0.25 * p.delta() * p.delta();
  const double c1 = std::abs(f.a1 * f.a2 / (f.b1 * f.b2 * f.b3)) * scale;
  if (p.regime() == KernelRegime::classical) return 0.0;

  // Later terms are bounded by c1 r^2 times a geometric factor q^k, where q
  // dominates the term ratio |z (a1+k)(a2+k) / ((b1+k)(b2+k)(b3+k)(k+1))| on
  // [0, r_max]; the factor 1/(1 - q) covers them all.
  const double z = scale * r_max * r_max;
  double q = 0.0;
  for (int k = 1; k < 64; ++k) {
    const double kk = k;
    const double ratio = std::abs(z * (f.a1 + kk) * (f.a2 + kk) /
                                  ((f.b1 + kk) * (f.b2 + kk) * (f.b3 + kk) * (kk + 1.0)));
    q = std::max(q, ratio);
  }
  if (q >= 0.5) {
    throw ParameterError(ParameterError::Reason::bad_argument,
                         "near-zero bound requested on too wide an interval");
  }
  return c1 / (1.0 - q);
}

EigenLattice eigenvalue_lattice(const std::function<double(double)>& symbol, const TorusGrid& grid) {
  const LatticeRadii lattice = lattice_radii(grid);
  std::vector<double> unique_values(lattice.radii.size());
  parallel_for(unique_values.size(),
               [&](std::size_t u) { unique_values[u] = symbol(lattice.radii[u]); });

  EigenLattice out{grid, std::vector<double>(grid.total_points())};
  for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
    out.values[flat] = unique_values[lattice.slot_of[flat]];
  }
  return out;
}

EigenLattice eigenvalue_lattice(const KernelParams& p, const TorusGrid& grid) {
  return eigenvalue_lattice([&p](double r) { return multiplier(p, r); }, grid);
}

EigenLattice eigenvalue_lattice(const MultiplierTable& table, const TorusGrid& grid) {
  return eigenvalue_lattice([&table](double r) { return table.eval(r); }, grid);
}

}  // namespace nonlocal
