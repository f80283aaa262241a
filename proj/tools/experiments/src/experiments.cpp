#include "nonlocal_experiments/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/oracle.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/spectral.hpp"

namespace nonlocal::experiments {

using std::numbers::pi;

std::string version_string() { return "nonlocal 0.1.0"; }

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

[[noreturn]] void bad_argument(const std::string& what) {
  throw ParameterError(ParameterError::Reason::bad_argument, what);
}

}  // namespace

Stopwatch::Stopwatch() : start_(now_seconds()) {}
double Stopwatch::seconds() const { return now_seconds() - start_; }

// ---------------------------------------------------------------- multipliers

const std::vector<KernelRow>& table1_rows() {
  static const std::vector<KernelRow> rows = {
      {1, 0.25, 0.1}, {1, 1.0, 0.1}, {1, 1.5, 0.1},  {2, 0.75, 0.1}, {2, 2.0, 0.1},
      {2, 3.0, 0.1},  {3, 1.75, 0.1}, {3, 3.0, 0.1}, {3, 4.5, 0.1},
  };
  return rows;
}

std::vector<MultiplierSample> multiplier_sweep(const KernelParams& p, double rmin, double rmax,
                                               std::size_t count, bool with_oracle, double oracle_tol) {
  if (count == 0) bad_argument("count must be at least 1");
  if (!(rmin >= 0.0) || !(rmax >= rmin) || !std::isfinite(rmax)) bad_argument("need 0 <= rmin <= rmax");
  const bool oracle = with_oracle && p.integrable();
  std::vector<MultiplierSample> out(count);
  parallel_for(count, [&](std::size_t i) {
    auto& s = out[i];
    s.r = count == 1 ? rmin : rmin + (rmax - rmin) * static_cast<double>(i) / static_cast<double>(count - 1);
    s.m = multiplier(p, s.r);
    if (oracle) {
      s.oracle = multiplier_quadrature(p, s.r, oracle_tol).value;
      s.rel_err = s.oracle == 0.0 ? std::abs(s.m) : std::abs(s.m - s.oracle) / std::abs(s.oracle);
    }
  });
  return out;
}

// ------------------------------------------------------------ table benchmark

std::vector<TableBenchConfig> table2_configs() {
  return {
      {KernelParams::validate(2, 0.5, 1.2), 1000.0, 1500, 20000},
      {KernelParams::validate(2, 2.3, 0.4), 1000.0, 600, 10000},
  };
}

TableBenchResult run_table_bench(const TableBenchConfig& cfg, std::optional<MultiplierTable>* table_out) {
  if (cfg.probes < 2) bad_argument("probe count must be at least 2");
  TableBenchResult res;
  Stopwatch prep;
  MultiplierTable table = MultiplierTable::build(cfg.params, cfg.K, cfg.N, cfg.M);
  res.prep_seconds = prep.seconds();
  res.tail_ratio = table.tail_ratio();
  res.warnings = table.warnings();

  std::vector<double> r(cfg.probes), exact(cfg.probes);
  for (std::size_t i = 0; i < cfg.probes; ++i) r[i] = cfg.K * static_cast<double>(i) / static_cast<double>(cfg.probes - 1);

  Stopwatch direct;
  for (std::size_t i = 0; i < cfg.probes; ++i) exact[i] = multiplier(cfg.params, r[i]);
  res.avg_direct_seconds = direct.seconds() / static_cast<double>(cfg.probes);

  // repeat the lookup sweep until the timer has something to measure
  volatile double sink = 0.0;
  std::size_t sweeps = 0;
  Stopwatch interp;
  do {
    double acc = 0.0;
    for (double x : r) acc += table.eval(x);
    sink = sink + acc;
    ++sweeps;
  } while (interp.seconds() < 0.2);
  res.avg_interp_seconds = interp.seconds() / static_cast<double>(sweeps * cfg.probes);

  for (std::size_t i = 0; i < cfg.probes; ++i) {
    res.max_normalized_error =
        std::max(res.max_normalized_error, std::abs(table.eval(r[i]) - exact[i]) / (1.0 + std::abs(exact[i])));
  }
  res.lookup_speedup = res.avg_direct_seconds / res.avg_interp_seconds;
  const double saved = res.avg_direct_seconds - res.avg_interp_seconds;
  res.break_even_probes = saved > 0.0 ? res.prep_seconds / saved : INFINITY;
  if (table_out) table_out->emplace(std::move(table));
  return res;
}

// ---------------------------------------------------------- linear 2D solvers

std::vector<Panel> figure_panels() {
  std::vector<Panel> panels;
  for (double beta : {1.0, 3.0, 5.0})
    for (double delta : {0.1, 1.0, 2.0}) panels.push_back({beta, delta});
  panels.push_back({4.0, 1.0});
  return panels;
}

EigenLattice table_lattice(const KernelParams& p, const TorusGrid& grid) {
  if (p.regime() == KernelRegime::classical) return eigenvalue_lattice(p, grid);
  const double K = grid.max_wavenumber_norm() * (1.0 + 1e-9);
  // m oscillates like cos(r s) for s <= delta; on the theta grid that is a
  // band of about K delta modes
  std::size_t N = static_cast<std::size_t>(std::ceil(1.3 * K * p.delta())) + 64;
  N += N % 2;
  const std::size_t M = std::max<std::size_t>(4096, 8 * N);
  const auto table = MultiplierTable::build(p, K, N, M);
  return eigenvalue_lattice(table, grid);
}

double heat_initial(const std::string& name, double x, double y) {
  if (name == "blob") return std::exp(-std::pow(x, 8) - std::pow(y, 8));
  if (name == "star") {
    const double r = std::hypot(x, y);
    const double theta = std::atan2(y, x);
    return std::exp(-std::pow(r / (4.0 * (1.0 + 0.3 * std::sin(5.0 * theta))), 8));
  }
  bad_argument("unknown initial condition '" + name + "' (blob, star)");
}

std::vector<std::array<double, 2>> level_set_points(const TorusGrid& g, const std::vector<double>& u,
                                                    double level) {
  if (g.dimension() != 2) bad_argument("level sets need a 2D grid");
  const std::size_t nx = g.points()[0], ny = g.points()[1];
  std::vector<std::array<double, 2>> pts;
  auto at = [&](std::size_t i, std::size_t j) { return u[i * ny + j] - level; };
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const double f0 = at(i, j), fx = at(i + 1, j), fy = at(i, j + 1);
      const double x0 = g.coordinate(0, i), y0 = g.coordinate(1, j);
      if ((f0 < 0) != (fx < 0)) pts.push_back({x0 + g.spacing(0) * f0 / (f0 - fx), y0});
      if ((f0 < 0) != (fy < 0)) pts.push_back({x0, y0 + g.spacing(1) * f0 / (f0 - fy)});
    }
  }
  return pts;
}

// ----------------------------------------------------------------- Brusselator

const std::vector<BrusselatorPreset>& brusselator_presets() {
  static const std::vector<BrusselatorPreset> presets = {
      {"fig6-classical", 3.0, 1.0},
      {"fig6-b2.5", 2.5, 1.0},
      {"fig6-b2", 2.0, 1.0},
      {"fig6-b1.5", 1.5, 1.0},
  };
  return presets;
}

BrusselatorConfig brusselator_config(double beta, double delta, std::size_t points, double t_end) {
  BrusselatorConfig cfg{KernelParams::validate(1, beta, delta), TorusGrid({20.0}, {points})};
  cfg.t_end = t_end;
  return cfg;
}

void brusselator_initial(const BrusselatorConfig& cfg, std::vector<double>& u0, std::vector<double>& v0) {
  const std::size_t n = cfg.grid.total_points();
  u0.resize(n);
  v0.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = cfg.grid.coordinate(0, i);
    u0[i] = cfg.a * (1.0 + 0.5 * std::sin(pi * x / 10.0));
    v0[i] = cfg.b / cfg.a + 0.1 * std::cos(3.0 * pi * x / 5.0);
  }
}

HalvingResult brusselator_halving(double beta, double delta, std::size_t points) {
  if (points % 2 != 0) bad_argument("grid halving needs an even point count");
  HalvingResult out;
  std::vector<double> finals[2];
  const std::size_t sizes[2] = {points, points / 2};
  for (int k = 0; k < 2; ++k) {
    Stopwatch sw;
    const auto cfg = brusselator_config(beta, delta, sizes[k]);
    std::vector<double> u0, v0;
    brusselator_initial(cfg, u0, v0);
    const auto res = BrusselatorModel(cfg).run(u0, v0);
    finals[k] = res.u;
    (k == 0 ? out.fine_steps : out.coarse_steps) = res.steps;
    (k == 0 ? out.fine_seconds : out.coarse_seconds) = sw.seconds();
  }
  const auto [lo, hi] = std::minmax_element(finals[0].begin(), finals[0].end());
  out.range = *hi - *lo;
  for (std::size_t i = 0; i < finals[1].size(); ++i)
    out.max_diff = std::max(out.max_diff, std::abs(finals[0][2 * i] - finals[1][i]));
  return out;
}

// --------------------------------------------------------------- Table 3 study

const std::vector<Table3Row>& table3_rows() {
  static const std::vector<Table3Row> rows = {
      {"table3-row1", 0.3, 2000, 7.490e-06, 3.46, {{1000, 3, 3, 4.635e-01, 1.06}}},
      {"table3-row2", 0.15, 2000, 6.522e-06, 3.53, {{2000, 3, 3, 3.293e-01, 2.21}}},
      {"table3-row3", 0.075, 2000, 7.853e-06, 3.53, {{4000, 3, 3, 1.976e-01, 6.77}}},
      {"table3-row4", 0.0375, 2000, 9.464e-06, 3.60, {{8000, 3, 3, 9.423e-02, 22.11}}},
      {"table3-row5",
       5.0,
       2000,
       7.462e-06,
       3.77,
       {{2000, 0, 100, 3.429e-01, 17.33}, {4000, 0, 200, 1.934e-01, 121.34}, {8000, 0, 400, 9.051e-02, 1019.27}}},
  };
  return rows;
}

const Table3Row& table3_row(const std::string& name) {
  for (const auto& row : table3_rows())
    if (row.name == name) return row;
  bad_argument("unknown Table 3 row '" + name + "'");
}

std::vector<double> wave_initial(double length, std::size_t points) {
  std::vector<double> u(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = length * static_cast<double>(i) / static_cast<double>(points);
    u[i] = std::exp(-std::pow(x - 0.5 * length, 8));
  }
  return u;
}

std::vector<double> wave_reference(const WaveCompareConfig& cfg, double delta) {
  const auto p = KernelParams::validate(1, cfg.beta, delta);
  const TorusGrid g({cfg.length}, {cfg.reference_points});
  const auto u0 = wave_initial(cfg.length, cfg.reference_points);
  const std::vector<double> v0(cfg.reference_points, 0.0);
  const WaveSolution sol(eigenvalue_lattice(p, g), SpectralField::from_values(g, u0), SpectralField::from_values(g, v0));
  return sol.at(cfg.t_end).to_values();
}

double error_against(const std::vector<double>& coarse, const std::vector<double>& reference) {
  if (coarse.empty() || reference.size() % coarse.size() != 0) {
    bad_argument("reference grid is not a refinement of the solution grid");
  }
  const std::size_t stride = reference.size() / coarse.size();
  double err = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) err = std::max(err, std::abs(coarse[i] - reference[i * stride]));
  return err;
}

WaveCompareResult run_wave_compare(const Table3Row& row, const WaveCompareConfig& cfg,
                                   const std::function<bool(const FdCase&)>& include_fd) {
  WaveCompareResult out;
  {
    Stopwatch sw;
    out.reference = wave_reference(cfg, row.delta);
    out.reference_seconds = sw.seconds();
  }
  {
    WaveCompareEntry e;
    e.row = row.name;
    e.method = "spectral";
    e.delta = row.delta;
    e.points = row.spectral_points;
    e.published_error = row.published_spectral_error;
    e.published_seconds = row.published_spectral_seconds;
    Stopwatch sw;
    const auto p = KernelParams::validate(1, cfg.beta, row.delta);
    const TorusGrid g({cfg.length}, {row.spectral_points});
    const auto u0 = wave_initial(cfg.length, row.spectral_points);
    const std::vector<double> v0(row.spectral_points, 0.0);
    AdaptiveStats stats;
    e.solution = wave_pseudospectral_run(eigenvalue_lattice(p, g), u0, v0, cfg.t_end, cfg.tolerances, &stats);
    e.seconds = sw.seconds();
    e.steps = stats.accepted;
    e.error = error_against(e.solution, out.reference);
    out.entries.push_back(std::move(e));
  }
  for (const auto& fd : row.fd) {
    if (include_fd && !include_fd(fd)) continue;
    WaveCompareEntry e;
    e.row = row.name;
    e.method = "fd";
    e.points = fd.points;
    e.published_radius = fd.published_radius;
    e.published_error = fd.published_error;
    e.published_seconds = fd.published_seconds;
    Stopwatch sw;
    const double dx = cfg.length / static_cast<double>(fd.points);
    const FDStencil s = fd.radius == 0
                            ? FDStencil::build_fixed_delta(KernelParams::validate(1, cfg.beta, row.delta), dx)
                            : FDStencil::build(KernelParams::validate(1, cfg.beta, static_cast<double>(fd.radius) * dx),
                                               fd.radius, dx);
    e.delta = s.params().delta();
    e.radius = s.radius();
    const auto u0 = wave_initial(cfg.length, fd.points);
    const std::vector<double> v0(fd.points, 0.0);
    AdaptiveStats stats;
    e.solution = fd_wave_run(s, u0, v0, cfg.t_end, cfg.tolerances, &stats);
    e.seconds = sw.seconds();
    e.steps = stats.accepted;
    e.error = error_against(e.solution, out.reference);
    out.entries.push_back(std::move(e));
  }
  return out;
}

// ----------------------------------------------------------------- FD spectrum

std::vector<EigenCurvePoint> fd_spectrum(const FDStencil& s, double length, std::size_t kmax) {
  if (!(length > 0.0)) bad_argument("period must be positive");
  std::vector<EigenCurvePoint> out(kmax + 1);
  parallel_for(kmax + 1, [&](std::size_t k) {
    const double kk = static_cast<double>(k);
    const double nu = 2.0 * pi * kk / length;
    out[k] = {kk, fd_eigenvalue(s, length, kk), multiplier(s.params(), nu), -nu * nu};
  });
  return out;
}

}  // namespace nonlocal::experiments
