#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nonlocal/brusselator.hpp"
#include "nonlocal/fd.hpp"
#include "nonlocal/integrators.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/multiplier_table.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/torus_grid.hpp"

namespace nonlocal::experiments {

std::string version_string();

/// Wall-clock stopwatch (the runs are single-process; wall time is what users see).
class Stopwatch {
 public:
  Stopwatch();
  double seconds() const;

 private:
  double start_;
};

// ---------------------------------------------------------------- multipliers

struct KernelRow {
  int n;
  double beta;
  double delta;
};

/// The nine (n, beta, delta) rows of the 318 pi study.
const std::vector<KernelRow>& table1_rows();

struct MultiplierSample {
  double r = 0.0;
  double m = 0.0;
  double oracle = std::numeric_limits<double>::quiet_NaN();
  double rel_err = std::numeric_limits<double>::quiet_NaN();
};

/// `count` equispaced radii in [rmin, rmax] (count = 1 gives rmin). The oracle
/// column is filled when `with_oracle` is set and beta < n + 2.
std::vector<MultiplierSample> multiplier_sweep(const KernelParams& p, double rmin, double rmax,
                                               std::size_t count, bool with_oracle,
                                               double oracle_tol = 1e-13);

// ------------------------------------------------------------ table benchmark

struct TableBenchConfig {
  KernelParams params;
  double K;
  std::size_t N;
  std::size_t M;
  std::size_t probes = 10000;
};

/// The two configurations of the interpolation study.
std::vector<TableBenchConfig> table2_configs();

struct TableBenchResult {
  double prep_seconds = 0.0;
  double avg_interp_seconds = 0.0;
  double avg_direct_seconds = 0.0;
  /// avg_direct / avg_interp, per lookup once the table exists.
  double lookup_speedup = 0.0;
  /// Probes after which building the table beats direct evaluation.
  double break_even_probes = 0.0;
  double max_normalized_error = 0.0;
  double tail_ratio = 0.0;
  std::vector<std::string> warnings;
};

/// Builds the table, then compares it against direct evaluation at
/// `probes` uniform points of [0, K]. The built table is moved into
/// `table_out` when given.
TableBenchResult run_table_bench(const TableBenchConfig& cfg,
                                 std::optional<MultiplierTable>* table_out = nullptr);

// ---------------------------------------------------------- linear 2D solvers

struct Panel {
  double beta;
  double delta;
};

/// beta in {1, 3, 5} x delta in {0.1, 1, 2}, then the classical operator.
std::vector<Panel> figure_panels();

/// Lattice eigenvalues through a multiplier table sized to the grid
/// (K = max |nu| (1 + 1e-9), coarse samples from the oscillation count).
EigenLattice table_lattice(const KernelParams& p, const TorusGrid& grid);

struct HeatConfig {
  std::string initial = "blob";  ///< "blob": exp(-x^8 - y^8); "star": polar star of radius 4
  double length = 20.0;          ///< square [-length/2, length/2]^2
  std::size_t points = 800;
  double t_end = 15.0;
  std::size_t frames = 250;      ///< snapshot times, evenly spaced, t = 0 and t_end included
  double level = 0.1;            ///< contour level written per frame (<= 0 disables)
  std::vector<Panel> panels = figure_panels();
};

struct WaveConfig {
  double length = 96.0;
  std::size_t points = 400;
  double t_end = 10.0;
  std::size_t frames = 1;        ///< 1: only t_end
  std::size_t energy_samples = 101;
  std::vector<Panel> panels = figure_panels();
};

double heat_initial(const std::string& name, double x, double y);

/// Crossing points of {u = level} on the edges of a 2D grid.
std::vector<std::array<double, 2>> level_set_points(const TorusGrid& grid, const std::vector<double>& u,
                                                    double level);

// ----------------------------------------------------------------- Brusselator

struct BrusselatorPreset {
  std::string name;
  double beta;
  double delta;
};

const std::vector<BrusselatorPreset>& brusselator_presets();

BrusselatorConfig brusselator_config(double beta, double delta, std::size_t points, double t_end = 40.0);

/// u0 = a (1 + sin(pi x / 10) / 2), v0 = b / a + cos(3 pi x / 5) / 10.
void brusselator_initial(const BrusselatorConfig& cfg, std::vector<double>& u0, std::vector<double>& v0);

struct HalvingResult {
  std::size_t fine_steps = 0;
  std::size_t coarse_steps = 0;
  double max_diff = 0.0;
  double range = 0.0;
  double fine_seconds = 0.0;
  double coarse_seconds = 0.0;
  double relative() const { return max_diff / range; }
};

/// Runs the published configuration at `points` and `points / 2` and compares
/// the final u on the shared nodes.
HalvingResult brusselator_halving(double beta, double delta, std::size_t points);

// --------------------------------------------------------------- Table 3 study

struct FdCase {
  std::size_t points;
  std::size_t radius;        ///< 0: fixed horizon, radius = ceil(delta / dx)
  std::size_t published_radius;  ///< radius printed in the published table
  double published_error;
  double published_seconds;
};

struct Table3Row {
  std::string name;
  double delta;
  std::size_t spectral_points;
  double published_spectral_error;
  double published_spectral_seconds;
  std::vector<FdCase> fd;
};

const std::vector<Table3Row>& table3_rows();
const Table3Row& table3_row(const std::string& name);

struct WaveCompareConfig {
  double length = 20.0;
  double t_end = 40.0;
  double beta = 1.0 / 3.0;
  std::size_t reference_points = 8000;
  AdaptiveOptions tolerances{};
};

struct WaveCompareEntry {
  std::string row;
  std::string method;  ///< "spectral" or "fd"
  double delta = 0.0;  ///< horizon of the operator actually discretized
  std::size_t points = 0;
  std::size_t radius = 0;
  std::size_t published_radius = 0;
  double error = 0.0;
  double published_error = 0.0;
  double seconds = 0.0;
  double published_seconds = 0.0;
  std::size_t steps = 0;
  std::vector<double> solution;
};

struct WaveCompareResult {
  std::vector<double> reference;
  double reference_seconds = 0.0;
  std::vector<WaveCompareEntry> entries;
};

/// u0 = exp(-(x - L/2)^8) on [0, L).
std::vector<double> wave_initial(double length, std::size_t points);

/// Semi-analytic reference at t_end on the fine grid.
std::vector<double> wave_reference(const WaveCompareConfig& cfg, double delta);

/// Max-norm error of a coarse solution against a reference on a grid that
/// is an integer refinement of it.
double error_against(const std::vector<double>& coarse, const std::vector<double>& reference);

/// Spectral run plus the FD cases of a row; `include_fd` filters FD cases
/// (e.g. to skip the slow fixed-horizon ones).
WaveCompareResult run_wave_compare(const Table3Row& row, const WaveCompareConfig& cfg,
                                   const std::function<bool(const FdCase&)>& include_fd = {});

// ----------------------------------------------------------------- FD spectrum

struct EigenCurvePoint {
  double k;
  double lambda_fd;
  double lambda_true;
  double lambda_laplacian;
};

/// Eigencurve of the radius-r stencil with spacing dx on a period L, at
/// k = 0 .. kmax. The true curve uses the stencil's own horizon.
std::vector<EigenCurvePoint> fd_spectrum(const FDStencil& s, double length, std::size_t kmax);

// ------------------------------------------------------------------ acceptance

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool gated = true;  ///< informational lines never fail the run
  std::string detail;
  double seconds = 0.0;
};

/// Gated criteria are 1..9; id 10 is the informational fixed-horizon FD study.
constexpr int kOptionalFixedHorizon = 10;

CriterionResult run_criterion(int id);

/// Runs the listed criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const std::function<void(const CriterionResult&)>& report = {});

std::string format_result(const CriterionResult& r);

}  // namespace nonlocal::experiments
