#include "commands.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <type_traits>

#include "nonlocal/errors.hpp"
#include "nonlocal/fd.hpp"
#include "nonlocal/multiplier_table.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/oracle.hpp"
#include "nonlocal/snapshot_io.hpp"
#include "nonlocal/spectral.hpp"
#include "nonlocal_experiments/experiments.hpp"

namespace nonlocal::cli {

namespace fs = std::filesystem;
namespace ex = nonlocal::experiments;
using std::numbers::pi;

int g_exit_status = 0;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string panel_label(double beta, double delta) { return "b" + short_num(beta) + "_d" + short_num(delta); }

class Csv {
 public:
  Csv(const fs::path& path, const std::string& header) : os_(path) {
    if (!os_) throw FormatError("cannot write " + path.string());
    os_ << header << '\n';
  }
  template <class... Args>
  void row(const Args&... args) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(args), first = false), ...);
    os_ << '\n';
  }

 private:
  template <class T>
  static std::string cell(const T& v) {
    if constexpr (std::is_floating_point_v<T>) {
      return num(v);
    } else if constexpr (std::is_integral_v<T>) {
      return std::to_string(v);
    } else {
      return std::string(v);
    }
  }
  std::ofstream os_;
};

bool given(const CLI::App* sub, const std::string& flag) { return sub->count(flag) > 0; }

template <class T, class U>
void preset(const CLI::App* sub, const std::string& flag, T& var, U value) {
  if (!given(sub, flag)) var = static_cast<T>(value);
}

void require_flags(const CLI::App* sub, std::initializer_list<const char*> flags) {
  std::string missing;
  for (const char* f : flags)
    if (!given(sub, f)) missing += std::string(missing.empty() ? "" : ", ") + f;
  if (!missing.empty()) throw UsageError("missing " + missing + " (or pick a --preset)");
}

[[noreturn]] void unknown_preset(const std::string& name, const std::string& choices) {
  throw UsageError("unknown preset '" + name + "'; choose one of: " + choices);
}

void add_output_flags(CLI::App* sub, std::string& out, bool& force, const std::string& default_dir) {
  out = default_dir;
  sub->add_option("--out", out, "Output directory")->capture_default_str();
  sub->add_flag("--force", force, "Replace an existing output directory");
}

// ------------------------------------------------------------------ multipliers

struct MultipliersOpts {
  int n = 0;
  double beta = 0, delta = 0, rmin = 0, rmax = 0, tol = 1e-13;
  std::size_t count = 0;
  bool oracle = false, force = false;
  std::string preset, out;
};

void write_sweep(const fs::path& path, const std::vector<ex::MultiplierSample>& s, bool oracle) {
  Csv csv(path, oracle ? "r,m,oracle,rel_err" : "r,m");
  for (const auto& x : s) {
    if (oracle) {
      csv.row(x.r, x.m, x.oracle, x.rel_err);
    } else {
      csv.row(x.r, x.m);
    }
  }
}

void cmd_multipliers(CLI::App* sub, const MultipliersOpts& o, const Invocation& inv) {
  OutputDir dir(o.out, o.force);
  if (o.preset.empty()) {
    require_flags(sub, {"--n", "--beta", "--delta", "--rmax", "--count"});
    const auto p = KernelParams::validate(o.n, o.beta, o.delta);
    const bool with_oracle = o.oracle && p.integrable();
    if (o.oracle && !with_oracle) std::cerr << "note: no integral form for beta >= n + 2; oracle column skipped\n";
    const auto s = ex::multiplier_sweep(p, o.rmin, o.rmax, o.count, with_oracle, o.tol);
    write_sweep(dir.path("multipliers.csv"), s, with_oracle);
    if (with_oracle) {
      double worst = 0.0;
      for (const auto& x : s) worst = std::max(worst, x.rel_err);
      std::cout << "final rel_err " << num(s.back().rel_err) << ", max rel_err " << num(worst) << "\n";
    }
  } else if (o.preset == "table1") {
    Csv summary(dir.path("summary.csv"), "n,beta,delta,r,m,oracle,rel_err");
    for (const auto& row : ex::table1_rows()) {
      const auto p = KernelParams::validate(row.n, row.beta, row.delta);
      const auto s = ex::multiplier_sweep(p, 1.0, 318.0 * pi, 1000, true, o.tol);
      write_sweep(dir.path("table1_n" + std::to_string(row.n) + "_" + panel_label(row.beta, row.delta) + ".csv"), s,
                  true);
      const auto& last = s.back();
      summary.row(row.n, row.beta, row.delta, last.r, last.m, last.oracle, last.rel_err);
      std::printf("n=%d beta=%-5g delta=%g  m(318pi)=%.16e  rel_err=%.3e\n", row.n, row.beta, row.delta, last.m,
                  last.rel_err);
    }
  } else if (o.preset == "fig1") {
    for (const auto& panel : ex::figure_panels()) {
      const auto p = KernelParams::validate(2, panel.beta, panel.delta);
      write_sweep(dir.path("fig1_" + panel_label(panel.beta, panel.delta) + ".csv"),
                  ex::multiplier_sweep(p, 0.0, 10.0, 1000, false), false);
    }
  } else {
    unknown_preset(o.preset, "table1, fig1");
  }
  dir.write_provenance(*sub, inv);
  dir.commit();
}

// ----------------------------------------------------------------------- oracle

struct OracleOpts {
  int n = 0;
  double beta = 0, delta = 0, rmin = 0, rmax = 0, tol = 1e-13;
  std::size_t count = 0;
  bool force = false;
  std::string out;
};

void cmd_oracle(CLI::App* sub, const OracleOpts& o, const Invocation& inv) {
  require_flags(sub, {"--n", "--beta", "--delta", "--rmax", "--count"});
  const auto p = KernelParams::validate(o.n, o.beta, o.delta);
  if (!(o.rmax >= o.rmin && o.rmin >= 0.0)) throw UsageError("need 0 <= --rmin <= --rmax");
  OutputDir dir(o.out, o.force);
  Csv csv(dir.path("oracle.csv"), "r,value,est_error,evaluations");
  for (std::size_t i = 0; i < o.count; ++i) {
    const double r = o.count == 1 ? o.rmin
                                  : o.rmin + (o.rmax - o.rmin) * static_cast<double>(i) / static_cast<double>(o.count - 1);
    const auto q = multiplier_quadrature(p, r, o.tol);
    csv.row(r, q.value, q.est_error, q.evaluations);
  }
  dir.write_provenance(*sub, inv);
  dir.commit();
}

// ------------------------------------------------------------------ table-bench

struct TableBenchOpts {
  int n = 0;
  double beta = 0, delta = 0, K = 0;
  std::size_t N = 0, M = 0, probes = 10000;
  bool force = false;
  std::string preset, out;
};

void cmd_table_bench(CLI::App* sub, const TableBenchOpts& o, const Invocation& inv) {
  std::vector<std::pair<std::string, ex::TableBenchConfig>> runs;
  const auto published = ex::table2_configs();
  if (o.preset.empty()) {
    require_flags(sub, {"--n", "--beta", "--delta", "--K", "--N", "--M"});
    runs.push_back({"table", {KernelParams::validate(o.n, o.beta, o.delta), o.K, o.N, o.M, o.probes}});
  } else if (o.preset == "table2") {
    runs = {{"table2_a", published[0]}, {"table2_b", published[1]}};
  } else if (o.preset == "table2-a") {
    runs = {{"table2_a", published[0]}};
  } else if (o.preset == "table2-b") {
    runs = {{"table2_b", published[1]}};
  } else if (o.preset == "smoke") {
    runs = {{"smoke", {KernelParams::validate(2, 0.5, 1.2), 10.0, 32, 256, 1000}}};
  } else {
    unknown_preset(o.preset, "table2, table2-a, table2-b, smoke");
  }
  if (!o.preset.empty() && given(sub, "--probe-count"))
    for (auto& r : runs) r.second.probes = o.probes;

  OutputDir dir(o.out, o.force);
  Csv summary(dir.path("summary.csv"),
              "label,n,beta,delta,K,N,M,probes,prep_seconds,avg_interp_seconds,avg_direct_seconds,lookup_speedup,"
              "break_even_probes,max_error,tail_ratio");
  for (const auto& [label, cfg] : runs) {
    std::optional<MultiplierTable> table;
    const auto res = ex::run_table_bench(cfg, &table);
    table->save(dir.path(label + ".nlmt"));
    {
      std::ofstream os(dir.path(label + "_samples.csv"));
      table->write_csv(os);
    }
    Csv coeffs(dir.path(label + "_coefficients.csv"), "mode,magnitude");
    for (std::size_t k = 0; k < table->coefficient_decay().size(); ++k) coeffs.row(k, table->coefficient_decay()[k]);
    summary.row(label, cfg.params.dimension(), cfg.params.beta(), cfg.params.delta(), cfg.K, cfg.N, cfg.M, cfg.probes,
                res.prep_seconds, res.avg_interp_seconds, res.avg_direct_seconds, res.lookup_speedup,
                res.break_even_probes, res.max_normalized_error, res.tail_ratio);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    std::printf("%-9s prep %.3f s | interp %.3e s | direct %.3e s | speedup %.0fx | max error %.3e\n", label.c_str(),
                res.prep_seconds, res.avg_interp_seconds, res.avg_direct_seconds, res.lookup_speedup,
                res.max_normalized_error);
  }
  dir.write_provenance(*sub, inv);
  dir.commit();
}

// ------------------------------------------------------------------- heat, wave

struct LinearOpts {
  std::string preset, out, initial = "blob";
  double beta = 0, delta = 0, length = 0, t_end = 0, level = 0.1;
  std::size_t points = 0, frames = 0;
  bool force = false, direct = false;
};

std::vector<ex::Panel> chosen_panels(CLI::App* sub, const LinearOpts& o) {
  if (given(sub, "--beta") != given(sub, "--delta")) throw UsageError("--beta and --delta go together");
  if (given(sub, "--beta")) return {{o.beta, o.delta}};
  return ex::figure_panels();
}

std::vector<double> frame_times(double t_end, std::size_t frames) {
  if (frames == 0) throw UsageError("--frames must be at least 1");
  if (frames == 1) return {t_end};
  std::vector<double> t(frames);
  for (std::size_t i = 0; i < frames; ++i) t[i] = t_end * static_cast<double>(i) / static_cast<double>(frames - 1);
  return t;
}

void cmd_heat(CLI::App* sub, LinearOpts o, const Invocation& inv) {
  if (o.preset == "heat-blob" || o.preset.empty()) {
    preset(sub, "--initial", o.initial, "blob");
    preset(sub, "--t-end", o.t_end, 15.0);
    preset(sub, "--frames", o.frames, 250);
  } else if (o.preset == "heat-contour") {
    preset(sub, "--initial", o.initial, "star");
    preset(sub, "--t-end", o.t_end, 2.0);
    preset(sub, "--frames", o.frames, 4);
  } else {
    unknown_preset(o.preset, "heat-blob, heat-contour");
  }
  preset(sub, "--length", o.length, 20.0);
  preset(sub, "--points", o.points, 800);
  if (o.points < 2 || !(o.length > 0.0) || !(o.t_end >= 0.0)) throw UsageError("bad grid or time window");
  const auto panels = chosen_panels(sub, o);
  const auto times = frame_times(o.t_end, o.frames);
  const TorusGrid g = TorusGrid::uniform(2, o.length, o.points, -0.5 * o.length);
  const auto init = o.initial;
  ex::heat_initial(init, 0.0, 0.0);  // rejects unknown names before any work
  const auto u0 = SpectralField::from_function(g, [&](std::span<const double> x) { return ex::heat_initial(init, x[0], x[1]); });

  OutputDir dir(o.out, o.force);
  Csv summary(dir.path("summary.csv"), "beta,delta,eigen_seconds,solve_seconds,frames,final_min,final_max,final_mean");
  for (const auto& panel : panels) {
    const auto p = KernelParams::validate(2, panel.beta, panel.delta);
    ex::Stopwatch sw;
    const auto eigen = o.direct ? eigenvalue_lattice(p, g) : ex::table_lattice(p, g);
    const double eigen_seconds = sw.seconds();
    const HeatSolution sol(eigen, u0);
    const std::string label = panel_label(panel.beta, panel.delta);
    fs::create_directories(dir.path(label));
    SnapshotSeries series(dir.path(label), "u", g);
    ex::Stopwatch solve;
    std::vector<double> u;
    for (std::size_t f = 0; f < times.size(); ++f) {
      u = sol.at(times[f]).to_values();
      series.add(times[f], u);
      if (o.level > 0.0) {
        char name[32];
        std::snprintf(name, sizeof name, "contour_%05zu.csv", f);
        Csv c(dir.path(label) / name, "x,y");
        for (const auto& pt : ex::level_set_points(g, u, o.level)) c.row(pt[0], pt[1]);
      }
    }
    series.write_index();
    double lo = u[0], hi = u[0], mean = 0.0;
    for (double x : u) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      mean += x;
    }
    summary.row(panel.beta, panel.delta, eigen_seconds, solve.seconds(), times.size(), lo, hi,
                mean / static_cast<double>(u.size()));
    std::printf("%-12s eigen %.2f s, %zu frames %.2f s\n", label.c_str(), eigen_seconds, times.size(), solve.seconds());
  }
  dir.write_provenance(*sub, inv);
  dir.commit();
}

void cmd_wave(CLI::App* sub, LinearOpts o, const Invocation& inv) {
  if (!o.preset.empty() && o.preset != "fig4") unknown_preset(o.preset, "fig4");
  preset(sub, "--length", o.length, 96.0);
  preset(sub, "--points", o.points, 400);
  preset(sub, "--t-end", o.t_end, 10.0);
  preset(sub, "--frames", o.frames, 1);
  if (o.points < 2 || !(o.length > 0.0) || !(o.t_end >= 0.0)) throw UsageError("bad grid or time window");
  const auto panels = chosen_panels(sub, o);
  const auto times = frame_times(o.t_end, o.frames);
  const TorusGrid g = TorusGrid::uniform(2, o.length, o.points, -0.5 * o.length);
  const auto u0 = SpectralField::from_function(g, [](std::span<const double> x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); });
  const SpectralField v0(g, std::vector<std::complex<double>>(g.total_points()));

  OutputDir dir(o.out, o.force);
  Csv summary(dir.path("summary.csv"), "beta,delta,eigen_seconds,solve_seconds,energy_drift,final_min,final_max");
  for (const auto& panel : panels) {
    const auto p = KernelParams::validate(2, panel.beta, panel.delta);
    ex::Stopwatch sw;
    const auto eigen = o.direct ? eigenvalue_lattice(p, g) : ex::table_lattice(p, g);
    const double eigen_seconds = sw.seconds();
    const WaveSolution sol(eigen, u0, v0);
    const std::string label = panel_label(panel.beta, panel.delta);
    fs::create_directories(dir.path(label));
    SnapshotSeries series(dir.path(label), "u", g);
    ex::Stopwatch solve;
    std::vector<double> u;
    for (double t : times) {
      u = sol.at(t).to_values();
      series.add(t, u);
    }
    series.write_index();
    const double e0 = sol.energy(0.0);
    double drift = 0.0;
    for (int i = 1; i <= 100; ++i) drift = std::max(drift, std::abs(sol.energy(o.t_end * i / 100.0) - e0) / e0);
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    summary.row(panel.beta, panel.delta, eigen_seconds, solve.seconds(), drift, *lo, *hi);
    std::printf("%-12s eigen %.2f s, energy drift %.2e\n", label.c_str(), eigen_seconds, drift);
  }
  dir.write_provenance(*sub, inv);
  dir.commit();
}

// ------------------------------------------------------------------ brusselator

struct BrusselatorOpts {
  std::string preset, out;
  double beta = 0, delta = 0, t_end = 40.0, cfl = 1.9;
  std::size_t points = 1600, frames = 400;
  bool halving = false, force = false;
};

void cmd_brusselator(CLI::App* sub, BrusselatorOpts o, const Invocation& inv) {
  if (!o.preset.empty()) {
    bool found = false;
    for (const auto& p : ex::brusselator_presets()) {
      if (p.name != o.preset) continue;
      preset(sub, "--beta", o.beta, p.beta);
      preset(sub, "--delta", o.delta, p.delta);
      found = true;
    }
    if (!found) unknown_preset(o.preset, "fig6-classical, fig6-b2.5, fig6-b2, fig6-b1.5");
  } else {
    require_flags(sub, {"--beta", "--delta"});
  }
  if (o.points < 4) throw UsageError("--points must be at least 4");
  if (o.frames < 2) throw UsageError("--frames must be at least 2");
  auto cfg = ex::brusselator_config(o.beta, o.delta, o.points, o.t_end);
  cfg.cfl_const = o.cfl;
  std::vector<double> u0, v0;
  ex::brusselator_initial(cfg, u0, v0);
  const std::size_t steps = brusselator_step_count(cfg);
  const std::size_t every = std::max<std::size_t>(1, steps / (o.frames - 1));

  OutputDir dir(o.out, o.force);
  ex::Stopwatch sw;
  const auto res = BrusselatorModel(cfg).run(u0, v0, every);
  const double seconds = sw.seconds();

  const std::size_t F = res.u_frames.size();
  std::vector<double> raster;
  raster.reserve(F * o.points);
  for (const auto& frame : res.u_frames) raster.insert(raster.end(), frame.begin(), frame.end());
  // rows are frames; the leading axis carries no geometry
  write_snapshot(dir.path("u_raster.nlfd"), TorusGrid({std::max(o.t_end, 1e-300), 20.0}, {F, o.points}), o.t_end,
                 raster);
  {
    Csv times(dir.path("times.csv"), "frame,t");
    for (std::size_t f = 0; f < F; ++f) times.row(f, res.times[f]);
    Csv fin(dir.path("final.csv"), "x,u,v");
    for (std::size_t i = 0; i < o.points; ++i) fin.row(cfg.grid.coordinate(0, i), res.u[i], res.v[i]);
  }
  const auto [lo, hi] = std::minmax_element(res.u.begin(), res.u.end());
  Csv summary(dir.path("summary.csv"),
              "beta,delta,points,steps,dt,u_min,u_max,seconds,halving_points,halving_max_diff_over_range");
  double rel = std::nan("");
  if (o.halving) {
    if (o.points % 2) throw UsageError("--halving needs an even --points");
    auto coarse_cfg = ex::brusselator_config(o.beta, o.delta, o.points / 2, o.t_end);
    coarse_cfg.cfl_const = o.cfl;
    std::vector<double> cu, cv;
    ex::brusselator_initial(coarse_cfg, cu, cv);
    const auto coarse = BrusselatorModel(coarse_cfg).run(cu, cv);
    double diff = 0.0;
    for (std::size_t i = 0; i < coarse.u.size(); ++i) diff = std::max(diff, std::abs(coarse.u[i] - res.u[2 * i]));
    rel = diff / (*hi - *lo);
  }
  summary.row(o.beta, o.delta, o.points, res.steps, res.dt, *lo, *hi, seconds, o.halving ? o.points / 2 : 0, rel);
  std::printf("steps %zu, dt %.6e, u in [%.6f, %.6f], %.1f s", res.steps, res.dt, *lo, *hi, seconds);
  if (o.halving) std::printf(", halving diff %.3e of range", rel);
  std::printf("\n");
  dir.write_provenance(*sub, inv);
  dir.commit();
}

// ----------------------------------------------------------------- wave-compare

struct WaveCompareOpts {
  std::string preset, out;
  double delta = 0, rtol = 1e-8, atol = 1e-10;
  std::size_t spectral_points = 2000, fd_radius = 3;
  std::vector<std::size_t> fd_points;
  bool skip_fixed = false, force = false;
};

void cmd_wave_compare(CLI::App* sub, const WaveCompareOpts& o, const Invocation& inv) {
  ex::Table3Row row;
  if (!o.preset.empty()) {
    bool found = false;
    for (const auto& r : ex::table3_rows()) {
      if (r.name == o.preset) {
        row = r;
        found = true;
      }
    }
    if (!found) unknown_preset(o.preset, "table3-row1 .. table3-row5");
  } else {
    require_flags(sub, {"--delta"});
    const double nan = std::nan("");
    row = {"custom", o.delta, o.spectral_points, nan, nan, {}};
    for (std::size_t n : o.fd_points) row.fd.push_back({n, o.fd_radius, o.fd_radius, nan, nan});
  }
  if (given(sub, "--spectral-points")) row.spectral_points = o.spectral_points;
  ex::WaveCompareConfig cfg;
  cfg.tolerances.rtol = o.rtol;
  cfg.tolerances.atol = o.atol;
  for (const auto& fd : row.fd) {
    if (cfg.reference_points % fd.points != 0) throw UsageError("FD point counts must divide 8000");
  }
  if (cfg.reference_points % row.spectral_points != 0) throw UsageError("--spectral-points must divide 8000");

  OutputDir dir(o.out, o.force);
  const auto res = ex::run_wave_compare(row, cfg, [&](const ex::FdCase& c) { return !(o.skip_fixed && c.radius == 0); });
  {
    Csv ref(dir.path("reference.csv"), "x,u");
    for (std::size_t i = 0; i < res.reference.size(); ++i)
      ref.row(cfg.length * static_cast<double>(i) / static_cast<double>(res.reference.size()), res.reference[i]);
  }
  Csv summary(dir.path("summary.csv"),
              "row,method,delta,points,radius,published_radius,error,published_error,error_ratio,seconds,published_seconds,steps");
  std::printf("reference (N=%zu) %.1f s\n", cfg.reference_points, res.reference_seconds);
  for (const auto& e : res.entries) {
    const std::string name = e.method + "_N" + std::to_string(e.points) + (e.method == "fd" ? "_r" + std::to_string(e.radius) : "");
    Csv sol(dir.path(name + ".csv"), "x,u");
    for (std::size_t i = 0; i < e.solution.size(); ++i)
      sol.row(cfg.length * static_cast<double>(i) / static_cast<double>(e.solution.size()), e.solution[i]);
    summary.row(e.row, e.method, e.delta, e.points, e.radius, e.published_radius, e.error, e.published_error,
                e.error / e.published_error, e.seconds, e.published_seconds, e.steps);
    std::printf("%-8s N=%-5zu r=%-5zu delta=%-8g error %.3e (published %.3e)  %.2f s\n", e.method.c_str(), e.points,
                e.radius, e.delta, e.error, e.published_error, e.seconds);
  }
  dir.write_provenance(*sub, inv);
  dir.commit();
}

// ------------------------------------------------------------------ fd-spectrum

struct FdSpectrumOpts {
  std::string preset, out;
  std::size_t N = 0, r = 3, kmax = 0;
  double beta = 1.0 / 3.0, L = 1.0, delta = 0;
  bool force = false;
};

void write_curve(const fs::path& path, const std::vector<ex::EigenCurvePoint>& curve) {
  Csv csv(path, "k,lambda_fd,lambda_true,lambda_laplacian");
  for (const auto& c : curve) csv.row(c.k, c.lambda_fd, c.lambda_true, c.lambda_laplacian);
}

void cmd_fd_spectrum(CLI::App* sub, FdSpectrumOpts o, const Invocation& inv) {
  OutputDir dir(o.out, o.force);
  if (o.preset == "fig7-right") {
    preset(sub, "--delta", o.delta, 0.1);
    preset(sub, "--kmax", o.kmax, 30);
    for (std::size_t r : {6, 36, 216}) {
      const double dx = o.delta / static_cast<double>(r);
      const auto s = FDStencil::build(KernelParams::validate(1, o.beta, o.delta), r, dx);
      write_curve(dir.path("eigencurve_r" + std::to_string(r) + ".csv"), ex::fd_spectrum(s, o.L, o.kmax));
    }
  } else {
    if (o.preset == "fig7-left") {
      preset(sub, "--N", o.N, 100);
    } else if (o.preset == "fig7-left-10000") {
      preset(sub, "--N", o.N, 10000);
    } else if (!o.preset.empty()) {
      unknown_preset(o.preset, "fig7-left, fig7-left-10000, fig7-right");
    } else {
      require_flags(sub, {"--N"});
    }
    if (o.N == 0) throw UsageError("--N must be at least 1");
    const double dx = o.L / static_cast<double>(2 * o.N + 1);
    const FDStencil s = given(sub, "--delta")
                            ? (given(sub, "--r") ? FDStencil::build(KernelParams::validate(1, o.beta, o.delta), o.r, dx)
                                                 : FDStencil::build_fixed_delta(KernelParams::validate(1, o.beta, o.delta), dx))
                            : FDStencil::build(KernelParams::validate(1, o.beta, static_cast<double>(o.r) * dx), o.r, dx);
    preset(sub, "--kmax", o.kmax, o.N);
    write_curve(dir.path("eigencurve.csv"), ex::fd_spectrum(s, o.L, o.kmax));
    std::printf("N=%zu (M=%zu points), r=%zu, delta=%g, dx=%g\n", o.N, 2 * o.N + 1, s.radius(), s.params().delta(), dx);
  }
  dir.write_provenance(*sub, inv);
  dir.commit();
}

// --------------------------------------------------------------------- validate

struct ValidateOpts {
  std::vector<int> only;
  bool optional = false;
};

void cmd_validate(const ValidateOpts& o) {
  std::vector<int> ids = o.only;
  if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  if (o.optional) ids.push_back(ex::kOptionalFixedHorizon);
  bool ok = true;
  ex::run_acceptance(ids, [&](const ex::CriterionResult& r) {
    std::cout << ex::format_result(r) << std::endl;
    if (r.gated && !r.passed) ok = false;
  });
  g_exit_status = ok ? 0 : 1;
}

}  // namespace

// ------------------------------------------------------------------- OutputDir

OutputDir::OutputDir(const fs::path& target, bool force) : target_(target), force_(force) {
  if (target.empty()) throw UsageError("--out must not be empty");
  if (fs::exists(target) && !force) {
    throw UsageError("output directory " + target.string() + " already exists (use --force to replace it)");
  }
  staging_ = target;
  staging_ += ".partial-" + std::to_string(::getpid());
  fs::remove_all(staging_);
  fs::create_directories(staging_);
}

OutputDir::~OutputDir() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

void OutputDir::write_provenance(const CLI::App& sub, const Invocation& inv) const {
  nlohmann::json options = nlohmann::json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    const auto results = opt->reduced_results();
    if (!results.empty()) {
      options[name] = results.size() == 1 ? nlohmann::json(results[0]) : nlohmann::json(results);
    } else {
      options[name] = opt->get_default_str();
    }
  }
  nlohmann::json prov = {
      {"version", experiments::version_string()},
      {"command", sub.get_name()},
      {"argv", inv.argv},
      {"options", options},
  };
  std::ofstream(staging_ / "provenance.json") << prov.dump(2) << '\n';
  if (!inv.config_text.empty()) std::ofstream(staging_ / "config_input.json") << inv.config_text;
}

void OutputDir::commit() {
  if (fs::exists(target_)) {
    if (!force_) throw UsageError("output directory " + target_.string() + " appeared during the run");
    fs::remove_all(target_);
  }
  if (target_.has_parent_path()) fs::create_directories(target_.parent_path());
  fs::rename(staging_, target_);
  committed_ = true;
}

// ------------------------------------------------------------------ config file

std::vector<std::string> expand_config(const std::vector<std::string>& args, std::string& config_text) {
  std::vector<std::string> out;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty()) return out;
  if (out.size() < 2) throw UsageError("--config must follow a subcommand");

  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config file " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  config_text = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");

  std::vector<std::string> flags;
  auto scalar = [&](const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return num(v.get<double>());
    throw UsageError("config key '" + key + "' must be a string, number, bool or array of those");
  };
  for (const auto& [key, value] : j.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back(flag);
    } else if (value.is_array()) {
      flags.push_back(flag);
      for (const auto& v : value) flags.push_back(scalar(v, key));
    } else {
      flags.push_back(flag);
      flags.push_back(scalar(value, key));
    }
  }
  // program, subcommand, config flags, then the explicit ones
  std::vector<std::string> merged{out[0], out[1]};
  merged.insert(merged.end(), flags.begin(), flags.end());
  merged.insert(merged.end(), out.begin() + 2, out.end());
  return merged;
}

// ------------------------------------------------------------------ registration

void register_commands(CLI::App& app, const Invocation& inv) {
  {
    auto o = std::make_shared<MultipliersOpts>();
    auto* sub = app.add_subcommand("multipliers", "Tabulate m(r), optionally against the quadrature oracle");
    sub->add_option("--n", o->n, "Dimension (1, 2 or 3)");
    sub->add_option("--beta", o->beta, "Kernel exponent");
    sub->add_option("--delta", o->delta, "Horizon");
    sub->add_option("--rmin", o->rmin, "Smallest radius")->capture_default_str();
    sub->add_option("--rmax", o->rmax, "Largest radius");
    sub->add_option("--count", o->count, "Number of radii")->check(CLI::PositiveNumber);
    sub->add_flag("--oracle", o->oracle, "Add quadrature oracle and relative error columns");
    sub->add_option("--tol", o->tol, "Oracle relative tolerance")->capture_default_str();
    sub->add_option("--preset", o->preset, "table1 | fig1");
    add_output_flags(sub, o->out, o->force, "out/multipliers");
    sub->callback([o, sub, &inv] { cmd_multipliers(sub, *o, inv); });
  }
  {
    auto o = std::make_shared<OracleOpts>();
    auto* sub = app.add_subcommand("oracle", "Quadrature values of m(r) with error estimates");
    sub->add_option("--n", o->n, "Dimension (1, 2 or 3)");
    sub->add_option("--beta", o->beta, "Kernel exponent (< n + 2)");
    sub->add_option("--delta", o->delta, "Horizon");
    sub->add_option("--rmin", o->rmin, "Smallest radius")->capture_default_str();
    sub->add_option("--rmax", o->rmax, "Largest radius");
    sub->add_option("--count", o->count, "Number of radii")->check(CLI::PositiveNumber);
    sub->add_option("--tol", o->tol, "Relative tolerance (>= 1e-14)")->capture_default_str();
    add_output_flags(sub, o->out, o->force, "out/oracle");
    sub->callback([o, sub, &inv] { cmd_oracle(sub, *o, inv); });
  }
  {
    auto o = std::make_shared<TableBenchOpts>();
    auto* sub = app.add_subcommand("table-bench", "Build a multiplier table and time it against direct evaluation");
    sub->add_option("--n", o->n, "Dimension");
    sub->add_option("--beta", o->beta, "Kernel exponent");
    sub->add_option("--delta", o->delta, "Horizon");
    sub->add_option("--K", o->K, "Largest radius covered");
    sub->add_option("--N", o->N, "Coarse samples");
    sub->add_option("--M", o->M, "Fine nodes (even, > N)");
    sub->add_option("--probe-count", o->probes, "Uniform probes in [0, K]")->check(CLI::Range(2, 100000000))->capture_default_str();
    sub->add_option("--preset", o->preset, "table2 | table2-a | table2-b | smoke");
    add_output_flags(sub, o->out, o->force, "out/table-bench");
    sub->callback([o, sub, &inv] { cmd_table_bench(sub, *o, inv); });
  }
  for (const char* name : {"heat", "wave"}) {
    auto o = std::make_shared<LinearOpts>();
    const bool heat = std::string(name) == "heat";
    auto* sub = app.add_subcommand(name, heat ? "Semi-analytic 2D nonlocal heat equation"
                                               : "Semi-analytic 2D nonlocal wave equation");
    sub->add_option("--preset", o->preset, heat ? "heat-blob | heat-contour" : "fig4");
    sub->add_option("--beta", o->beta, "Single panel: kernel exponent");
    sub->add_option("--delta", o->delta, "Single panel: horizon");
    sub->add_option("--length", o->length, "Side of the square domain, centred at 0");
    sub->add_option("--points", o->points, "Grid points per axis");
    sub->add_option("--t-end", o->t_end, "Final time");
    sub->add_option("--frames", o->frames, "Snapshot count (t = 0 and t_end included when > 1)");
    if (heat) {
      sub->add_option("--initial", o->initial, "blob | star");
      sub->add_option("--level", o->level, "Contour level per frame, <= 0 disables")->capture_default_str();
    }
    sub->add_flag("--direct", o->direct, "Evaluate every lattice radius directly instead of through a table");
    add_output_flags(sub, o->out, o->force, std::string("out/") + name);
    if (heat) {
      sub->callback([o, sub, &inv] { cmd_heat(sub, *o, inv); });
    } else {
      sub->callback([o, sub, &inv] { cmd_wave(sub, *o, inv); });
    }
  }
  {
    auto o = std::make_shared<BrusselatorOpts>();
    auto* sub = app.add_subcommand("brusselator", "1D pseudo-spectral Brusselator on [0, 20]");
    sub->add_option("--preset", o->preset, "fig6-classical | fig6-b2.5 | fig6-b2 | fig6-b1.5");
    sub->add_option("--beta", o->beta, "Kernel exponent (3 is classical diffusion)");
    sub->add_option("--delta", o->delta, "Horizon");
    sub->add_option("--points", o->points, "Grid points")->capture_default_str();
    sub->add_option("--t-end", o->t_end, "Final time")->capture_default_str();
    sub->add_option("--cfl", o->cfl, "dt = cfl dx^2")->capture_default_str();
    sub->add_option("--frames", o->frames, "Approximate raster rows")->capture_default_str();
    sub->add_flag("--halving", o->halving, "Also run on half the points and compare final u");
    add_output_flags(sub, o->out, o->force, "out/brusselator");
    sub->callback([o, sub, &inv] { cmd_brusselator(sub, *o, inv); });
  }
  {
    auto o = std::make_shared<WaveCompareOpts>();
    auto* sub = app.add_subcommand("wave-compare", "1D wave: spectral and finite-difference solvers vs reference");
    sub->add_option("--preset", o->preset, "table3-row1 .. table3-row5");
    sub->add_option("--delta", o->delta, "Horizon of the reference and spectral runs");
    sub->add_option("--spectral-points", o->spectral_points, "Spectral grid")->capture_default_str();
    sub->add_option("--fd-points", o->fd_points, "FD grids (each dividing 8000)");
    sub->add_option("--fd-radius", o->fd_radius, "FD stencil radius, delta_fd = r dx; 0 keeps delta fixed")
        ->capture_default_str();
    sub->add_option("--rtol", o->rtol, "Integrator relative tolerance")->capture_default_str();
    sub->add_option("--atol", o->atol, "Integrator absolute tolerance")->capture_default_str();
    sub->add_flag("--skip-fixed", o->skip_fixed, "Skip fixed-horizon FD cases");
    add_output_flags(sub, o->out, o->force, "out/wave-compare");
    sub->callback([o, sub, &inv] { cmd_wave_compare(sub, *o, inv); });
  }
  {
    auto o = std::make_shared<FdSpectrumOpts>();
    auto* sub = app.add_subcommand("fd-spectrum", "Eigencurve of the finite-difference operator");
    sub->add_option("--preset", o->preset, "fig7-left | fig7-left-10000 | fig7-right");
    sub->add_option("--N", o->N, "Grid has 2N + 1 points on [0, L]");
    sub->add_option("--r", o->r, "Stencil radius")->capture_default_str();
    sub->add_option("--beta", o->beta, "Kernel exponent (< 3)")->capture_default_str();
    sub->add_option("--L", o->L, "Period")->capture_default_str();
    sub->add_option("--delta", o->delta, "Fixed horizon (default r dx)");
    sub->add_option("--kmax", o->kmax, "Largest wavenumber index (default N)");
    add_output_flags(sub, o->out, o->force, "out/fd-spectrum");
    sub->callback([o, sub, &inv] { cmd_fd_spectrum(sub, *o, inv); });
  }
  {
    auto o = std::make_shared<ValidateOpts>();
    auto* sub = app.add_subcommand("validate", "Run the acceptance suite; exit 0 iff every gated criterion passes");
    sub->add_option("--only", o->only, "Criterion ids to run (1-9, 10 = fixed-horizon FD study)")
        ->check(CLI::Range(1, ex::kOptionalFixedHorizon));
    sub->add_flag("--optional", o->optional, "Append the slow fixed-horizon FD study");
    sub->callback([o] { cmd_validate(*o); });
  }
}

}  // namespace nonlocal::cli
