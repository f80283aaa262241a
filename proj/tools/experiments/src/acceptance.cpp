#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/fd.hpp"
#include "nonlocal/hyp2f3.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/oracle.hpp"
#include "nonlocal/spectral.hpp"
#include "nonlocal_experiments/experiments.hpp"

namespace nonlocal::experiments {
namespace {

using std::numbers::pi;

std::string sci(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, x);
  return buf;
}

std::string fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void require(bool ok) { passed = passed && ok; }
};

// 1. beta = n + 2: the library path and the terminating series both give -r^2
void classical_limit(Outcome& o) {
  double worst_lib = 0.0, worst_series = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (double delta : {0.1, 1.0}) {
      const auto p = KernelParams::validate(n, n + 2.0, delta);
      const auto family = Hyp2F3Params::multiplier_family(p);
      for (int i = 0; i < 1000; ++i) {
        const double r = 1000.0 * i / 999.0;
        const double scale = std::max(1.0, r * r);
        worst_lib = std::max(worst_lib, std::abs(multiplier(p, r) + r * r) / scale);
        const double z = -0.25 * r * r * delta * delta;
        const double via_series = -r * r * eval_2f3(family, z).value;
        worst_series = std::max(worst_series, std::abs(via_series + r * r) / scale);
      }
    }
  }
  o.require(worst_lib <= 1e-13 && worst_series <= 1e-13);
  o.detail << "max |m+r^2|/max(1,r^2) = " << sci(worst_lib) << " (multiplier), " << sci(worst_series)
           << " (terminating 2F3), gate 1e-13";
}

// 2. hypergeometric vs quadrature at r = 318 pi
void table1_oracle(Outcome& o) {
  const double r = 318.0 * pi;
  double worst = 0.0;
  for (const auto& row : table1_rows()) {
    const auto p = KernelParams::validate(row.n, row.beta, row.delta);
    const double m = multiplier(p, r);
    const double q = multiplier_quadrature(p, r, 1e-13).value;
    worst = std::max(worst, std::abs(m - q) / std::abs(q));
  }
  o.require(worst <= 1e-12);
  o.detail << "9 rows, max rel err " << sci(worst) << " (gate 1e-12)";
}

// 3. interpolation tables
void table2_interp(Outcome& o) {
  int idx = 0;
  for (const auto& cfg : table2_configs()) {
    const auto res = run_table_bench(cfg);
    o.require(res.max_normalized_error <= 1e-8 && res.lookup_speedup >= 100.0);
    o.detail << (idx++ ? "; " : "") << "beta=" << cfg.params.beta() << ": err " << sci(res.max_normalized_error)
             << ", speedup " << fixed(res.lookup_speedup, 0) << "x, prep " << fixed(res.prep_seconds) << " s";
  }
  o.detail << " (gates 1e-8, 100x)";
}

// 4. |m + r^2| <= C r^4 on [0, 0.1]
void near_zero(Outcome& o) {
  // m is a rounded double near -r^2, so |m + r^2| carries up to half an ulp
  // of r^2 that C r^4 cannot see once r is small; one ulp is allowed for it
  double worst_ratio = 0.0, worst_excess = 0.0;
  bool ok = true;
  for (const auto& row : table1_rows()) {
    const auto p = KernelParams::validate(row.n, row.beta, row.delta);
    const double c = near_zero_constant(p, 0.1);
    for (int i = 1; i <= 1000; ++i) {
      const double r = 0.1 * i / 1000.0;
      const double r2 = r * r;
      const double ulp = std::nextafter(r2, INFINITY) - r2;
      const double dev = std::abs(multiplier(p, r) + r2);
      const double bound = c * r2 * r2;
      ok = ok && dev <= bound + ulp;
      worst_ratio = std::max(worst_ratio, dev / bound);
      worst_excess = std::max(worst_excess, (dev - bound) / ulp);
    }
  }
  o.require(ok);
  o.detail << "max |m+r^2|/(C r^4) = " << fixed(worst_ratio, 6) << ", largest excess over C r^4 = "
           << fixed(std::max(worst_excess, 0.0), 2) << " ulp(r^2) (allowed 1) over 9 rows";
}

// 5. large-r asymptotics, power and log branches
void asymptotics(Outcome& o) {
  const KernelParams cases[2] = {KernelParams::validate(1, 0.25, 0.1), KernelParams::validate(2, 2.0, 0.1)};
  for (const auto& p : cases) {
    double prev = INFINITY;
    bool monotone = true;
    o.detail << "n=" << p.dimension() << " beta=" << p.beta() << " gaps";
    for (double r : {1e3, 1e4, 1e5}) {
      const double gap = std::abs(multiplier(p, r) / multiplier_asymptotic(p, r) - 1.0);
      monotone = monotone && gap < prev;
      prev = gap;
      o.detail << " " << sci(gap, 2);
    }
    o.require(monotone && prev <= 1e-2);
    o.detail << (monotone ? " (decreasing); " : " (NOT decreasing); ");
  }
  o.detail << "gate 1e-2 at 1e5";
}

// 6. closed-form single modes and energy on the 400 x 400 wave grid
void semi_analytic(Outcome& o) {
  const WaveConfig wc;
  const TorusGrid g = TorusGrid::uniform(2, wc.length, wc.points, -0.5 * wc.length);
  const std::size_t ny = wc.points;
  const long ax = 3, ay = 5;
  const double nx_ = 2.0 * pi * ax / wc.length, ny_ = 2.0 * pi * ay / wc.length;
  std::vector<std::complex<double>> mode(g.total_points());
  mode[ax * ny + ay] = 0.5;
  mode[(wc.points - ax) * ny + (wc.points - ay)] = 0.5;
  const SpectralField single(g, mode);
  const SpectralField zero(g, std::vector<std::complex<double>>(g.total_points()));

  std::vector<double> base(g.total_points());
  for (std::size_t k = 0; k < base.size(); ++k) {
    const auto idx = g.unflatten(k);
    base[k] = std::cos(nx_ * g.coordinate(0, idx[0]) + ny_ * g.coordinate(1, idx[1]));
  }
  const auto gauss = SpectralField::from_function(g, [](std::span<const double> x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1]));
  });

  double worst_mode = 0.0, worst_energy = 0.0;
  bool nonpositive = true;
  for (const auto& panel : wc.panels) {
    const auto p = KernelParams::validate(2, panel.beta, panel.delta);
    const auto eigen = eigenvalue_lattice(p, g);
    for (double lam : eigen.values) nonpositive = nonpositive && lam <= 0.0;
    const double m = multiplier(p, std::hypot(nx_, ny_));
    const HeatSolution heat(eigen, single);
    const WaveSolution wave(eigen, single, zero);
    for (double t : {1.0, 5.0, 10.0}) {
      const auto hu = heat.at(t).to_values();
      const auto wu = wave.at(t).to_values();
      const double decay = std::exp(m * t), w = std::cos(std::sqrt(-m) * t);
      for (std::size_t k = 0; k < base.size(); ++k) {
        worst_mode = std::max(worst_mode, std::abs(hu[k] - decay * base[k]) / decay);
        worst_mode = std::max(worst_mode, std::abs(wu[k] - w * base[k]));
      }
    }
    const WaveSolution blob(eigen, gauss, zero);
    const double e0 = blob.energy(0.0);
    for (std::size_t i = 1; i < wc.energy_samples; ++i) {
      const double t = wc.t_end * static_cast<double>(i) / static_cast<double>(wc.energy_samples - 1);
      worst_energy = std::max(worst_energy, std::abs(blob.energy(t) - e0) / e0);
    }
  }
  o.require(worst_mode <= 1e-12 && worst_energy <= 1e-10 && nonpositive);
  o.detail << wc.panels.size() << " panels on " << wc.points << "x" << wc.points << ": single-mode err "
           << sci(worst_mode) << " (gate 1e-12), energy drift " << sci(worst_energy) << " (gate 1e-10)"
           << (nonpositive ? "" : ", POSITIVE eigenvalue found");
}

// 7. Brusselator fixed point, step count and grid halving
void brusselator(Outcome& o) {
  {
    const auto cfg = brusselator_config(2.5, 1.0, 400);
    const std::vector<double> u0(400, cfg.a), v0(400, cfg.b / cfg.a);
    const auto res = BrusselatorModel(cfg).run(u0, v0, 100);
    double dev = 0.0;
    for (std::size_t f = 0; f < res.times.size(); ++f) {
      for (std::size_t i = 0; i < 400; ++i) {
        dev = std::max(dev, std::abs(res.u_frames[f][i] - cfg.a));
        dev = std::max(dev, std::abs(res.v_frames[f][i] - cfg.b / cfg.a));
      }
    }
    o.require(dev <= 1e-10);
    o.detail << "fixed point dev " << sci(dev, 1) << " (gate 1e-10); ";
  }
  for (double beta : {3.0, 2.5}) {
    const auto h = brusselator_halving(beta, 1.0, 1600);
    if (beta == 3.0) {
      const bool steps_ok = h.fine_steps + 1 >= 134738 && h.fine_steps <= 134739;
      o.require(steps_ok);
      o.detail << "N=1600 steps " << h.fine_steps << " (134738+-1); ";
    }
    o.require(h.relative() <= 1e-3);
    o.detail << "beta=" << beta << " halving " << sci(h.relative(), 2) << " of range (" << fixed(h.fine_seconds, 1)
             << " s at N=1600); ";
  }
  o.detail << "gate 1e-3";
}

// 8. Table 3
void table3(Outcome& o) {
  const WaveCompareConfig cfg;
  const auto& rows = table3_rows();
  std::ostringstream fd_part;
  for (const auto& row : rows) {
    const bool fixed_row = row.delta == 5.0;
    const auto res = run_wave_compare(row, cfg, [&](const FdCase&) { return !fixed_row; });
    for (const auto& e : res.entries) {
      if (e.method == "spectral") {
        const bool gated = row.delta == 0.3 || row.delta == 5.0;
        if (gated) o.require(e.error <= 1e-5);
        o.detail << "spectral d=" << row.delta << " " << sci(e.error, 2) << (gated ? "" : "*") << " ("
                 << fixed(e.seconds, 1) << " s, ref " << fixed(res.reference_seconds, 1) << " s); ";
      } else {
        const double ratio = e.error / e.published_error;
        o.require(ratio >= 0.5 && ratio <= 2.0);
        fd_part << "fd N=" << e.points << " " << sci(e.error, 2) << " x" << fixed(ratio, 3) << " (" << fixed(e.seconds, 1)
                << " s); ";
      }
    }
  }
  o.detail << fd_part.str() << "gates: spectral 1e-5 (rows 0.3, 5; * informational), fd ratio in [0.5, 2]";
}

// 9. FD spectrum identities
void fd_identities(Outcome& o) {
  const double beta = 1.0 / 3.0, L = 1.0;
  double worst = 0.0;
  for (std::size_t N : {100, 1000, 10000}) {
    const std::size_t M = 2 * N + 1;
    const double dx = L / static_cast<double>(M);
    const auto s = FDStencil::build(KernelParams::validate(1, beta, 3.0 * dx), 3, dx);
    const StencilOperator op(s, M);
    std::vector<double> u(M), out(M);
    for (std::size_t k = 0; k <= N; ++k) {
      for (std::size_t i = 0; i < M; ++i) {
        // exact argument reduction: (k i) mod M in integers
        u[i] = std::cos(2.0 * pi * static_cast<double>((k * i) % M) / static_cast<double>(M));
      }
      op.apply(u, out);
      const double lam = fd_eigenvalue(s, L, static_cast<double>(k));
      double r = 0.0;
      for (std::size_t i = 0; i < M; ++i) r = std::max(r, std::abs(out[i] - lam * u[i]));
      worst = std::max(worst, r / s.norm());
    }
  }
  const std::size_t small = 201, large = 20001;
  const double dxs = 20.0 / small, dxl = 20.0 / large;
  const auto ss = FDStencil::build(KernelParams::validate(1, beta, 3.0 * dxs), 3, dxs);
  const auto sl = FDStencil::build(KernelParams::validate(1, beta, 3.0 * dxl), 3, dxl);
  double shape = 0.0, scale = 0.0;
  for (std::size_t k = 0; k <= small / 2; ++k) {
    const double a = fd_eigenvalue(ss, 20.0, static_cast<double>(k)) * dxs * dxs;
    const double b = fd_eigenvalue(sl, 20.0, static_cast<double>(k) * large / small) * dxl * dxl;
    shape = std::max(shape, std::abs(a - b));
    scale = std::max(scale, std::abs(a));
  }
  o.require(worst <= 1e-12 && shape <= 1e-10 * scale);
  o.detail << "cosine formula vs stencil, all k, N<=10000: " << sci(worst) << " of |A| (gate 1e-12); "
           << "N=100 vs N=10000 normalized curves: " << sci(shape / scale) << " (gate 1e-10)";
}

// 10. fixed-horizon FD rows, informational
void fixed_horizon(Outcome& o) {
  const WaveCompareConfig cfg;
  const auto& row = table3_row("table3-row5");
  const auto res = run_wave_compare(row, cfg);
  for (const auto& e : res.entries) {
    if (e.method != "fd") continue;
    o.detail << "N=" << e.points << " r=" << e.radius << " (published r=" << e.published_radius << "): err "
             << sci(e.error, 2) << " vs published " << sci(e.published_error, 3) << ", " << fixed(e.seconds, 1)
             << " s; ";
  }
  o.detail << "reference " << fixed(res.reference_seconds, 1) << " s";
}

}  // namespace

CriterionResult run_criterion(int id) {
  static const char* titles[] = {"",
                                 "classical-limit exactness",
                                 "Table 1 oracle agreement",
                                 "Table 2 interpolation",
                                 "near-zero expansion",
                                 "asymptotics",
                                 "semi-analytic solvers",
                                 "Brusselator",
                                 "Table 3 reproduction",
                                 "FD spectrum identities",
                                 "fixed-horizon FD rows (informational)"};
  if (id < 1 || id > kOptionalFixedHorizon) {
    throw ParameterError(ParameterError::Reason::bad_argument, "criterion id out of range: " + std::to_string(id));
  }
  CriterionResult out;
  out.id = id;
  out.title = titles[id];
  out.gated = id != kOptionalFixedHorizon;
  Outcome o;
  Stopwatch sw;
  try {
    switch (id) {
      case 1: classical_limit(o); break;
      case 2: table1_oracle(o); break;
      case 3: table2_interp(o); break;
      case 4: near_zero(o); break;
      case 5: asymptotics(o); break;
      case 6: semi_analytic(o); break;
      case 7: brusselator(o); break;
      case 8: table3(o); break;
      case 9: fd_identities(o); break;
      default: fixed_horizon(o); break;
    }
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << "threw: " << e.what();
  }
  out.seconds = sw.seconds();
  out.passed = o.passed;
  out.detail = o.detail.str();
  return out;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const std::function<void(const CriterionResult&)>& report) {
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id));
    if (report) report(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.gated ? (r.passed ? "[PASS] " : "[FAIL] ") : "[INFO] ") << r.id << ". " << r.title << ": " << r.detail
     << " [" << fixed(r.seconds) << " s]";
  return os.str();
}

}  // namespace nonlocal::experiments
