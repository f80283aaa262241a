#include "nonlocal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "nonlocal/errors.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {
namespace {

// Gauss-Kronrod 7/15 abscissae and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

// The oscillatory factor g(x) minus one, per dimension, and its Taylor
// coefficients g(x) - 1 = c2 x^2 + c4 x^4 + O(x^6).
struct Radial {
  int n;
  double c2;
  double c4;

  double operator()(double x) const {
    switch (n) {
      case 1: {
        const double h = std::sin(0.5 * x);
        return -2.0 * h * h;
      }
      case 2:
        return bessel_j0_minus_one(x);
      default: {
        if (std::abs(x) < 1.0) {
          // sin(x)/x - 1 = sum_{k>=1} (-1)^k x^{2k} / (2k+1)!
          const double x2 = x * x;
          double term = 1.0;
          double sum = 0.0;
          for (int k = 1; k < 12; ++k) {
            term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
          }
          return sum;
        }
        return std::sin(x) / x - 1.0;
      }
    }
  }
};

Radial radial_for(int n) {
  switch (n) {
    case 1: return {1, -0.5, 1.0 / 24.0};
    case 2: return {2, -0.25, 1.0 / 64.0};
    default: return {3, -1.0 / 6.0, 1.0 / 120.0};
  }
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F>
Panel gauss_kronrod(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  double fv[7][2];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[j][0] = f1;
    fv[j][1] = f2;
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv[j][0] - mean) + std::abs(fv[j][1] - mean));

  const double result = kronrod * half;
  const double resabs = abs_sum * std::abs(half);
  const double resasc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  err = std::max(err, 4.0 * kEps * resabs);
  return {a, b, result, err};
}

}  // namespace

QuadratureResult multiplier_quadrature(const KernelParams& p, double r, const QuadratureOptions& opts) {
  using Reason = ParameterError::Reason;
  if (!p.integrable()) {
    throw ParameterError(Reason::not_integrable, "integral form of m exists only for beta < n + 2");
  }
  if (!std::isfinite(r) || r < 0.0) throw ParameterError(Reason::bad_argument, "oracle needs r >= 0");
  if (!(opts.tol >= 1e-14)) throw ParameterError(Reason::bad_argument, "oracle tolerance must be >= 1e-14");
  if (opts.panels_per_period == 0) throw ParameterError(Reason::bad_argument, "panels_per_period must be >= 1");

  QuadratureResult out;
  if (r == 0.0) return out;

  const int n = p.dimension();
  const double delta = p.delta();
  const double power = static_cast<double>(n) - 1.0 - p.beta();  // s^{n-1-beta}
  const Radial g = radial_for(n);
  std::size_t evaluations = 0;
  auto integrand = [&](double s) {
    ++evaluations;
    return g(r * s) * std::pow(s, power);
  };

  // [0, s0] from the expansion c2 (rs)^2 + c4 (rs)^4; the next term is
  // O((r s0)^4) = O(1e-16) relative.
  const double s0 = std::min(1e-4 / r, delta);
  const double e1 = power + 3.0;  // = n + 2 - beta > 0
  const double head = g.c2 * r * r * std::pow(s0, e1) / e1 +
                      g.c4 * std::pow(r, 4) * std::pow(s0, e1 + 2.0) / (e1 + 2.0);

  // Break points: geometric toward 0, then every pi / (r * panels_per_period).
  std::vector<double> cuts{s0};
  const double first = std::min(delta, kPi / r);
  for (double s = 2.0 * s0; s < first; s *= 2.0) cuts.push_back(s);
  const double step = kPi / (r * static_cast<double>(opts.panels_per_period));
  for (double k = 1.0;; k += 1.0) {
    const double s = k * step;
    if (s >= delta * (1.0 - 1e-15)) break;
    if (s > cuts.back()) cuts.push_back(s);
  }
  if (cuts.back() < delta) cuts.push_back(delta);
  if (cuts.size() - 1 > opts.max_panels) {
    std::ostringstream os;
    os << "oracle quadrature needs " << cuts.size() - 1 << " initial panels at r = " << r
       << ", above max_panels = " << opts.max_panels;
    throw ToleranceError(os.str());
  }

  std::priority_queue<Panel> queue;
  double total = head;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel panel = gauss_kronrod(integrand, cuts[i], cuts[i + 1]);
    total += panel.value;
    total_err += panel.error;
    queue.push(panel);
  }

  while (total_err > opts.tol * std::abs(total)) {
    if (queue.size() >= opts.max_panels) {
      std::ostringstream os;
      os << "oracle quadrature stalled at relative error " << total_err / std::abs(total) << " (r = " << r
         << ")";
      throw ToleranceError(os.str());
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod(integrand, worst.a, mid);
    const Panel right = gauss_kronrod(integrand, mid, worst.b);
    const double improvement = worst.error - left.error - right.error;
    total += left.value + right.value - worst.value;
    total_err -= worst.error;
    total_err += left.error + right.error;
    queue.push(left);
    queue.push(right);
    if (mid <= worst.a || mid >= worst.b || (improvement <= 0.0 && worst.b - worst.a < 1e-12 * delta)) {
      throw ToleranceError("oracle quadrature cannot subdivide further");
    }
  }

  // Recompute the sums from the final panel set to shed running-sum drift.
  total = head;
  total_err = 0.0;
  for (; !queue.empty(); queue.pop()) {
    total += queue.top().value;
    total_err += queue.top().error;
  }
  total_err += 4.0 * kEps * std::abs(total);

  const double shell = n == 1 ? 2.0 : (n == 2 ? 2.0 * kPi : 4.0 * kPi);
  const double scale = scaling_constant(p) * shell;
  out.value = scale * total;
  out.est_error = std::abs(scale) * total_err;
  out.evaluations = evaluations;
  return out;
}

}  // namespace nonlocal
