#include "nonlocal/multiplier_table.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/fft.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/special_functions.hpp"

namespace nonlocal {
namespace {

constexpr std::array<char, 4> kMagic = {'N', 'L', 'M', 'T'};
constexpr std::uint32_t kVersion = 1;
constexpr double kTailWarning = 1e-12;

template <typename T>
void put_le(std::ostream& os, T value) {
  std::uint64_t bits = 0;
  if constexpr (std::is_floating_point_v<T>) {
    bits = std::bit_cast<std::uint64_t>(static_cast<double>(value));
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(bytes, sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw FormatError("table file is truncated");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  if constexpr (std::is_floating_point_v<T>) {
    return std::bit_cast<double>(bits);
  } else {
    return static_cast<T>(bits);
  }
}

std::vector<double> ascending_nodes(double K, std::size_t M) {
  std::vector<double> x(M / 2 + 1);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = chebyshev_node(K, M, i);
  return x;
}

}  // namespace

double chebyshev_node(double K, std::size_t M, std::size_t i) {
  const double s = std::sin(kPi * static_cast<double>(i) / static_cast<double>(M));
  return i == M / 2 ? K : K * s * s;
}

MultiplierTable MultiplierTable::build(const KernelParams& p, double K, std::size_t N, std::size_t M) {
  using Reason = ParameterError::Reason;
  if (!std::isfinite(K) || K <= 0.0) throw ParameterError(Reason::bad_argument, "table cutoff K must be positive");
  if (N < 4) throw ParameterError(Reason::bad_argument, "table needs N >= 4 coarse samples");
  if (M % 2 != 0 || M <= N) throw ParameterError(Reason::bad_argument, "table needs an even M > N");

  MultiplierTable table(p, K, N, M);

  // m(theta) is even in theta, so only j = 0..N/2 need evaluating.
  // r(theta_j) = K cos^2(pi j / N) = K sin^2(pi (N - 2j) / (2N)).
  const std::size_t half = N / 2;
  std::vector<double> samples(half + 1);
  parallel_for(half + 1, [&](std::size_t j) {
    const double s = std::sin(kPi * static_cast<double>(N - 2 * j) / (2.0 * static_cast<double>(N)));
    const double r = j == 0 ? K : K * s * s;
    samples[j] = multiplier(p, r);
  });

  std::vector<std::complex<double>> coarse(N);
  for (std::size_t j = 0; j < N; ++j) coarse[j] = samples[j <= half ? j : N - j];
  FftPlan(std::vector<std::size_t>{N}).forward(coarse);
  for (auto& c : coarse) c /= static_cast<double>(N);

  // Spectral decay diagnostics.
  double peak = 0.0;
  for (std::size_t k = 0; k <= half; ++k) peak = std::max(peak, std::abs(coarse[k]));
  table.decay_.resize(half + 1);
  for (std::size_t k = 0; k <= half; ++k) table.decay_[k] = peak > 0.0 ? std::abs(coarse[k]) / peak : 0.0;
  const std::size_t tail_start = half - half / 10;
  for (std::size_t k = tail_start; k <= half; ++k) {
    table.tail_ratio_ = std::max(table.tail_ratio_, table.decay_[k]);
  }
  if (table.tail_ratio_ > kTailWarning) {
    std::ostringstream os;
    os << "Fourier coefficients near |k| = N/2 are " << table.tail_ratio_
       << " of the largest; N = " << N << " may be too small for K = " << K;
    table.warnings_.push_back(os.str());
  }

  // Zero-pad into the highest modes; an even-N Nyquist coefficient is split
  // between +N/2 and -N/2.
  std::vector<std::complex<double>> fine(M);
  const bool even = N % 2 == 0;
  const std::size_t resolved = even ? half - 1 : half;  // modes +-k kept whole
  for (std::size_t k = 0; k <= resolved; ++k) fine[k] = coarse[k];
  for (std::size_t k = 1; k <= resolved; ++k) fine[M - k] = coarse[N - k];
  if (even) {
    fine[half] += 0.5 * coarse[half];
    fine[M - half] += 0.5 * coarse[half];
  }
  FftPlan(std::vector<std::size_t>{M}).inverse(fine);

  // Fine slot j is the node r = K sin^2(pi (M/2 - j) / M); store ascending.
  std::vector<double> values(M / 2 + 1);
  for (std::size_t i = 0; i <= M / 2; ++i) values[i] = fine[M / 2 - i].real();
  values[0] = 0.0;  // m(0) = 0 exactly
  table.spline_ = CubicSpline(ascending_nodes(K, M), std::move(values));
  return table;
}

void MultiplierTable::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kVersion);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(params_.dimension()));
  put_le<double>(os, params_.beta());
  put_le<double>(os, params_.delta());
  put_le<double>(os, K_);
  put_le<std::uint64_t>(os, M_);
  for (double v : spline_.values()) put_le<double>(os, v);
  for (double v : spline_.second_derivatives()) put_le<double>(os, v);
  if (!os) throw FormatError("failed writing " + path.string());
}

MultiplierTable MultiplierTable::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError(path.string() + " is not a multiplier table");
  }
  const auto version = get_le<std::uint32_t>(is);
  if (version != kVersion) throw FormatError("unsupported table version " + std::to_string(version));
  const auto n = get_le<std::uint32_t>(is);
  const double beta = get_le<double>(is);
  const double delta = get_le<double>(is);
  const double K = get_le<double>(is);
  const auto M = get_le<std::uint64_t>(is);
  if (M < 2 || M % 2 != 0 || M > (std::uint64_t{1} << 40) || !(K > 0.0)) {
    throw FormatError("corrupt table header");
  }
  const KernelParams p = KernelParams::validate(static_cast<int>(n), beta, delta);
  const std::size_t count = static_cast<std::size_t>(M) / 2 + 1;
  std::vector<double> values(count), second(count);
  for (auto& v : values) v = get_le<double>(is);
  for (auto& v : second) v = get_le<double>(is);

  MultiplierTable table(p, K, 0, static_cast<std::size_t>(M));
  table.spline_ = CubicSpline::from_parts(ascending_nodes(K, M), std::move(values), std::move(second));
  return table;
}

void MultiplierTable::write_csv(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << "r,m\n";
  const auto& x = spline_.nodes();
  const auto& y = spline_.values();
  for (std::size_t i = 0; i < x.size(); ++i) os << x[i] << ',' << y[i] << '\n';
  os.precision(old_precision);
}

}  // namespace nonlocal
