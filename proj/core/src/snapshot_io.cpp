#include "nonlocal/snapshot_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

constexpr std::array<char, 4> kMagic = {'N', 'L', 'F', 'D'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ostream& os, std::uint64_t v, int bytes) {
  char buf[8];
  for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(buf, bytes);
}

std::uint64_t get_u64(std::istream& is, int bytes) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), bytes)) throw FormatError("snapshot file is truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const TorusGrid& grid, double t,
                    std::span<const double> values) {
  if (values.size() != grid.total_points()) {
    throw ParameterError(ParameterError::Reason::bad_grid, "snapshot size does not match the grid");
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  put_u64(os, kVersion, 4);
  put_u64(os, static_cast<std::uint64_t>(grid.dimension()), 4);
  for (std::size_t n : grid.points()) put_u64(os, n, 8);
  put_u64(os, std::bit_cast<std::uint64_t>(t), 8);
  for (double v : values) put_u64(os, std::bit_cast<std::uint64_t>(v), 8);
  if (!os) throw FormatError("failed writing " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError(path.string() + " is not a field snapshot");
  }
  if (get_u64(is, 4) != kVersion) throw FormatError("unsupported snapshot version");
  const auto n = get_u64(is, 4);
  if (n < 1 || n > 3) throw FormatError("corrupt snapshot header");
  Snapshot s;
  std::size_t total = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto extent = get_u64(is, 8);
    if (extent == 0 || extent > (std::uint64_t{1} << 32)) throw FormatError("corrupt snapshot extent");
    s.shape.push_back(static_cast<std::size_t>(extent));
    total *= static_cast<std::size_t>(extent);
  }
  s.time = std::bit_cast<double>(get_u64(is, 8));
  s.values.resize(total);
  for (auto& v : s.values) v = std::bit_cast<double>(get_u64(is, 8));
  return s;
}

void write_slice_csv(const std::filesystem::path& path, const TorusGrid& grid,
                     std::span<const double> values) {
  if (values.size() != grid.total_points()) {
    throw ParameterError(ParameterError::Reason::bad_grid, "slice size does not match the grid");
  }
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  os << std::setprecision(17) << "x,u\n";
  std::size_t stride = grid.total_points() / grid.points()[0];
  for (std::size_t j = 0; j < grid.points()[0]; ++j) {
    os << grid.coordinate(0, j) << ',' << values[j * stride] << '\n';
  }
}

SnapshotSeries::SnapshotSeries(std::filesystem::path directory, std::string stem, TorusGrid grid)
    : dir_(std::move(directory)), stem_(std::move(stem)), grid_(std::move(grid)) {
  std::filesystem::create_directories(dir_);
}

void SnapshotSeries::add(double t, std::span<const double> values) {
  char name[64];
  std::snprintf(name, sizeof name, "_%05zu.nlfd", entries_.size());
  const std::string file = stem_ + name;
  write_snapshot(dir_ / file, grid_, t, values);
  entries_.emplace_back(t, file);
}

void SnapshotSeries::write_index() const {
  nlohmann::json index;
  index["format"] = "NLFD";
  index["dimension"] = grid_.dimension();
  index["points"] = grid_.points();
  index["lengths"] = grid_.lengths();
  index["origin"] = grid_.origin();
  index["snapshots"] = nlohmann::json::array();
  for (const auto& [t, file] : entries_) index["snapshots"].push_back({{"time", t}, {"file", file}});
  std::ofstream os(dir_ / "index.json");
  if (!os) throw FormatError("cannot write index in " + dir_.string());
  os << index.dump(2) << '\n';
}

}  // namespace nonlocal
