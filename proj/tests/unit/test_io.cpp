#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "nonlocal/errors.hpp"
#include "nonlocal/snapshot_io.hpp"
#include "test_util.hpp"

using namespace nonlocal;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("nonlocal_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("snapshot_io") {

TEST_CASE("NLFD round trip") {
  const auto dir = scratch_dir("roundtrip");
  const TorusGrid g({2.0, 3.0}, {5, 7});
  std::vector<double> v(g.total_points());
  for (auto& x : v) x = test_util::uniform(-1e3, 1e3);
  write_snapshot(dir / "a.nlfd", g, 1.25, v);
  const auto s = read_snapshot(dir / "a.nlfd");
  CHECK(s.shape == std::vector<std::size_t>{5, 7});
  CHECK(s.time == 1.25);
  CHECK(s.values == v);
  CHECK(fs::file_size(dir / "a.nlfd") == 4 + 4 + 4 + 2 * 8 + 8 + v.size() * 8);

  std::ifstream is(dir / "a.nlfd", std::ios::binary);
  char magic[4];
  is.read(magic, 4);
  CHECK(std::string(magic, 4) == "NLFD");
  CHECK_THROWS_AS(write_snapshot(dir / "b.nlfd", g, 0.0, std::vector<double>(3)), ParameterError);
  fs::remove_all(dir);
}

TEST_CASE("damaged files raise FormatError") {
  const auto dir = scratch_dir("bad");
  const TorusGrid g({1.0}, {8});
  write_snapshot(dir / "ok.nlfd", g, 0.0, std::vector<double>(8, 1.0));
  fs::resize_file(dir / "ok.nlfd", fs::file_size(dir / "ok.nlfd") - 8);
  CHECK_THROWS_AS(read_snapshot(dir / "ok.nlfd"), FormatError);
  {
    std::ofstream os(dir / "junk.nlfd", std::ios::binary);
    os << "XXXXjunkjunkjunk";
  }
  CHECK_THROWS_AS(read_snapshot(dir / "junk.nlfd"), FormatError);
  CHECK_THROWS_AS(read_snapshot(dir / "missing.nlfd"), FormatError);
  fs::remove_all(dir);
}

TEST_CASE("series index and CSV slice") {
  const auto dir = scratch_dir("series");
  const TorusGrid g({10.0}, {4}, {-5.0});
  SnapshotSeries series(dir, "u", g);
  series.add(0.0, std::vector<double>{1, 2, 3, 4});
  series.add(0.5, std::vector<double>{5, 6, 7, 8});
  series.write_index();
  CHECK(series.size() == 2);

  std::ifstream is(dir / "index.json");
  const auto j = nlohmann::json::parse(is);
  REQUIRE(j["snapshots"].size() == 2);
  CHECK(j["snapshots"][1]["time"].get<double>() == 0.5);
  const auto file = j["snapshots"][1]["file"].get<std::string>();
  CHECK(file == "u_00001.nlfd");
  CHECK(read_snapshot(dir / file).values == std::vector<double>{5, 6, 7, 8});

  write_slice_csv(dir / "slice.csv", g, std::vector<double>{0.1, 0.2, 0.3, 0.4});
  std::ifstream cs(dir / "slice.csv");
  std::stringstream buf;
  buf << cs.rdbuf();
  CHECK(buf.str() == "x,u\n-5,0.10000000000000001\n-2.5,0.20000000000000001\n0,0.29999999999999999\n"
                     "2.5,0.40000000000000002\n");
  fs::remove_all(dir);
}

}  // TEST_SUITE
