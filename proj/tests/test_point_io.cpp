#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "doctest.h"
#include "seghull/datagen.hpp"
#include "seghull/point_io.hpp"

using namespace seghull;
using io::FormatError;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "seghull_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string binary_header(std::uint32_t dim, std::uint64_t count) {
  std::string out = "PTS1";
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((dim >> (8 * i)) & 0xff));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((count >> (8 * i)) & 0xff));
  return out;
}

std::string le_double(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  std::string out;
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  return out;
}

PointSet awkward_values(std::mt19937_64& rng, int dim, std::size_t n) {
  // raw 64-bit patterns cover subnormals, huge exponents and signed zeros
  PointSet p(dim);
  auto draw = [&] {
    for (;;) {
      std::uint64_t bits = rng();
      double v;
      std::memcpy(&v, &bits, sizeof v);
      if (std::isfinite(v)) return v;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (dim == 2) p.push_back(Vec2{draw(), draw()});
    else p.push_back(Vec3{draw(), draw(), draw()});
  }
  if (dim == 2) p.push_back(Vec2{-0.0, std::numeric_limits<double>::denorm_min()});
  else p.push_back(Vec3{-0.0, std::numeric_limits<double>::max(), 0.1});
  return p;
}

bool bit_equal(const PointSet& a, const PointSet& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  auto same = [](const std::vector<double>& u, const std::vector<double>& v) {
    return u.size() == v.size() && std::memcmp(u.data(), v.data(), u.size() * sizeof(double)) == 0;
  };
  return same(a.x(), b.x()) && same(a.y(), b.y()) && same(a.z(), b.z());
}

}  // namespace

TEST_SUITE("point_io") {

TEST_CASE("csv parsing") {
  auto p = io::parse_csv("# x,y\n0,0\n1,0.5\n\n-2e3,4\n");
  CHECK(p.dim() == 2);
  CHECK(p == PointSet({0, 1, -2000}, {0, 0.5, 4}));

  p = io::parse_csv("1,2,3\r\n4,5,6\r\n");
  CHECK(p == PointSet({1, 4}, {2, 5}, {3, 6}));

  p = io::parse_csv(" 1 , 2 \n");
  CHECK(p == PointSet({1}, {2}));

  CHECK(io::parse_csv("").empty());
  CHECK(io::parse_csv("# just a header\n").empty());
}

TEST_CASE("csv errors") {
  CHECK_THROWS_AS(io::parse_csv("1,2\n1,2,3\n"), FormatError);
  CHECK_THROWS_AS(io::parse_csv("1\n"), FormatError);
  CHECK_THROWS_AS(io::parse_csv("1,2,3,4\n"), FormatError);
  CHECK_THROWS_AS(io::parse_csv("1,abc\n"), FormatError);
  CHECK_THROWS_AS(io::parse_csv("1,2x\n"), FormatError);
  CHECK_THROWS_AS(io::parse_csv("1,inf\n"), FormatError);
  CHECK_THROWS_AS(io::parse_csv("nan,1\n"), FormatError);
  CHECK_THROWS_AS(io::parse_csv("1,2\n# late header\n"), FormatError);
}

TEST_CASE("binary parsing") {
  const std::string bytes = binary_header(2, 2) + le_double(1) + le_double(2) + le_double(3) + le_double(4);
  CHECK(io::parse_binary(bytes) == PointSet({1, 3}, {2, 4}));
  CHECK(io::parse_binary(binary_header(3, 0)).dim() == 3);

  CHECK_THROWS_AS(io::parse_binary("PTS"), FormatError);
  CHECK_THROWS_AS(io::parse_binary(binary_header(2, 3) + le_double(1)), FormatError);
  CHECK_THROWS_AS(io::parse_binary(bytes + "x"), FormatError);
  CHECK_THROWS_AS(io::parse_binary(binary_header(4, 0)), FormatError);
  std::string bad = bytes;
  bad[0] = 'Q';
  CHECK_THROWS_AS(io::parse_binary(bad), FormatError);
  CHECK_THROWS_AS(io::parse_binary(binary_header(2, 1) + le_double(1) + le_double(NAN)), FormatError);
  CHECK_THROWS_AS(io::parse_binary(binary_header(2, ~0ULL)), FormatError);
}

TEST_CASE("round trips are bit exact") {
  std::mt19937_64 rng(61);
  for (int dim : {2, 3}) {
    for (int c = 0; c < 20; ++c) {
      const auto p = awkward_values(rng, dim, 1 + rng() % 50);
      REQUIRE(bit_equal(io::parse_csv(io::to_csv(p)), p));
      REQUIRE(bit_equal(io::parse_binary(io::to_binary(p)), p));
    }
  }
  const auto g = generate({DistributionKind::kNearSphere, 300, 1});
  CHECK(bit_equal(io::parse_csv(io::to_csv(g)), g));
}

TEST_CASE("files") {
  CHECK(io::format_from_path("a.csv") == io::PointFormat::kCsv);
  CHECK(io::format_from_path("dir/b.pts") == io::PointFormat::kBinary);
  CHECK_FALSE(io::format_from_path("c.txt").has_value());

  const auto pts = generate({DistributionKind::kUniformDisk, 40, 2});
  const auto csv = scratch("f.csv"), bin = scratch("f.pts");
  REQUIRE(io::write_point_file(csv, pts, io::PointFormat::kCsv));
  REQUIRE(io::write_point_file(bin, pts, io::PointFormat::kBinary));
  auto a = io::read_point_file(csv);
  auto b = io::read_point_file(bin);
  CHECK(a.format == io::PointFormat::kCsv);
  CHECK(b.format == io::PointFormat::kBinary);
  CHECK(bit_equal(a.points, pts));
  CHECK(bit_equal(b.points, pts));

  CHECK_THROWS_AS(io::read_point_file(scratch("missing.csv")), FormatError);
  CHECK_FALSE(io::write_point_file(scratch("no/such/dir/x.csv"), pts, io::PointFormat::kCsv));
}

}  // TEST_SUITE
