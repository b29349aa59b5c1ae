#include "seghull/point_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace seghull::io {

namespace {

constexpr std::string_view kMagic = "PTS1";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
    throw FormatError("line " + std::to_string(line) + ": invalid number '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw FormatError("line " + std::to_string(line) + ": non-finite coordinate");
  }
  return value;
}

void append_real(std::string& out, double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), end);
}

template <class T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

template <class T>
T get_le(std::string_view bytes, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  }
  return value;
}

}  // namespace

std::optional<PointFormat> format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return PointFormat::kCsv;
  if (ext == ".pts") return PointFormat::kBinary;
  return std::nullopt;
}

PointSet parse_csv(std::string_view text) {
  int dim = 0;
  std::vector<double> coords[3];
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line_no != 1) throw FormatError("line " + std::to_string(line_no) + ": header must be the first line");
      continue;
    }

    int columns = 0;
    std::array<double, 3> values{};
    for (;;) {
      const auto comma = line.find(',');
      if (columns == 3) throw FormatError("line " + std::to_string(line_no) + ": too many columns");
      values[static_cast<std::size_t>(columns++)] = parse_real(line.substr(0, comma), line_no);
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (columns < 2) throw FormatError("line " + std::to_string(line_no) + ": expected 2 or 3 columns");
    if (dim == 0) dim = columns;
    if (columns != dim) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                        " columns, found " + std::to_string(columns));
    }
    for (int c = 0; c < dim; ++c) coords[c].push_back(values[static_cast<std::size_t>(c)]);
  }
  if (dim == 3) return PointSet(std::move(coords[0]), std::move(coords[1]), std::move(coords[2]));
  return PointSet(std::move(coords[0]), std::move(coords[1]));
}

std::string to_csv(const PointSet& points) {
  std::string out;
  out.reserve(points.size() * 24 * static_cast<std::size_t>(points.dim()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    append_real(out, points.x()[i]);
    out.push_back(',');
    append_real(out, points.y()[i]);
    if (points.dim() == 3) {
      out.push_back(',');
      append_real(out, points.z()[i]);
    }
    out.push_back('\n');
  }
  return out;
}

PointSet parse_binary(std::string_view bytes) {
  constexpr std::size_t kHeader = 4 + 4 + 8;
  if (bytes.size() < kHeader || bytes.substr(0, 4) != kMagic) {
    throw FormatError("binary point file: missing PTS1 header");
  }
  const auto dim = get_le<std::uint32_t>(bytes, 4);
  const auto count = get_le<std::uint64_t>(bytes, 8);
  if (dim != 2 && dim != 3) throw FormatError("binary point file: dimension must be 2 or 3");
  const std::size_t payload = bytes.size() - kHeader;
  if (count > payload / (8 * dim) || payload != count * 8 * dim) {
    throw FormatError("binary point file: declared count " + std::to_string(count) +
                      " does not match payload of " + std::to_string(payload) + " bytes");
  }
  std::vector<double> coords[3];
  for (std::uint32_t c = 0; c < dim; ++c) coords[c].reserve(count);
  std::size_t offset = kHeader;
  for (std::uint64_t i = 0; i < count; ++i) {
    for (std::uint32_t c = 0; c < dim; ++c, offset += 8) {
      const double v = std::bit_cast<double>(get_le<std::uint64_t>(bytes, offset));
      if (!std::isfinite(v)) throw FormatError("binary point file: non-finite coordinate");
      coords[c].push_back(v);
    }
  }
  if (dim == 3) return PointSet(std::move(coords[0]), std::move(coords[1]), std::move(coords[2]));
  return PointSet(std::move(coords[0]), std::move(coords[1]));
}

std::string to_binary(const PointSet& points) {
  std::string out(kMagic);
  const auto dim = static_cast<std::uint32_t>(points.dim());
  put_le<std::uint32_t>(out, dim);
  put_le<std::uint64_t>(out, points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(points.x()[i]));
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(points.y()[i]));
    if (dim == 3) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(points.z()[i]));
  }
  return out;
}

LoadedPoints read_point_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.starts_with(kMagic)) return {parse_binary(bytes), PointFormat::kBinary};
  return {parse_csv(bytes), PointFormat::kCsv};
}

bool write_point_file(const std::filesystem::path& path, const PointSet& points,
                      PointFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  const std::string bytes = format == PointFormat::kBinary ? to_binary(points) : to_csv(points);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return static_cast<bool>(out.flush());
}

}  // namespace seghull::io
