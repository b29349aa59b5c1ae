#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "seghull/geometry.hpp"

namespace seghull::io {

// Point files come in two families:
//   CSV:    one point per line, "x,y" or "x,y,z"; an optional first line that
//           starts with '#' is ignored.
//   binary: "PTS1", dim (u32 LE), count (u64 LE), then count * dim IEEE-754
//           doubles (LE), point by point.
enum class PointFormat { kCsv, kBinary };

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// .csv -> kCsv, .pts -> kBinary, anything else -> nullopt.
std::optional<PointFormat> format_from_path(const std::filesystem::path& path);

PointSet parse_csv(std::string_view text);
std::string to_csv(const PointSet& points);

PointSet parse_binary(std::string_view bytes);
std::string to_binary(const PointSet& points);

struct LoadedPoints {
  PointSet points;
  PointFormat format = PointFormat::kCsv;
};

// Sniffs the magic bytes to pick the family. Throws FormatError for unreadable
// or malformed files.
LoadedPoints read_point_file(const std::filesystem::path& path);

// Returns false when the file cannot be written.
bool write_point_file(const std::filesystem::path& path, const PointSet& points,
                      PointFormat format);

}  // namespace seghull::io
