#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bpst/geom.hpp"

namespace bpst {

enum class Color : std::uint8_t { Red, Blue };

inline Color opposite(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }
inline char color_char(Color c) { return c == Color::Red ? 'R' : 'B'; }

struct ColoredPoint {
  Point2 position;
  Color color = Color::Red;
  int index = 0;
};

/// Input coordinates carry at most six fractional digits. Internally a
/// coordinate is stored as micro-units times kSubunits so that derived grid
/// quantities (cell sides, sub-cell splits) stay integral and tight.
inline constexpr Coord kSubunits = 1 << 16;
inline constexpr Coord kMicro = 1'000'000;
inline constexpr Coord kMaxAbsMicro = kMicro * kMicro;  // |coordinate| <= 1e6

/// Parses a decimal string ("-12.5", "3", "0.000001") into internal units.
/// Throws Error(Parse) on malformed input, too many fractional digits, or
/// magnitude above 1e6.
Coord parse_coord(std::string_view text);

/// Exact decimal rendering of an internal coordinate, trailing zeros trimmed.
std::string format_coord(Coord internal);

/// Exact decimal rendering of a squared internal length in squared input
/// units (twelve fractional digits at most for point-to-point distances).
std::string format_length2(Wide internal2);

/// Squared internal length converted to squared input units (display only).
double length2_to_double(Wide internal2);
double length_to_double(Coord internal);

struct Instance {
  std::vector<ColoredPoint> points;

  int size() const { return static_cast<int>(points.size()); }
  const Point2& pos(int i) const { return points[static_cast<std::size_t>(i)].position; }
  Color color(int i) const { return points[static_cast<std::size_t>(i)].color; }

  int count(Color c) const;

  /// Builds an instance from positions/colors, assigning indices in order.
  static Instance from(std::span<const Point2> positions, std::span<const Color> colors);
};

/// Rejects empty instances, duplicate positions, and single-color instances
/// with more than one point.
void validate_instance(const Instance& inst);

}  // namespace bpst
