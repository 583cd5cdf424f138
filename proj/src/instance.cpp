#include "bpst/instance.hpp"

#include <algorithm>
#include <cctype>

#include "bpst/error.hpp"

namespace bpst {

Coord parse_coord(std::string_view text) {
  const std::string original(text);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty coordinate");
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view int_part = text.substr(0, dot);
  const std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw Error(ErrorKind::Parse, "malformed coordinate '" + original + "'");
  if (dot != std::string_view::npos && frac_part.empty() && int_part.empty()) {
    throw Error(ErrorKind::Parse, "malformed coordinate '" + original + "'");
  }
  auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  if (!all_digits(int_part) || !all_digits(frac_part)) {
    throw Error(ErrorKind::Parse, "malformed coordinate '" + original + "'");
  }
  std::string_view frac = frac_part;
  while (frac.size() > 6 && frac.back() == '0') frac.remove_suffix(1);
  if (frac.size() > 6) {
    throw Error(ErrorKind::Parse, "coordinate '" + original + "' has more than 6 fractional digits");
  }
  std::string_view whole = int_part;
  while (whole.size() > 1 && whole.front() == '0') whole.remove_prefix(1);
  if (whole.size() > 7) throw Error(ErrorKind::Parse, "coordinate '" + original + "' exceeds 1e6 in magnitude");

  Coord micro = 0;
  for (char c : whole) micro = micro * 10 + (c - '0');
  for (std::size_t k = 0; k < 6; ++k) micro = micro * 10 + (k < frac.size() ? frac[k] - '0' : 0);
  if (micro > kMaxAbsMicro) throw Error(ErrorKind::Parse, "coordinate '" + original + "' exceeds 1e6 in magnitude");
  return (negative ? -micro : micro) * kSubunits;
}

namespace {

std::string format_scaled(Wide value, int frac_digits) {
  const bool negative = value < 0;
  if (negative) value = -value;
  std::string digits;
  do {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  } while (value != 0);
  while (static_cast<int>(digits.size()) <= frac_digits) digits.push_back('0');
  std::reverse(digits.begin(), digits.end());
  std::string whole = digits.substr(0, digits.size() - static_cast<std::size_t>(frac_digits));
  std::string frac = digits.substr(digits.size() - static_cast<std::size_t>(frac_digits));
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = negative && (whole != "0" || !frac.empty()) ? "-" : "";
  out += whole;
  if (!frac.empty()) out += "." + frac;
  return out;
}

constexpr Wide pow_wide(Wide base, int exp) {
  Wide r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

std::string format_coord(Coord internal) {
  // internal / (1e6 * 2^16) == internal * 5^16 / 1e22 exactly.
  if (internal % kSubunits == 0) return format_scaled(internal / kSubunits, 6);
  return format_scaled(static_cast<Wide>(internal) * pow_wide(5, 16), 22);
}

std::string format_length2(Wide internal2) {
  constexpr Wide kSub2 = static_cast<Wide>(kSubunits) * kSubunits;
  if (internal2 % kSub2 == 0) return format_scaled(internal2 / kSub2, 12);
  // Not a point-to-point quantity; fall back to a rounded rendering.
  const Wide micro2_scaled = internal2 * 1000000 / kSub2;
  return format_scaled(micro2_scaled, 18);
}

double length2_to_double(Wide internal2) {
  const double s = static_cast<double>(kSubunits) * static_cast<double>(kMicro);
  return static_cast<double>(internal2) / (s * s);
}

double length_to_double(Coord internal) {
  return static_cast<double>(internal) / (static_cast<double>(kSubunits) * static_cast<double>(kMicro));
}

int Instance::count(Color c) const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [c](const ColoredPoint& p) { return p.color == c; }));
}

Instance Instance::from(std::span<const Point2> positions, std::span<const Color> colors) {
  Instance inst;
  inst.points.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    inst.points.push_back(ColoredPoint{positions[i], colors[i], static_cast<int>(i)});
  }
  return inst;
}

void validate_instance(const Instance& inst) {
  if (inst.points.empty()) throw Error(ErrorKind::Parse, "instance has no points");
  for (int i = 0; i < inst.size(); ++i) {
    if (inst.points[static_cast<std::size_t>(i)].index != i) {
      throw Error(ErrorKind::InvariantViolation, "point indices must be 0..n-1 in order");
    }
  }
  std::vector<Point2> sorted;
  sorted.reserve(inst.points.size());
  for (const auto& p : inst.points) sorted.push_back(p.position);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::Parse, "instance contains coincident positions");
  }
  if (inst.size() >= 2 && (inst.count(Color::Red) == 0 || inst.count(Color::Blue) == 0)) {
    throw Error(ErrorKind::MonochromaticInstance, "instance with n >= 2 needs both colors");
  }
}

}  // namespace bpst
