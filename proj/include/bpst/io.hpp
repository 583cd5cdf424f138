#pragma once

// Point files, result files and SVG rendering.
//
// Point file:            Result file:
//   bpst v1                bpst-result v1
//   <x> <y> <R|B>          <key> <value>      (one per line, fixed order)
//   ...                    edges <m>
//                          <i> <j>            (m lines)

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bpst/bottleneck.hpp"
#include "bpst/grid.hpp"
#include "bpst/instance.hpp"

namespace bpst {

/// Parses a point file; errors name the source and line number.
Instance parse_points(std::istream& in, const std::string& source = "<input>");
Instance read_points(const std::filesystem::path& path);
std::string render_points(const Instance& inst);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

struct ResultFile {
  int n = 0;
  Wide lambda2 = 0;
  Wide bottleneck2 = 0;
  bool ratio_bound_ok = false;
  bool spanning = false;
  bool bichromatic = false;
  bool planar = false;
  int components = 0;
  std::vector<Edge> edges;

  friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

std::string render_result(const ResultFile& r);
ResultFile parse_result(std::istream& in);

/// Exact inverse of format_length2 for point-to-point quantities.
Wide parse_length2(std::string_view text);

struct SvgLayers {
  const CellComplex* complex = nullptr;
  bool grid = true;
  bool partition = true;  // partitioned cells and lunes
  bool regions = true;    // final cell outlines
  std::span<const Edge> star_edges;
  std::span<const Edge> link_edges;
};

/// Deterministic SVG 1.1 (y axis pointing up in the drawing).
std::string render_svg(const Instance& inst, const SvgLayers& layers);

}  // namespace bpst
