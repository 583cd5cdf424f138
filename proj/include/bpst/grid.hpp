#pragma once

// Stage 1: the 3-lambda grid and its repair into convex bichromatic cells.
//
// Monochromatic and empty cells are partitioned into four trapezoids that
// merge into side neighbours. Where two partitioned cells meet, the facing
// trapezoids form a lune whose corner triangles are redistributed at the grid
// vertices. The surviving cells, with everything they absorbed, are the final
// cells handed to Stage 2.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpst/bottleneck.hpp"
#include "bpst/geom.hpp"
#include "bpst/instance.hpp"
#include "bpst/trace.hpp"

namespace bpst {

struct CellCoord {
  int col = 0;  // x index
  int row = 0;  // y index, growing upward

  friend constexpr auto operator<=>(const CellCoord&, const CellCoord&) = default;
  friend constexpr CellCoord operator+(CellCoord a, CellCoord b) { return {a.col + b.col, a.row + b.row}; }
};

std::string to_string(CellCoord c);

enum class Side : std::uint8_t { Left = 0, Right = 1, Bottom = 2, Top = 3 };
inline constexpr std::array<Side, 4> kSides = {Side::Left, Side::Right, Side::Bottom, Side::Top};

CellCoord side_offset(Side s);
Side opposite(Side s);
char side_char(Side s);

enum class CellKind : std::uint8_t { Bichromatic, MonoRed, MonoBlue, Empty };
enum class CellStatus : std::uint8_t { Original, Partitioned, Extended };

const char* to_string(CellKind k);
const char* to_string(CellStatus s);

inline bool is_mono(CellKind k) { return k == CellKind::MonoRed || k == CellKind::MonoBlue; }

struct GridFrame {
  Point2 origin;        // bottom-left corner of cell (0, 0)
  Coord unit = 0;       // rounded-up lambda, the sub-cell side
  Coord cell_side = 0;  // 3 * unit
  int cols = 0;
  int rows = 0;

  bool contains(CellCoord c) const { return c.col >= 0 && c.row >= 0 && c.col < cols && c.row < rows; }
  int linear(CellCoord c) const { return c.row * cols + c.col; }
  CellCoord coord(int linear_index) const { return {linear_index % cols, linear_index / cols}; }
  CellCoord cell_of(Point2 p) const;
  Point2 corner(CellCoord c) const;  // bottom-left
  /// Grid vertex at corner (dx, dy) in {0, 1}^2 of cell c.
  Point2 vertex(CellCoord c, int dx, int dy) const;
  ConvexPolygon square(CellCoord c) const;
};

struct GridCell {
  CellCoord coords;
  CellKind kind = CellKind::Empty;
  std::vector<int> point_indices;
  CellStatus status = CellStatus::Original;
};

/// Nine unit sub-cells (numbered row-major from the top-left, so index 4 is the
/// centre C5) and the four trapezoids tiling the cell minus its centre.
struct SubCellGeometry {
  std::array<ConvexPolygon, 9> subcells;
  std::array<ConvexPolygon, 4> trapezoids;  // indexed by Side
};

SubCellGeometry sub_cell_geometry(const GridFrame& frame, CellCoord c);

/// Where a point of a cell's annulus sits: the trapezoid (by side) and, along
/// that side, the low corner triangle, the middle unit square, or the high
/// corner triangle. Low means bottom for vertical sides and left otherwise.
enum class PiecePart : std::uint8_t { LowCorner, Middle, HighCorner };

struct PieceLocation {
  Side side;
  PiecePart part;
};

/// nullopt when the point is strictly inside the central sub-cell.
std::optional<PieceLocation> locate_in_annulus(const GridFrame& frame, CellCoord c, Point2 p);

struct MonoDigraph {
  std::vector<CellCoord> vertices;
  /// Directed edges (from, to) between side-adjacent mono cells.
  std::vector<std::pair<CellCoord, CellCoord>> edges;

  int d_in(CellCoord c) const;
  int d_out(CellCoord c) const;
  bool has_edge(CellCoord from, CellCoord to) const;
};

enum class PieceKind : std::uint8_t { Trapezoid, LuneTriangle, CornerSquare };

struct AbsorbedPiece {
  CellCoord source;
  PieceKind kind = PieceKind::Trapezoid;
  Side side = Side::Left;  // trapezoid side of the source cell
  std::vector<int> points;
  ConvexPolygon shape;  // may be empty for disk-clipped corner squares
};

struct FinalCell {
  int id = 0;
  CellCoord base;
  ConvexPolygon region;
  std::vector<int> point_indices;
  std::vector<AbsorbedPiece> absorbed;
};

/// Lune or half-lune between a partitioned cell and a partitioned (or
/// off-grid) side neighbour.
struct LuneRecord {
  CellCoord a;
  CellCoord b;
  bool half = false;
  std::vector<int> points;
  ConvexPolygon shape;
};

/// Redistribution decision taken at a grid vertex surrounded by at least two
/// partitioned cells forming a lune.
struct VertexDecision {
  Point2 vertex;
  int partitioned = 0;
  char lune_case = 'a';  // 'a'..'d'
  std::optional<CellCoord> receiver;
};

struct GridOptions {
  std::uint64_t offset_seed = 0;
};

struct CellComplex {
  GridFrame frame;
  Wide lambda2 = 0;
  std::vector<GridCell> cells;  // indexed by frame.linear()
  MonoDigraph digraph;          // as built, before Step 1 removals
  std::vector<FinalCell> final_cells;
  std::vector<int> final_of_cell;   // linear cell index -> final id or -1
  std::vector<int> final_of_point;  // point index -> final id
  std::vector<LuneRecord> lunes;
  std::vector<VertexDecision> vertex_decisions;

  const GridCell& cell(CellCoord c) const { return cells[static_cast<std::size_t>(frame.linear(c))]; }
  bool partitioned(CellCoord c) const { return !frame.contains(c) || cell(c).status == CellStatus::Partitioned; }
  int final_at(CellCoord c) const {
    return frame.contains(c) ? final_of_cell[static_cast<std::size_t>(frame.linear(c))] : -1;
  }
};

/// Mutable Stage-1 state threaded through the step operations.
struct PartitionState {
  const Instance* inst = nullptr;
  GridFrame frame;
  Wide lambda2 = 0;
  std::vector<GridCell> cells;
  MonoDigraph initial_digraph;
  /// Current digraph edges, out[linear][side] meaning an edge toward that side.
  std::vector<std::array<bool, 4>> out;
  /// Per cell and side, the points of that trapezoid (filled for non-bichromatic cells).
  std::vector<std::array<std::vector<int>, 4>> trapezoid_points;
  Trace* trace = nullptr;

  GridCell& cell(CellCoord c) { return cells[static_cast<std::size_t>(frame.linear(c))]; }
  const GridCell& cell(CellCoord c) const { return cells[static_cast<std::size_t>(frame.linear(c))]; }
  bool partitioned(CellCoord c) const { return !frame.contains(c) || cell(c).status == CellStatus::Partitioned; }
  int d_in(CellCoord c) const;
  int d_out(CellCoord c) const;
};

/// Lays the grid with cell side 3 * ceil(lambda). Throws DegenerateLambda when
/// lambda is zero for n >= 2.
PartitionState build_grid(const Instance& inst, Wide lambda2, const GridOptions& options = {});

/// Smallest integer unit u with u * u >= lambda2.
Coord rounded_unit(Wide lambda2);

MonoDigraph build_mono_digraph(PartitionState& state);

/// Partitions a mono or empty cell; its trapezoids become pieces of the side
/// neighbours. Throws InvariantViolation if the central sub-cell holds a point.
void cell_partition_procedure(PartitionState& state, CellCoord c);

void apply_step1(PartitionState& state);
void apply_step2(PartitionState& state);
void apply_step3(PartitionState& state);

/// Redistributes lune corner triangles at grid vertices, drops empty lune
/// cores, and assigns every point of a partitioned cell to a surviving cell.
/// Returns the destination final-cell base coords per point.
std::vector<CellCoord> eliminate_lunes(PartitionState& state, std::vector<LuneRecord>& lunes,
                                       std::vector<VertexDecision>& decisions,
                                       std::vector<std::vector<AbsorbedPiece>>& absorbed);

CellComplex finalize_cells(PartitionState& state, const std::vector<CellCoord>& destination,
                           std::vector<LuneRecord> lunes, std::vector<VertexDecision> decisions,
                           std::vector<std::vector<AbsorbedPiece>> absorbed);

/// Full Stage 1.
CellComplex run_stage1(const Instance& inst, Wide lambda2, const GridOptions& options = {},
                       Trace* trace = nullptr);

/// Checks the final-cell invariants; throws InvariantViolation naming the
/// property and the cell.
void check_final_cells(const Instance& inst, const CellComplex& complex);

}  // namespace bpst
