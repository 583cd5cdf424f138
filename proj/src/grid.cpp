#include "bpst/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <tuple>

#include "bpst/error.hpp"

namespace bpst {

std::string to_string(CellCoord c) { return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")"; }

CellCoord side_offset(Side s) {
  switch (s) {
    case Side::Left: return {-1, 0};
    case Side::Right: return {1, 0};
    case Side::Bottom: return {0, -1};
    case Side::Top: return {0, 1};
  }
  return {0, 0};
}

Side opposite(Side s) {
  switch (s) {
    case Side::Left: return Side::Right;
    case Side::Right: return Side::Left;
    case Side::Bottom: return Side::Top;
    case Side::Top: return Side::Bottom;
  }
  return s;
}

char side_char(Side s) {
  switch (s) {
    case Side::Left: return 'l';
    case Side::Right: return 'r';
    case Side::Bottom: return 'b';
    case Side::Top: return 't';
  }
  return '?';
}

const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::Bichromatic: return "bichromatic";
    case CellKind::MonoRed: return "mono-red";
    case CellKind::MonoBlue: return "mono-blue";
    case CellKind::Empty: return "empty";
  }
  return "?";
}

const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Original: return "original";
    case CellStatus::Partitioned: return "partitioned";
    case CellStatus::Extended: return "extended";
  }
  return "?";
}

namespace {

Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool is_horizontal_side(Side s) { return s == Side::Left || s == Side::Right; }

int idx(Side s) { return static_cast<int>(s); }

unsigned color_bit(Color c) { return c == Color::Red ? 1U : 2U; }

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// The axis perpendicular to a side, toward the low or high corner.
Side corner_direction(Side side, PiecePart part) {
  if (is_horizontal_side(side)) return part == PiecePart::LowCorner ? Side::Bottom : Side::Top;
  return part == PiecePart::LowCorner ? Side::Left : Side::Right;
}

}  // namespace

CellCoord GridFrame::cell_of(Point2 p) const {
  return {static_cast<int>(floor_div(p.x - origin.x, cell_side)), static_cast<int>(floor_div(p.y - origin.y, cell_side))};
}

Point2 GridFrame::corner(CellCoord c) const {
  return {origin.x + static_cast<Coord>(c.col) * cell_side, origin.y + static_cast<Coord>(c.row) * cell_side};
}

Point2 GridFrame::vertex(CellCoord c, int dx, int dy) const {
  const Point2 base = corner(c);
  return {base.x + dx * cell_side, base.y + dy * cell_side};
}

ConvexPolygon GridFrame::square(CellCoord c) const {
  const Point2 o = corner(c);
  const Coord s = cell_side;
  return ConvexPolygon{{o, {o.x + s, o.y}, {o.x + s, o.y + s}, {o.x, o.y + s}}};
}

SubCellGeometry sub_cell_geometry(const GridFrame& frame, CellCoord c) {
  SubCellGeometry g;
  const Point2 o = frame.corner(c);
  const Coord u = frame.unit;
  const Coord s = frame.cell_side;
  for (int r = 0; r < 3; ++r) {      // r counted from the top row
    for (int k = 0; k < 3; ++k) {    // k counted from the left column
      const Coord x0 = o.x + k * u;
      const Coord y0 = o.y + (2 - r) * u;
      g.subcells[static_cast<std::size_t>(3 * r + k)] =
          ConvexPolygon{{{x0, y0}, {x0 + u, y0}, {x0 + u, y0 + u}, {x0, y0 + u}}};
    }
  }
  const Point2 bl = o;
  const Point2 br{o.x + s, o.y};
  const Point2 tr{o.x + s, o.y + s};
  const Point2 tl{o.x, o.y + s};
  const Point2 ibl{o.x + u, o.y + u};
  const Point2 ibr{o.x + 2 * u, o.y + u};
  const Point2 itr{o.x + 2 * u, o.y + 2 * u};
  const Point2 itl{o.x + u, o.y + 2 * u};
  g.trapezoids[idx(Side::Left)] = ConvexPolygon{{bl, ibl, itl, tl}};
  g.trapezoids[idx(Side::Right)] = ConvexPolygon{{br, tr, itr, ibr}};
  g.trapezoids[idx(Side::Bottom)] = ConvexPolygon{{bl, br, ibr, ibl}};
  g.trapezoids[idx(Side::Top)] = ConvexPolygon{{tl, itl, itr, tr}};
  return g;
}

std::optional<PieceLocation> locate_in_annulus(const GridFrame& frame, CellCoord c, Point2 p) {
  const Point2 o = frame.corner(c);
  const Coord u = frame.unit;
  const Coord s = frame.cell_side;
  const Coord lx = p.x - o.x;
  const Coord ly = p.y - o.y;
  if (lx > u && lx < 2 * u && ly > u && ly < 2 * u) return std::nullopt;

  const std::array<Coord, 4> dist = {lx, s - lx, ly, s - ly};  // by Side
  Side side = Side::Left;
  for (Side cand : kSides) {
    if (dist[static_cast<std::size_t>(idx(cand))] < dist[static_cast<std::size_t>(idx(side))]) side = cand;
  }
  const Coord along = is_horizontal_side(side) ? ly : lx;
  PiecePart part = PiecePart::Middle;
  if (along < u) part = PiecePart::LowCorner;
  if (along > 2 * u) part = PiecePart::HighCorner;
  return PieceLocation{side, part};
}

int MonoDigraph::d_in(CellCoord c) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.second == c; }));
}

int MonoDigraph::d_out(CellCoord c) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.first == c; }));
}

bool MonoDigraph::has_edge(CellCoord from, CellCoord to) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(from, to)) != edges.end();
}

int PartitionState::d_in(CellCoord c) const {
  int d = 0;
  for (Side s : kSides) {
    const CellCoord n = c + side_offset(s);
    if (frame.contains(n) && out[static_cast<std::size_t>(frame.linear(n))][static_cast<std::size_t>(idx(opposite(s)))]) ++d;
  }
  return d;
}

int PartitionState::d_out(CellCoord c) const {
  const auto& o = out[static_cast<std::size_t>(frame.linear(c))];
  return static_cast<int>(std::count(o.begin(), o.end(), true));
}

Coord rounded_unit(Wide lambda2) {
  if (lambda2 <= 0) return 0;
  Wide u = static_cast<Wide>(std::sqrt(static_cast<long double>(lambda2)));
  while (u * u < lambda2) ++u;
  while (u > 1 && (u - 1) * (u - 1) >= lambda2) --u;
  return static_cast<Coord>(u);
}

PartitionState build_grid(const Instance& inst, Wide lambda2, const GridOptions& options) {
  if (lambda2 <= 0) throw Error(ErrorKind::DegenerateLambda, "lambda must be positive to lay the grid");
  PartitionState state;
  state.inst = &inst;
  state.lambda2 = lambda2;
  GridFrame& f = state.frame;
  f.unit = rounded_unit(lambda2);
  f.cell_side = 3 * f.unit;

  Coord min_x = inst.pos(0).x, max_x = min_x, min_y = inst.pos(0).y, max_y = min_y;
  for (const auto& p : inst.points) {
    min_x = std::min(min_x, p.position.x);
    max_x = std::max(max_x, p.position.x);
    min_y = std::min(min_y, p.position.y);
    max_y = std::max(max_y, p.position.y);
  }

  Coord delta = f.unit / 7;
  if (options.offset_seed != 0) {
    const Wide k = 1 + static_cast<Wide>(mix64(options.offset_seed) % 999);
    delta = static_cast<Coord>(static_cast<Wide>(f.unit) * k / 1000);
  }
  delta = std::max<Coord>(delta, 1);
  const Coord step = std::max<Coord>(f.unit / 1000, 1);

  // Nudge each axis until no point sits on a grid line.
  auto settle = [&](Coord min_v, auto coord_of) {
    Coord d = delta;
    for (;;) {
      const Coord origin = min_v - d - f.cell_side;
      const bool clash = std::any_of(inst.points.begin(), inst.points.end(), [&](const ColoredPoint& p) {
        return (coord_of(p.position) - origin) % f.cell_side == 0;
      });
      if (!clash) return origin;
      d += step;
    }
  };
  f.origin.x = settle(min_x, [](Point2 p) { return p.x; });
  f.origin.y = settle(min_y, [](Point2 p) { return p.y; });
  f.cols = static_cast<int>(floor_div(max_x - f.origin.x, f.cell_side)) + 2;
  f.rows = static_cast<int>(floor_div(max_y - f.origin.y, f.cell_side)) + 2;

  const std::size_t count = static_cast<std::size_t>(f.cols) * static_cast<std::size_t>(f.rows);
  state.cells.resize(count);
  state.out.assign(count, {false, false, false, false});
  state.trapezoid_points.resize(count);
  for (int i = 0; i < static_cast<int>(count); ++i) state.cells[static_cast<std::size_t>(i)].coords = f.coord(i);
  for (const auto& p : inst.points) state.cell(f.cell_of(p.position)).point_indices.push_back(p.index);

  for (auto& cell : state.cells) {
    unsigned mask = 0;
    for (int i : cell.point_indices) mask |= color_bit(inst.color(i));
    cell.kind = mask == 3 ? CellKind::Bichromatic
              : mask == 1 ? CellKind::MonoRed
              : mask == 2 ? CellKind::MonoBlue
                          : CellKind::Empty;
    if (cell.kind == CellKind::Bichromatic) continue;
    auto& traps = state.trapezoid_points[static_cast<std::size_t>(f.linear(cell.coords))];
    for (int i : cell.point_indices) {
      const auto loc = locate_in_annulus(f, cell.coords, inst.pos(i));
      if (!loc) {
        throw Error(ErrorKind::InvariantViolation,
                    "mono cell " + to_string(cell.coords) + " has point " + std::to_string(i) + " in its central sub-cell");
      }
      traps[static_cast<std::size_t>(idx(loc->side))].push_back(i);
    }
  }
  return state;
}

MonoDigraph build_mono_digraph(PartitionState& state) {
  MonoDigraph g;
  const GridFrame& f = state.frame;
  for (auto& cell : state.cells) {
    if (!is_mono(cell.kind)) continue;
    g.vertices.push_back(cell.coords);
    const auto& traps = state.trapezoid_points[static_cast<std::size_t>(f.linear(cell.coords))];
    for (Side s : kSides) {
      const CellCoord n = cell.coords + side_offset(s);
      if (!f.contains(n)) continue;
      const GridCell& other = state.cell(n);
      const bool edge = is_mono(other.kind) && other.kind != cell.kind && !traps[static_cast<std::size_t>(idx(s))].empty();
      state.out[static_cast<std::size_t>(f.linear(cell.coords))][static_cast<std::size_t>(idx(s))] = edge;
      if (edge) g.edges.emplace_back(cell.coords, n);
    }
  }
  state.initial_digraph = g;
  return g;
}

namespace {

// Colors present in a cell once the facing trapezoids of its partitioned
// neighbours are merged in.
unsigned effective_colors(const PartitionState& state, CellCoord c) {
  const Instance& inst = *state.inst;
  unsigned mask = 0;
  for (int i : state.cell(c).point_indices) mask |= color_bit(inst.color(i));
  for (Side s : kSides) {
    const CellCoord n = c + side_offset(s);
    if (!state.frame.contains(n) || state.cell(n).status != CellStatus::Partitioned) continue;
    for (int i : state.trapezoid_points[static_cast<std::size_t>(state.frame.linear(n))][static_cast<std::size_t>(idx(opposite(s)))]) {
      mask |= color_bit(inst.color(i));
    }
  }
  return mask;
}

void clear_out_edges(PartitionState& state, CellCoord c) {
  if (!state.frame.contains(c)) return;
  state.out[static_cast<std::size_t>(state.frame.linear(c))] = {false, false, false, false};
}

void clear_in_edges(PartitionState& state, CellCoord c) {
  for (Side s : kSides) {
    const CellCoord n = c + side_offset(s);
    if (state.frame.contains(n)) {
      state.out[static_cast<std::size_t>(state.frame.linear(n))][static_cast<std::size_t>(idx(opposite(s)))] = false;
    }
  }
}

void note(PartitionState& state, const std::string& label, const std::string& detail) {
  if (state.trace != nullptr) state.trace->add(label, detail);
}

// Partitions c unless merging it would create a bichromatic lune (its own
// trapezoids plus those it already absorbed carry both colors). A refused cell
// is kept as an extended cell and leaves the digraph.
bool try_partition(PartitionState& state, CellCoord c, const std::string& label) {
  if (std::popcount(effective_colors(state, c)) >= 2) {
    state.cell(c).status = CellStatus::Extended;
    clear_out_edges(state, c);
    clear_in_edges(state, c);
    note(state, "keep-bichromatic", to_string(c) + " during " + label);
    return false;
  }
  cell_partition_procedure(state, c);
  note(state, label, "partition " + to_string(c));
  return true;
}

bool undecided(const GridCell& cell) { return cell.status == CellStatus::Original; }

}  // namespace

void cell_partition_procedure(PartitionState& state, CellCoord c) {
  GridCell& cell = state.cell(c);
  if (cell.kind == CellKind::Bichromatic) {
    throw Error(ErrorKind::InvariantViolation, "cannot partition bichromatic cell " + to_string(c));
  }
  for (int i : cell.point_indices) {
    if (!locate_in_annulus(state.frame, c, state.inst->pos(i))) {
      throw Error(ErrorKind::InvariantViolation,
                  "central sub-cell of " + to_string(c) + " contains point " + std::to_string(i));
    }
  }
  cell.status = CellStatus::Partitioned;
  cell.point_indices.clear();  // now held by the trapezoids
}

void apply_step1(PartitionState& state) {
  for (;;) {
    std::optional<CellCoord> pick;
    for (const auto& cell : state.cells) {
      if (is_mono(cell.kind) && undecided(cell) && state.d_in(cell.coords) == 0 && state.d_out(cell.coords) > 0) {
        pick = cell.coords;
        break;
      }
    }
    if (!pick) return;
    if (try_partition(state, *pick, "step1")) {
      clear_out_edges(state, *pick);
      for (Side s : kSides) clear_out_edges(state, *pick + side_offset(s));
    }
  }
}

void apply_step2(PartitionState& state) {
  std::vector<CellCoord> white;
  for (const auto& cell : state.cells) {
    const bool is_white = (cell.coords.col + cell.coords.row) % 2 == 0;
    if (is_mono(cell.kind) && undecided(cell) && is_white && state.d_in(cell.coords) > 0) white.push_back(cell.coords);
  }
  for (CellCoord c : white) try_partition(state, c, "step2");
}

void apply_step3(PartitionState& state) {
  for (auto& cell : state.cells) {
    if (!undecided(cell)) continue;
    const bool empty = cell.kind == CellKind::Empty;
    const bool idle_mono = is_mono(cell.kind) && state.d_in(cell.coords) == 0 && state.d_out(cell.coords) == 0;
    if (empty || idle_mono) try_partition(state, cell.coords, "step3");
  }
  // Whatever mono cell survives (black, positive in-degree) is extended.
  for (auto& cell : state.cells) {
    if (undecided(cell) && cell.kind != CellKind::Bichromatic) cell.status = CellStatus::Extended;
  }
  // A surviving cell whose source cell was refused may still be single
  // colored; partition it too. Adding trapezoids never removes a color, so
  // this reaches a fixpoint.
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& cell : state.cells) {
      if (cell.status != CellStatus::Extended || cell.kind == CellKind::Bichromatic) continue;
      if (std::popcount(effective_colors(state, cell.coords)) >= 2) continue;
      cell_partition_procedure(state, cell.coords);
      note(state, "repair", "partition " + to_string(cell.coords));
      changed = true;
    }
  }
}

namespace {

Point2 corner_vertex(const GridFrame& f, CellCoord c, Side side, PiecePart part) {
  const int dx = side == Side::Right ? 1 : side == Side::Left ? 0 : (part == PiecePart::HighCorner ? 1 : 0);
  const int dy = side == Side::Top ? 1 : side == Side::Bottom ? 0 : (part == PiecePart::HighCorner ? 1 : 0);
  return f.vertex(c, dx, dy);
}

// The corner triangle of a trapezoid: the half of the corner sub-cell on the
// trapezoid's side of the diagonal.
ConvexPolygon corner_triangle(const GridFrame& f, CellCoord c, Side side, PiecePart part) {
  const Point2 v = corner_vertex(f, c, side, part);
  const Coord u = f.unit;
  const CellCoord toward_center = CellCoord{0, 0} + side_offset(opposite(side));
  const CellCoord along = side_offset(opposite(corner_direction(side, part)));
  const Point2 inner{v.x + (toward_center.col + along.col) * u, v.y + (toward_center.row + along.row) * u};
  const Point2 on_side{v.x + along.col * u, v.y + along.row * u};
  std::vector<Point2> tri = {v, inner, on_side};
  if (cross(tri[0], tri[1], tri[2]) < 0) std::swap(tri[1], tri[2]);
  return ConvexPolygon{tri};
}

struct PieceKey {
  CellCoord dest;
  CellCoord source;
  PieceKind kind;
  Side side;
  PiecePart part;

  auto tie() const { return std::make_tuple(dest, source, static_cast<int>(kind), idx(side), static_cast<int>(part)); }
  bool operator<(const PieceKey& o) const { return tie() < o.tie(); }
};

}  // namespace

std::vector<CellCoord> eliminate_lunes(PartitionState& state, std::vector<LuneRecord>& lunes,
                                       std::vector<VertexDecision>& decisions,
                                       std::vector<std::vector<AbsorbedPiece>>& absorbed) {
  const GridFrame& f = state.frame;
  const Instance& inst = *state.inst;
  auto kept = [&](CellCoord c) { return f.contains(c) && state.cell(c).status != CellStatus::Partitioned; };
  auto has_points = [&](CellCoord c) { return f.contains(c) && state.cell(c).kind != CellKind::Empty; };
  auto trap = [&](CellCoord c, Side s) -> const std::vector<int>& {
    return state.trapezoid_points[static_cast<std::size_t>(f.linear(c))][static_cast<std::size_t>(idx(s))];
  };

  std::vector<CellCoord> destination(static_cast<std::size_t>(inst.size()), CellCoord{-1, -1});
  for (const auto& cell : state.cells) {
    if (cell.status != CellStatus::Partitioned) {
      for (int i : cell.point_indices) destination[static_cast<std::size_t>(i)] = cell.coords;
    }
  }

  // Destination of a piece (side, part) of partitioned cell q; nullopt when
  // the piece is dropped.
  auto piece_destination = [&](CellCoord q, Side side, PiecePart part) -> std::optional<std::pair<CellCoord, PieceKind>> {
    const CellCoord n = q + side_offset(side);
    if (kept(n)) return std::make_pair(n, PieceKind::Trapezoid);
    if (part == PiecePart::Middle) return std::nullopt;
    const CellCoord m = q + side_offset(corner_direction(side, part));
    const CellCoord d = n + side_offset(corner_direction(side, part));
    if (kept(m)) return std::make_pair(m, PieceKind::LuneTriangle);
    if (kept(d)) return std::make_pair(d, PieceKind::CornerSquare);
    return std::nullopt;
  };

  std::map<PieceKey, AbsorbedPiece> pieces;
  int half_lunes = 0;
  const Wide unit2 = static_cast<Wide>(f.unit) * f.unit;

  for (const auto& cell : state.cells) {
    if (cell.status != CellStatus::Partitioned) continue;
    const CellCoord q = cell.coords;
    for (Side side : kSides) {
      const CellCoord n = q + side_offset(side);
      if (!f.contains(n)) ++half_lunes;
      for (PiecePart part : {PiecePart::LowCorner, PiecePart::Middle, PiecePart::HighCorner}) {
        const auto dest = piece_destination(q, side, part);
        if (!dest) continue;
        if (dest->second == PieceKind::Trapezoid && part != PiecePart::LowCorner) continue;
        PieceKey key{dest->first, q, dest->second, side, dest->second == PieceKind::Trapezoid ? PiecePart::Middle : part};
        AbsorbedPiece& piece = pieces[key];
        piece.source = q;
        piece.kind = dest->second;
        piece.side = side;
        if (dest->second == PieceKind::Trapezoid) {
          piece.shape = sub_cell_geometry(f, q).trapezoids[static_cast<std::size_t>(idx(side))];
        } else if (dest->second == PieceKind::LuneTriangle) {
          piece.shape = corner_triangle(f, q, side, part);
        }
      }
    }

    for (Side side : kSides) {
      for (int i : trap(q, side)) {
        const auto loc = locate_in_annulus(f, q, inst.pos(i));
        const auto dest = piece_destination(q, side, loc->part);
        if (!dest) {
          const bool core = loc->part == PiecePart::Middle;
          throw Error(ErrorKind::InvariantViolation,
                      std::string(core ? "lune core" : "corner triangle with no extended flank") + " of " +
                          to_string(q) + " side " + side_char(side) + " contains point " + std::to_string(i));
        }
        PieceKey key{dest->first, q, dest->second, side,
                     dest->second == PieceKind::Trapezoid ? PiecePart::Middle : loc->part};
        pieces[key].points.push_back(i);
        destination[static_cast<std::size_t>(i)] = dest->first;
        if (dest->second == PieceKind::CornerSquare) {
          const Point2 v = corner_vertex(f, q, side, loc->part);
          if (distance2(inst.pos(i), v) > unit2) {
            note(state, "disk-overflow", "point " + std::to_string(i) + " of " + to_string(q) + " -> " + to_string(dest->first));
          }
        }
      }
    }
  }
  note(state, "half-lune", "count=" + std::to_string(half_lunes) + " boundary trapezoids, all empty");

  absorbed.assign(state.cells.size(), {});
  for (auto& [key, piece] : pieces) absorbed[static_cast<std::size_t>(f.linear(key.dest))].push_back(std::move(piece));

  // Lune records: adjacent partitioned cells, at least one with points.
  for (const auto& cell : state.cells) {
    if (cell.status != CellStatus::Partitioned) continue;
    for (Side side : {Side::Right, Side::Top, Side::Left, Side::Bottom}) {
      const CellCoord n = cell.coords + side_offset(side);
      const bool off_grid = !f.contains(n);
      if (!off_grid && (state.cell(n).status != CellStatus::Partitioned)) continue;
      if (!off_grid && (side == Side::Left || side == Side::Bottom)) continue;  // recorded from the other cell
      if (!has_points(cell.coords) && !has_points(n)) continue;
      LuneRecord lune;
      lune.a = cell.coords;
      lune.b = n;
      lune.half = off_grid;
      lune.points = trap(cell.coords, side);
      std::vector<Point2> outline = sub_cell_geometry(f, cell.coords).trapezoids[static_cast<std::size_t>(idx(side))].vertices;
      if (!off_grid) {
        const auto& other = trap(n, opposite(side));
        lune.points.insert(lune.points.end(), other.begin(), other.end());
        const auto more = sub_cell_geometry(f, n).trapezoids[static_cast<std::size_t>(idx(opposite(side)))].vertices;
        outline.insert(outline.end(), more.begin(), more.end());
      }
      unsigned mask = 0;
      for (int i : lune.points) mask |= color_bit(inst.color(i));
      if (mask == 3) {
        throw Error(ErrorKind::InvariantViolation, "lune between " + to_string(lune.a) + " and " + to_string(lune.b) + " is bichromatic");
      }
      lune.shape = convex_hull(outline).polygon();
      note(state, off_grid ? "half-lune-cell" : "lune",
           to_string(lune.a) + "|" + to_string(lune.b) + " points=" + std::to_string(lune.points.size()));
      lunes.push_back(std::move(lune));
    }
  }

  // Vertex decisions around cells that carried points.
  for (int r = 0; r <= f.rows; ++r) {
    for (int c = 0; c <= f.cols; ++c) {
      const CellCoord ne{c, r};
      const CellCoord nw{c - 1, r};
      const CellCoord se{c, r - 1};
      const CellCoord sw{c - 1, r - 1};
      if (!has_points(ne) && !has_points(nw) && !has_points(se) && !has_points(sw)) continue;
      const bool pne = state.partitioned(ne), pnw = state.partitioned(nw), pse = state.partitioned(se), psw = state.partitioned(sw);
      const int k = pne + pnw + pse + psw;
      if (k < 2) continue;
      if (k == 2 && pne == psw) continue;  // diagonal pair: plain trapezoid merges
      VertexDecision d;
      d.vertex = Point2{f.origin.x + static_cast<Coord>(c) * f.cell_side, f.origin.y + static_cast<Coord>(r) * f.cell_side};
      d.partitioned = k;
      if (k == 2) {
        d.lune_case = 'a';
      } else if (k == 3) {
        const CellCoord receiver = !pne ? ne : !pse ? se : !pnw ? nw : sw;
        d.receiver = receiver;
        d.lune_case = (receiver == ne || receiver == se) ? 'b' : 'c';
      } else {
        d.lune_case = 'd';
      }
      note(state, std::string("lune-") + d.lune_case,
           "vertex " + to_string(CellCoord{c, r}) + " partitioned=" + std::to_string(k) +
               (d.receiver ? " receiver=" + to_string(*d.receiver) : ""));
      decisions.push_back(d);
    }
  }
  return destination;
}

CellComplex finalize_cells(PartitionState& state, const std::vector<CellCoord>& destination,
                           std::vector<LuneRecord> lunes, std::vector<VertexDecision> decisions,
                           std::vector<std::vector<AbsorbedPiece>> absorbed) {
  const GridFrame& f = state.frame;
  const Instance& inst = *state.inst;
  CellComplex out;
  out.frame = f;
  out.lambda2 = state.lambda2;
  out.digraph = state.initial_digraph;
  out.final_of_cell.assign(state.cells.size(), -1);
  out.final_of_point.assign(static_cast<std::size_t>(inst.size()), -1);

  std::vector<CellCoord> kept;
  for (const auto& cell : state.cells) {
    if (cell.status != CellStatus::Partitioned) kept.push_back(cell.coords);
  }
  std::sort(kept.begin(), kept.end());
  for (CellCoord c : kept) {
    FinalCell fc;
    fc.id = static_cast<int>(out.final_cells.size());
    fc.base = c;
    fc.absorbed = std::move(absorbed[static_cast<std::size_t>(f.linear(c))]);
    out.final_of_cell[static_cast<std::size_t>(f.linear(c))] = fc.id;
    out.final_cells.push_back(std::move(fc));
  }
  for (int i = 0; i < inst.size(); ++i) {
    const CellCoord d = destination[static_cast<std::size_t>(i)];
    if (!f.contains(d) || out.final_of_cell[static_cast<std::size_t>(f.linear(d))] < 0) {
      throw Error(ErrorKind::InvariantViolation, "point " + std::to_string(i) + " left unassigned after lune elimination");
    }
    const int id = out.final_of_cell[static_cast<std::size_t>(f.linear(d))];
    out.final_of_point[static_cast<std::size_t>(i)] = id;
    out.final_cells[static_cast<std::size_t>(id)].point_indices.push_back(i);
  }
  for (auto& fc : out.final_cells) {
    std::vector<Point2> outline = f.square(fc.base).vertices;
    for (const auto& piece : fc.absorbed) {
      outline.insert(outline.end(), piece.shape.vertices.begin(), piece.shape.vertices.end());
      for (int i : piece.points) outline.push_back(inst.pos(i));
    }
    fc.region = convex_hull(outline).polygon();
    GridCell& cell = state.cell(fc.base);
    const bool absorbed_any = !fc.absorbed.empty();
    cell.status = (cell.kind == CellKind::Bichromatic && !absorbed_any) ? CellStatus::Original : CellStatus::Extended;
  }
  out.cells = state.cells;
  out.lunes = std::move(lunes);
  out.vertex_decisions = std::move(decisions);
  return out;
}

CellComplex run_stage1(const Instance& inst, Wide lambda2, const GridOptions& options, Trace* trace) {
  PartitionState state = build_grid(inst, lambda2, options);
  state.trace = trace;
  build_mono_digraph(state);
  apply_step1(state);
  apply_step2(state);
  apply_step3(state);
  std::vector<LuneRecord> lunes;
  std::vector<VertexDecision> decisions;
  std::vector<std::vector<AbsorbedPiece>> absorbed;
  const auto destination = eliminate_lunes(state, lunes, decisions, absorbed);
  CellComplex complex = finalize_cells(state, destination, std::move(lunes), std::move(decisions), std::move(absorbed));
  check_final_cells(inst, complex);
  return complex;
}

void check_final_cells(const Instance& inst, const CellComplex& complex) {
  const GridFrame& f = complex.frame;
  std::vector<int> seen(static_cast<std::size_t>(inst.size()), 0);
  const Wide diameter_bound2 = 50 * complex.lambda2;  // (5 sqrt2 lambda)^2
  for (const auto& fc : complex.final_cells) {
    const std::string where = "final cell " + std::to_string(fc.id) + " at " + to_string(fc.base);
    unsigned mask = 0;
    for (int i : fc.point_indices) {
      mask |= color_bit(inst.color(i));
      ++seen[static_cast<std::size_t>(i)];
    }
    if (mask != 3) throw Error(ErrorKind::InvariantViolation, where + " is not bichromatic");
    if (!is_convex_ccw(fc.region)) throw Error(ErrorKind::InvariantViolation, where + " region is not convex");
    const Point2 o = f.corner(fc.base);
    for (int i : fc.point_indices) {
      const Point2 p = inst.pos(i);
      if (p.x < o.x - f.unit || p.x > o.x + f.cell_side + f.unit || p.y < o.y - f.unit || p.y > o.y + f.cell_side + f.unit) {
        throw Error(ErrorKind::InvariantViolation, where + " point " + std::to_string(i) + " outside the 5-lambda box");
      }
      if (point_in_convex_region(p, fc.region) == Region::Outside) {
        throw Error(ErrorKind::InvariantViolation, where + " point " + std::to_string(i) + " outside its region");
      }
    }
    for (std::size_t a = 0; a < fc.point_indices.size(); ++a) {
      for (std::size_t b = a + 1; b < fc.point_indices.size(); ++b) {
        if (distance2(inst.pos(fc.point_indices[a]), inst.pos(fc.point_indices[b])) > diameter_bound2) {
          throw Error(ErrorKind::InvariantViolation, where + " exceeds the 5*sqrt(2)*lambda diameter bound");
        }
      }
    }
  }
  for (int i = 0; i < inst.size(); ++i) {
    if (seen[static_cast<std::size_t>(i)] != 1) {
      throw Error(ErrorKind::InvariantViolation, "point " + std::to_string(i) + " is assigned " +
                                                     std::to_string(seen[static_cast<std::size_t>(i)]) + " times");
    }
  }
}

}  // namespace bpst
