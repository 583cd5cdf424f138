#include "bpst/stitch.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "bpst/error.hpp"

namespace bpst {

namespace {

Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string edge_text(const Edge& e) { return std::to_string(e.first) + "-" + std::to_string(e.second); }

void note(Trace* trace, const std::string& label, const std::string& detail) {
  if (trace != nullptr) trace->add(label, detail);
}

}  // namespace

CellAdjacency build_cell_adjacency(const CellComplex& complex) {
  const std::size_t m = complex.final_cells.size();
  CellAdjacency adj;
  adj.s_adjacent.assign(m, {});
  adj.d_adjacent.assign(m, {});
  adj.ordered.assign(m, {});
  static constexpr CellCoord kSideOrder[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  static constexpr CellCoord kDiagOrder[4] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (const auto& fc : complex.final_cells) {
    const auto id = static_cast<std::size_t>(fc.id);
    for (CellCoord o : kSideOrder) {
      const int other = complex.final_at(fc.base + o);
      if (other < 0) continue;
      adj.s_adjacent[id].push_back(other);
      adj.ordered[id].push_back(other);
    }
    for (CellCoord o : kDiagOrder) {
      const int other = complex.final_at(fc.base + o);
      if (other < 0) continue;
      if (!complex.partitioned(fc.base + CellCoord{o.col, 0}) || !complex.partitioned(fc.base + CellCoord{0, o.row})) continue;
      adj.d_adjacent[id].push_back(other);
      adj.ordered[id].push_back(other);
    }
  }
  return adj;
}

EdgeIndex::EdgeIndex(const Instance& inst, Coord bucket_side) : inst_(&inst), side_(std::max<Coord>(bucket_side, 1)) {}

std::pair<Coord, Coord> EdgeIndex::bucket(Point2 p) const { return {floor_div(p.x, side_), floor_div(p.y, side_)}; }

std::uint64_t EdgeIndex::key(Coord bx, Coord by) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(bx)) << 32) | static_cast<std::uint32_t>(by);
}

void EdgeIndex::insert(const Edge& e) {
  const int id = static_cast<int>(edges_.size());
  edges_.push_back(e);
  const Point2 a = inst_->pos(e.first);
  const Point2 b = inst_->pos(e.second);
  const auto lo = bucket({std::min(a.x, b.x), std::min(a.y, b.y)});
  const auto hi = bucket({std::max(a.x, b.x), std::max(a.y, b.y)});
  for (Coord bx = lo.first; bx <= hi.first; ++bx) {
    for (Coord by = lo.second; by <= hi.second; ++by) buckets_[key(bx, by)].push_back(id);
  }
}

std::vector<int> EdgeIndex::near(Point2 lo, Point2 hi) const {
  const auto blo = bucket(lo);
  const auto bhi = bucket(hi);
  std::vector<int> out;
  for (Coord bx = blo.first; bx <= bhi.first; ++bx) {
    for (Coord by = blo.second; by <= bhi.second; ++by) {
      const auto it = buckets_.find(key(bx, by));
      if (it != buckets_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool EdgeIndex::crosses(const Segment& s) const {
  const Point2 lo{std::min(s.a.x, s.b.x), std::min(s.a.y, s.b.y)};
  const Point2 hi{std::max(s.a.x, s.b.x), std::max(s.a.y, s.b.y)};
  for (int id : near(lo, hi)) {
    const Edge& e = edges_[static_cast<std::size_t>(id)];
    if (segments_properly_cross(s, Segment{inst_->pos(e.first), inst_->pos(e.second)})) return true;
  }
  return false;
}

GlobalTree::GlobalTree(const Instance& instance, const CellComplex& cx)
    : inst(&instance),
      complex(&cx),
      bound2(128 * cx.lambda2),
      index(instance, cx.frame.cell_side),
      components(instance.size()) {}

bool GlobalTree::connected(int cell_a, int cell_b) {
  return components.same(trees[static_cast<std::size_t>(cell_a)].center, trees[static_cast<std::size_t>(cell_b)].center);
}

bool GlobalTree::admissible(const Edge& e) {
  if (e.first == e.second || inst->color(e.first) == inst->color(e.second)) return false;
  if (components.same(e.first, e.second)) return false;
  const Segment s{inst->pos(e.first), inst->pos(e.second)};
  if (distance2(s.a, s.b) > bound2) return false;
  return !index.crosses(s);
}

void GlobalTree::add(const Edge& e) {
  index.insert(e);
  components.unite(e.first, e.second);
}

int find_unblocked_point(GlobalTree& tree, std::span<const int> candidates, Point2 a, Point2 b) {
  const Instance& inst = *tree.inst;
  std::vector<std::pair<Wide, int>> order;
  order.reserve(candidates.size());
  for (int i : candidates) {
    const Wide f = cross(a, b, inst.pos(i));
    order.emplace_back(f < 0 ? -f : f, i);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [dist, p] : order) {
    const Point2 pp = inst.pos(p);
    const Point2 lo{std::min({pp.x, a.x, b.x}), std::min({pp.y, a.y, b.y})};
    const Point2 hi{std::max({pp.x, a.x, b.x}), std::max({pp.y, a.y, b.y})};
    bool blocked = false;
    for (int id : tree.index.near(lo, hi)) {
      const Edge& e = tree.edges()[static_cast<std::size_t>(id)];
      if (e.first == p || e.second == p) continue;
      if (segment_meets_triangle_interior(Segment{inst.pos(e.first), inst.pos(e.second)}, pp, a, b)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return p;
  }
  throw Error(ErrorKind::SweepExhausted, "no point with an empty triangle toward the boundary");
}

namespace {

const FinalCell& cell_of(const GlobalTree& t, int id) { return t.complex->final_cells[static_cast<std::size_t>(id)]; }

Point2 cell_vertex(const GlobalTree& t, CellCoord base, const Frame& fr, int sx, int sy) {
  const CellCoord d = fr.apply(CellCoord{sx, sy});
  return t.complex->frame.vertex(base, (d.col + 1) / 2, (d.row + 1) / 2);
}

Frame side_frame(CellCoord o, int flank) {
  const CellCoord e2{-o.row * flank, o.col * flank};
  return Frame{o.col, e2.col, o.row, e2.row};
}

Edge attach_to(GlobalTree& t, int cell, int point, Trace* trace) {
  const AttachResult r = attach_external_point(*t.inst, t.trees[static_cast<std::size_t>(cell)], point,
                                               [&](const Edge& e) { return t.admissible(e); }, trace);
  t.add(r.edge);
  return r.edge;
}

}  // namespace

Connection connect_d_adjacent(GlobalTree& t, int src, int dst, Trace* trace) {
  const FinalCell& cs = cell_of(t, src);
  const FinalCell& cd = cell_of(t, dst);
  const Frame fr{cd.base.col - cs.base.col, 0, 0, cd.base.row - cs.base.row};
  const Coord u = t.complex->frame.unit;
  const Point2 v = cell_vertex(t, cs.base, fr, 1, 1);
  const Point2 a = v + fr.apply(Point2{-u, u});
  const Point2 b = v + fr.apply(Point2{u, -u});
  const int p = find_unblocked_point(t, cs.point_indices, a, b);
  Connection c{"case1", {attach_to(t, dst, p, trace)}};
  note(trace, "case1", "cells " + std::to_string(src) + "->" + std::to_string(dst) + " p=" + std::to_string(p) +
                           " edge " + edge_text(c.edges[0]));
  return c;
}

Connection connect_s_adjacent(GlobalTree& t, int src, int dst, Trace* trace) {
  const Instance& inst = *t.inst;
  const CellComplex& cx = *t.complex;
  const FinalCell& cs = cell_of(t, src);
  const FinalCell& cd = cell_of(t, dst);
  const CellCoord o{cd.base.col - cs.base.col, cd.base.row - cs.base.row};
  const Coord u = cx.frame.unit;
  const std::string cells = "cells " + std::to_string(src) + "->" + std::to_string(dst);

  Frame fr = side_frame(o, 1);
  const Point2 v_tr = cell_vertex(t, cs.base, fr, 1, 1);
  const Point2 v_br = cell_vertex(t, cs.base, fr, 1, -1);
  const int p = find_unblocked_point(t, cs.point_indices, v_br, v_tr);

  std::vector<Point2> hull_input{inst.pos(p)};
  for (int i : cd.point_indices) hull_input.push_back(inst.pos(i));
  const HullResult hull = convex_hull(hull_input);

  struct Intruder {
    int point;
    int cell;
  };
  std::vector<Intruder> foreign;
  for (int dc = -2; dc <= 2; ++dc) {
    for (int dr = -2; dr <= 2; ++dr) {
      const int id = cx.final_at(cs.base + CellCoord{dc, dr});
      if (id < 0 || id == src || id == dst) continue;
      for (int i : cell_of(t, id).point_indices) {
        if (point_in_hull(inst.pos(i), hull)) foreign.push_back({i, id});
      }
    }
  }
  if (foreign.empty()) {
    Connection c{"case2.1", {attach_to(t, dst, p, trace)}};
    note(trace, "case2.1", cells + " p=" + std::to_string(p) + " edge " + edge_text(c.edges[0]));
    return c;
  }

  // Pick the flanking row that H pierces.
  Wide best_up = -1;
  Wide best_down = -1;
  for (int flank : {1, -1}) {
    const Frame f = side_frame(o, flank);
    const int side_src = cx.final_at(cs.base + f.apply(CellCoord{0, 1}));
    const int side_dst = cx.final_at(cs.base + f.apply(CellCoord{1, 1}));
    for (const auto& x : foreign) {
      if (x.cell != side_src && x.cell != side_dst) continue;
      Wide d = cross(v_br, v_tr, inst.pos(x.point));
      if (d < 0) d = -d;
      Wide& best = flank == 1 ? best_up : best_down;
      if (best < 0 || d < best) best = d;
    }
  }
  if (best_up < 0 && best_down < 0) {
    throw Error(ErrorKind::CaseInvariantViolation, cells + ": hull pierced outside the flanking rows");
  }
  const int flank = (best_down >= 0 && (best_up < 0 || best_down < best_up)) ? -1 : 1;
  if (best_up >= 0 && best_down >= 0) note(trace, "row-choice", cells + (flank == 1 ? " up" : " down"));
  fr = side_frame(o, flank);
  const Point2 corner = cell_vertex(t, cs.base, fr, 1, 1);
  const int flank_src = cx.final_at(cs.base + fr.apply(CellCoord{0, 1}));
  const int flank_dst = cx.final_at(cs.base + fr.apply(CellCoord{1, 1}));
  const bool in_src_row = std::any_of(foreign.begin(), foreign.end(), [&](const Intruder& x) { return x.cell == flank_src; });
  const bool in_dst_row = std::any_of(foreign.begin(), foreign.end(), [&](const Intruder& x) { return x.cell == flank_dst; });
  if (in_src_row && in_dst_row) {
    throw Error(ErrorKind::CaseInvariantViolation, cells + ": both flanking point sets intrude");
  }

  if (in_src_row) {
    const auto& flank_points = cell_of(t, flank_src).point_indices;
    const int q = find_unblocked_point(t, flank_points, corner, corner + fr.apply(Point2{u, u}));
    Connection c{"case2.2-1", {attach_to(t, dst, q, trace)}};
    note(trace, "case2.2-1", cells + " flank=" + std::to_string(flank_src) + " p=" + std::to_string(p) +
                                 " q=" + std::to_string(q) + " edge " + edge_text(c.edges[0]));
    return c;
  }

  Connection c{"case2.2-2", {}};
  std::string detail = cells + " flank=" + std::to_string(flank_dst) + " p=" + std::to_string(p);
  if (!t.connected(flank_dst, src)) {
    const int q = find_unblocked_point(t, cs.point_indices, corner, corner + fr.apply(Point2{-u, u}));
    c.edges.push_back(attach_to(t, flank_dst, q, trace));
    detail += " q=" + std::to_string(q);
  }
  const Point2 a = corner + fr.apply(Point2{cx.frame.cell_side, 0});
  std::vector<int> in_triangle;
  for (int i : cell_of(t, flank_dst).point_indices) {
    if (point_in_closed_triangle(inst.pos(i), inst.pos(p), corner, a)) in_triangle.push_back(i);
  }
  const int z = find_unblocked_point(t, in_triangle, corner, a);
  c.edges.push_back(attach_to(t, dst, z, trace));
  if (c.edges.size() == 2 &&
      segments_properly_cross(Segment{inst.pos(c.edges[0].first), inst.pos(c.edges[0].second)},
                              Segment{inst.pos(c.edges[1].first), inst.pos(c.edges[1].second)})) {
    throw Error(ErrorKind::CaseInvariantViolation, cells + ": q-edge and z-edge cross");
  }
  detail += " z=" + std::to_string(z);
  for (const auto& e : c.edges) detail += " edge " + edge_text(e);
  note(trace, "case2.2-2", detail);
  return c;
}

namespace {

// Shortest admissible edge between two cells; false if there is none.
bool connect_shortest_pair(GlobalTree& t, int a, int b, Trace* trace) {
  const Instance& inst = *t.inst;
  std::vector<std::pair<Wide, Edge>> pairs;
  for (int i : cell_of(t, a).point_indices) {
    for (int j : cell_of(t, b).point_indices) {
      if (inst.color(i) != inst.color(j)) pairs.push_back({distance2(inst.pos(i), inst.pos(j)), {i, j}});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [len, e] : pairs) {
    if (t.admissible(e)) {
      t.add(e);
      note(trace, "fallback", "cells " + std::to_string(a) + "->" + std::to_string(b) + " edge " + edge_text(e));
      return true;
    }
  }
  return false;
}

void connect_cells(GlobalTree& t, const CellAdjacency& adj, int src, int dst, Trace* trace) {
  const auto& d = adj.d_adjacent[static_cast<std::size_t>(src)];
  const bool diagonal = std::find(d.begin(), d.end(), dst) != d.end();
  try {
    if (diagonal) {
      connect_d_adjacent(t, src, dst, trace);
    } else {
      connect_s_adjacent(t, src, dst, trace);
    }
  } catch (const Error& e) {
    note(trace, "case-failed", e.what());
  }
  if (!t.connected(src, dst)) connect_shortest_pair(t, src, dst, trace);
}

// Joins any two components with the shortest admissible edges between
// nearby points.
void proximity_pass(GlobalTree& t, Trace* trace) {
  const Instance& inst = *t.inst;
  const CellComplex& cx = *t.complex;
  std::vector<std::pair<Wide, Edge>> pairs;
  std::vector<std::vector<int>> by_cell(cx.final_cells.size());
  for (const auto& fc : cx.final_cells) by_cell[static_cast<std::size_t>(fc.id)] = fc.point_indices;
  for (const auto& fc : cx.final_cells) {
    for (int dc = -4; dc <= 4; ++dc) {
      for (int dr = -4; dr <= 4; ++dr) {
        const int other = cx.final_at(fc.base + CellCoord{dc, dr});
        if (other < fc.id) continue;
        if (t.connected(fc.id, other)) continue;
        for (int i : fc.point_indices) {
          for (int j : by_cell[static_cast<std::size_t>(other)]) {
            if (inst.color(i) == inst.color(j)) continue;
            const Wide len = distance2(inst.pos(i), inst.pos(j));
            if (len <= t.bound2) pairs.push_back({len, {i, j}});
          }
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [len, e] : pairs) {
    if (t.admissible(e)) {
      t.add(e);
      note(trace, "proximity", "edge " + edge_text(e));
    }
  }
}

}  // namespace

Stage2Result stitch_all(const Instance& inst, const CellComplex& complex, Trace* trace) {
  GlobalTree t(inst, complex);
  for (const auto& fc : complex.final_cells) {
    t.trees.push_back(build_star_tree(inst, fc.point_indices, trace));
    for (const Edge& e : t.trees.back().edges) t.add(e);
  }
  const CellAdjacency adj = build_cell_adjacency(complex);
  const std::size_t m = complex.final_cells.size();
  std::vector<bool> visited(m, false);
  std::deque<int> queue;

  auto drain = [&]() {
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      for (int d : adj.ordered[static_cast<std::size_t>(c)]) {
        if (!t.connected(c, d)) connect_cells(t, adj, c, d, trace);
        for (int x : {c, d}) {
          for (int y : adj.ordered[static_cast<std::size_t>(x)]) {
            if (!visited[static_cast<std::size_t>(y)] && t.connected(y, c)) {
              visited[static_cast<std::size_t>(y)] = true;
              queue.push_back(y);
            }
          }
        }
      }
    }
  };

  if (m > 0) {
    visited[0] = true;
    queue.push_back(0);
    drain();
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t x = 0; x < m; ++x) {
        if (t.connected(static_cast<int>(x), 0)) continue;
        for (int y : adj.ordered[x]) {
          if (!t.connected(y, 0)) continue;
          connect_cells(t, adj, y, static_cast<int>(x), trace);
          if (t.connected(static_cast<int>(x), 0)) {
            note(trace, "second-pass", "cell " + std::to_string(x) + " via " + std::to_string(y));
            visited[x] = true;
            queue.push_back(static_cast<int>(x));
            drain();
            changed = true;
            break;
          }
        }
      }
    }
    if (t.components.set_count() > 1) proximity_pass(t, trace);
  }

  Stage2Result result;
  result.components = t.components.set_count();
  result.edges = t.edges();
  result.trees = std::move(t.trees);
  if (result.components > 1) {
    throw Error(ErrorKind::ForestRemains, std::to_string(result.components) + " components remain after stitching");
  }
  return result;
}

}  // namespace bpst
