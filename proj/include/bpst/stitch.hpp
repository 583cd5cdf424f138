#pragma once

// Stage 2: star trees per final cell, stitched into one planar tree by a BFS
// over adjacent cells.

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "bpst/disjoint_set.hpp"
#include "bpst/grid.hpp"
#include "bpst/star_tree.hpp"

namespace bpst {

struct CellAdjacency {
  /// Per final cell id: s-adjacent and d-adjacent cells, symmetric closure.
  std::vector<std::vector<int>> s_adjacent;
  std::vector<std::vector<int>> d_adjacent;
  /// BFS order per cell: right, up, left, down, then the four diagonals.
  std::vector<std::vector<int>> ordered;
};

CellAdjacency build_cell_adjacency(const CellComplex& complex);

/// Bucketed edge set for crossing queries.
class EdgeIndex {
 public:
  EdgeIndex(const Instance& inst, Coord bucket_side);

  void insert(const Edge& e);
  /// Indices (into edges()) of edges whose bounding box overlaps the box.
  std::vector<int> near(Point2 lo, Point2 hi) const;
  bool crosses(const Segment& s) const;
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::pair<Coord, Coord> bucket(Point2 p) const;
  static std::uint64_t key(Coord bx, Coord by);

  const Instance* inst_;
  Coord side_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

/// The growing tree T' and its bookkeeping.
struct GlobalTree {
  GlobalTree(const Instance& inst, const CellComplex& complex);

  const Instance* inst;
  const CellComplex* complex;
  Wide bound2;  // 128 * lambda^2
  EdgeIndex index;
  DisjointSet components;
  std::vector<StarTree> trees;  // per final cell

  const std::vector<Edge>& edges() const { return index.edges(); }
  bool connected(int cell_a, int cell_b);
  /// Bichromatic, within the length bound, crossing nothing, joining two components.
  bool admissible(const Edge& e);
  void add(const Edge& e);
};

/// A point of `candidates` closest to line ab (ties by index) such that no
/// edge of the tree, other than those incident to it, meets the interior of
/// triangle p-a-b. Throws SweepExhausted when none qualifies.
int find_unblocked_point(GlobalTree& tree, std::span<const int> candidates, Point2 a, Point2 b);

/// Maps canonical offsets (source cell at the origin, target to the right or
/// up-right) into world offsets: world = m * canonical.
struct Frame {
  int m00 = 1, m01 = 0, m10 = 0, m11 = 1;

  CellCoord apply(CellCoord c) const { return {m00 * c.col + m01 * c.row, m10 * c.col + m11 * c.row}; }
  Point2 apply(Point2 p) const { return {m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y}; }
};

struct Connection {
  std::string label;  // case1, case2.1, case2.2-1, case2.2-2
  std::vector<Edge> edges;
};

Connection connect_d_adjacent(GlobalTree& tree, int src, int dst, Trace* trace = nullptr);
Connection connect_s_adjacent(GlobalTree& tree, int src, int dst, Trace* trace = nullptr);

struct Stage2Result {
  std::vector<StarTree> trees;
  std::vector<Edge> edges;  // all edges of T'
  int components = 1;
};

/// Builds the star trees and stitches them. Throws ForestRemains if the
/// fallbacks cannot join everything.
Stage2Result stitch_all(const Instance& inst, const CellComplex& complex, Trace* trace = nullptr);

}  // namespace bpst
