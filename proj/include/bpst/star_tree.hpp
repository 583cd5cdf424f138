#pragma once

// Planar bichromatic spanning tree of the points of one final cell, built as a
// star around a red center, plus the rule for attaching an outside point.

#include <functional>
#include <span>
#include <vector>

#include "bpst/bottleneck.hpp"
#include "bpst/instance.hpp"
#include "bpst/trace.hpp"

namespace bpst {

struct StarTree {
  int center = -1;  // lowest-index red point
  std::vector<int> points;
  std::vector<Edge> edges;
  /// Nearest blue of every blue ray from the center, counterclockwise from
  /// the positive x axis. Empty when the greedy fallback built the tree.
  std::vector<int> ray_blues;
  bool fallback = false;
};

/// Builds the star tree. Collinear configurations the star cannot handle
/// (a blue hidden behind a red on one ray, equal colors in a row, red edges
/// overlapping) switch to a shortest-first non-crossing construction, and to
/// exhaustive search for cells of at most 12 points if that gets stuck. The
/// result is always checked to be a planar bichromatic spanning tree and an
/// InvariantViolation is thrown otherwise.
StarTree build_star_tree(const Instance& inst, std::span<const int> points, Trace* trace = nullptr);

/// The blue a red point would be joined to by the cone rule.
int cone_blue(const Instance& inst, const StarTree& tree, int red);

/// True if the edges are pairwise non-crossing.
bool edges_planar(const Instance& inst, std::span<const Edge> edges);

struct AttachResult {
  Edge edge;            // (tree point, outside point)
  bool primary = true;  // false when an alternate candidate was used
};

using EdgePredicate = std::function<bool(const Edge&)>;

/// Connects outside point p to the tree. The primary rule joins a blue p to
/// the center, or to the red end of the first tree edge crossing segment
/// p-center, and a red p to the blue its cone would use. If that edge crosses
/// the tree or fails `admissible`, opposite-colored tree points are tried by
/// increasing distance. Throws AttachFailure when nothing works.
AttachResult attach_external_point(const Instance& inst, const StarTree& tree, int p,
                                   const EdgePredicate& admissible, Trace* trace = nullptr);

}  // namespace bpst
