#pragma once

// Minimum-bottleneck bichromatic spanning tree, crossings allowed. Its longest
// edge (lambda) lower-bounds every bichromatic spanning tree, planar or not.

#include <utility>
#include <vector>

#include "bpst/instance.hpp"

namespace bpst {

using Edge = std::pair<int, int>;

struct BottleneckResult {
  Wide lambda2 = 0;  // squared, internal units
  std::vector<Edge> witness_edges;

  double lambda() const;  // input units, display only
};

/// All red-blue squared distances, ascending and deduplicated.
std::vector<Wide> bichromatic_candidate_distances(const Instance& inst);

/// Is the graph with every red-blue pair at squared distance <= d2 connected?
bool connected_under_threshold(const Instance& inst, Wide d2);

/// Prim on the complete red-blue graph; the witness is the spanning tree it
/// grows. n == 1 yields lambda 0 and no edges.
BottleneckResult compute_lambda(const Instance& inst);

}  // namespace bpst
