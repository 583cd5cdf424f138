#pragma once

// Independent checks of a proposed tree and a brute-force exact solver for
// small instances. Nothing here calls into the construction stages.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bpst/bottleneck.hpp"
#include "bpst/instance.hpp"

namespace bpst {

struct TreeReport {
  bool is_spanning = false;
  bool is_bichromatic = false;
  bool is_planar = false;
  Wide bottleneck2 = 0;
  std::optional<std::pair<Edge, Edge>> crossing_witness;
  int component_count = 0;

  bool ok() const { return is_spanning && is_bichromatic && is_planar; }
};

TreeReport verify_tree(const Instance& inst, std::span<const Edge> edges);

struct ExactResult {
  Wide opt2 = 0;
  std::vector<Edge> witness;
};

inline constexpr int kDefaultExactMaxN = 10;

/// Minimum bottleneck over planar bichromatic spanning trees, by binary search
/// over red-blue distances and a backtracking feasibility test. Throws
/// InstanceTooLarge above max_n.
ExactResult exact_bottleneck_planar_bst(const Instance& inst, int max_n = kDefaultExactMaxN);

/// Is there a planar bichromatic spanning tree using only edges of squared
/// length <= d2? On success the tree is stored in witness.
bool planar_tree_feasible(const Instance& inst, Wide d2, std::vector<Edge>* witness = nullptr);

}  // namespace bpst
