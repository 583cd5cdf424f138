#pragma once

// The full pipeline: lambda, grid repair, star trees, stitching, verification.

#include <optional>
#include <vector>

#include "bpst/bottleneck.hpp"
#include "bpst/grid.hpp"
#include "bpst/io.hpp"
#include "bpst/stitch.hpp"
#include "bpst/trace.hpp"
#include "bpst/verify.hpp"

namespace bpst {

struct SolveOptions {
  std::uint64_t grid_offset_seed = 0;
};

struct Solution {
  BottleneckResult lambda;
  std::optional<CellComplex> complex;  // absent for n == 1
  std::vector<StarTree> trees;
  std::vector<Edge> edges;       // T', star edges first
  std::vector<Edge> star_edges;  // Stage 2.1
  std::vector<Edge> link_edges;  // Stage 2.2
  TreeReport report;
  Trace trace;

  /// bottleneck^2 <= 128 lambda^2, exactly.
  bool ratio_bound_ok() const;
};

/// Throws Error with the failing stage named in the message.
Solution solve(const Instance& inst, const SolveOptions& options = {});

ResultFile make_result(const Instance& inst, const Solution& s);

}  // namespace bpst
