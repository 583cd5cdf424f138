#include "bpst/bottleneck.hpp"

#include <algorithm>
#include <cmath>

#include "bpst/disjoint_set.hpp"
#include "bpst/error.hpp"

namespace bpst {

namespace {

void require_both_colors(const Instance& inst) {
  if (inst.size() >= 2 && (inst.count(Color::Red) == 0 || inst.count(Color::Blue) == 0)) {
    throw Error(ErrorKind::MonochromaticInstance, "both colors are required when n >= 2");
  }
}

// Joins every red-blue pair within the threshold; returns the forest edges.
std::vector<Edge> threshold_forest(const Instance& inst, Wide d2, DisjointSet& dsu) {
  std::vector<Edge> forest;
  for (int i = 0; i < inst.size(); ++i) {
    if (inst.color(i) != Color::Red) continue;
    for (int j = 0; j < inst.size(); ++j) {
      if (inst.color(j) != Color::Blue) continue;
      if (distance2(inst.pos(i), inst.pos(j)) <= d2 && dsu.unite(i, j)) forest.emplace_back(i, j);
    }
  }
  return forest;
}

}  // namespace

double BottleneckResult::lambda() const { return std::sqrt(length2_to_double(lambda2)); }

std::vector<Wide> bichromatic_candidate_distances(const Instance& inst) {
  require_both_colors(inst);
  std::vector<Wide> out;
  for (int i = 0; i < inst.size(); ++i) {
    if (inst.color(i) != Color::Red) continue;
    for (int j = 0; j < inst.size(); ++j) {
      if (inst.color(j) == Color::Blue) out.push_back(distance2(inst.pos(i), inst.pos(j)));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool connected_under_threshold(const Instance& inst, Wide d2) {
  if (inst.size() <= 1) return true;
  DisjointSet dsu(inst.size());
  threshold_forest(inst, d2, dsu);
  return dsu.set_count() == 1;
}

BottleneckResult compute_lambda(const Instance& inst) {
  if (inst.size() == 0) throw Error(ErrorKind::Parse, "empty instance");
  if (inst.size() == 1) return {};
  require_both_colors(inst);
  // Prim over the complete bipartite graph; the longest tree edge of a
  // minimum spanning tree is the minimum bottleneck.
  const auto n = static_cast<std::size_t>(inst.size());
  std::vector<bool> in_tree(n, false);
  std::vector<Wide> best(n, -1);
  std::vector<int> link(n, -1);
  BottleneckResult result;
  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j] || inst.color(static_cast<int>(j)) == inst.color(static_cast<int>(current))) continue;
      const Wide d = distance2(inst.pos(static_cast<int>(current)), inst.pos(static_cast<int>(j)));
      if (best[j] < 0 || d < best[j]) {
        best[j] = d;
        link[j] = static_cast<int>(current);
      }
    }
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in_tree[j] && best[j] >= 0 && (next == n || best[j] < best[next])) next = j;
    }
    in_tree[next] = true;
    result.lambda2 = std::max(result.lambda2, best[next]);
    result.witness_edges.emplace_back(link[next], static_cast<int>(next));
    current = next;
  }
  return result;
}

}  // namespace bpst
