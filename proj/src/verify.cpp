#include "bpst/verify.hpp"

#include <algorithm>
#include <functional>

#include "bpst/error.hpp"

namespace bpst {

namespace {

int count_components(int n, std::span<const Edge> edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int components = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++components;
    seen[static_cast<std::size_t>(s)] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

Segment segment_of(const Instance& inst, const Edge& e) { return {inst.pos(e.first), inst.pos(e.second)}; }

}  // namespace

TreeReport verify_tree(const Instance& inst, std::span<const Edge> edges) {
  TreeReport report;
  const int n = inst.size();
  bool indices_ok = true;
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) indices_ok = false;
  }
  if (!indices_ok) return report;

  report.component_count = count_components(n, edges);
  report.is_spanning = static_cast<int>(edges.size()) == n - 1 && report.component_count == 1;
  report.is_bichromatic = std::all_of(edges.begin(), edges.end(), [&](const Edge& e) { return inst.color(e.first) != inst.color(e.second); });
  for (const Edge& e : edges) report.bottleneck2 = std::max(report.bottleneck2, distance2(inst.pos(e.first), inst.pos(e.second)));

  // Sort by left x so that only overlapping x-ranges are compared.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto lo_x = [&](std::size_t i) { return std::min(inst.pos(edges[i].first).x, inst.pos(edges[i].second).x); };
  auto hi_x = [&](std::size_t i) { return std::max(inst.pos(edges[i].first).x, inst.pos(edges[i].second).x); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo_x(a) < lo_x(b); });
  report.is_planar = true;
  for (std::size_t i = 0; i < order.size() && report.is_planar; ++i) {
    const Segment si = segment_of(inst, edges[order[i]]);
    for (std::size_t j = i + 1; j < order.size() && lo_x(order[j]) <= hi_x(order[i]); ++j) {
      if (segments_properly_cross(si, segment_of(inst, edges[order[j]]))) {
        report.is_planar = false;
        report.crossing_witness = std::make_pair(edges[order[i]], edges[order[j]]);
        break;
      }
    }
  }
  return report;
}

bool planar_tree_feasible(const Instance& inst, Wide d2, std::vector<Edge>* witness) {
  const int n = inst.size();
  if (n <= 1) {
    if (witness != nullptr) witness->clear();
    return true;
  }
  std::vector<Edge> pool;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (inst.color(i) != inst.color(j) && distance2(inst.pos(i), inst.pos(j)) <= d2) pool.emplace_back(i, j);
    }
  }
  std::sort(pool.begin(), pool.end(), [&](const Edge& a, const Edge& b) {
    const Wide la = distance2(inst.pos(a.first), inst.pos(a.second));
    const Wide lb = distance2(inst.pos(b.first), inst.pos(b.second));
    return la != lb ? la < lb : a < b;
  });
  const std::size_t m = pool.size();
  std::vector<std::vector<char>> crossing(m, std::vector<char>(m, 0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const bool c = segments_properly_cross(segment_of(inst, pool[a]), segment_of(inst, pool[b]));
      crossing[a][b] = crossing[b][a] = c ? 1 : 0;
    }
  }

  std::vector<int> chosen;
  std::vector<char> banned(m, 0);  // forbidden by branching or crossing a chosen edge

  // Union-find is rebuilt per node; n is at most a dozen.
  auto labels = [&](bool with_available) {
    std::vector<int> comp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
      while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)];
      return x;
    };
    auto join = [&](std::size_t e) {
      const int a = find(pool[e].first);
      const int b = find(pool[e].second);
      if (a != b) comp[static_cast<std::size_t>(a)] = b;
    };
    for (int e : chosen) join(static_cast<std::size_t>(e));
    if (with_available) {
      for (std::size_t e = 0; e < m; ++e) {
        if (!banned[e]) join(e);
      }
    }
    for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i)] = find(i);
    return comp;
  };

  std::function<bool()> search = [&]() -> bool {
    if (static_cast<int>(chosen.size()) == n - 1) return true;
    const auto reach = labels(true);
    if (std::any_of(reach.begin(), reach.end(), [&](int c) { return c != reach[0]; })) return false;
    const auto comp = labels(false);
    // Branch on the component whose cut has the fewest usable edges.
    std::vector<std::vector<std::size_t>> cut(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < m; ++e) {
      if (banned[e]) continue;
      const int a = comp[static_cast<std::size_t>(pool[e].first)];
      const int b = comp[static_cast<std::size_t>(pool[e].second)];
      if (a == b) continue;
      cut[static_cast<std::size_t>(a)].push_back(e);
      cut[static_cast<std::size_t>(b)].push_back(e);
    }
    std::size_t pick = static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(comp[static_cast<std::size_t>(i)]);
      if (c != static_cast<std::size_t>(i)) continue;
      if (pick == static_cast<std::size_t>(n) || cut[c].size() < cut[pick].size()) pick = c;
    }
    const std::vector<char> saved = banned;
    std::vector<std::size_t> tried;  // earlier branches exclude these edges
    for (std::size_t e : cut[pick]) {
      banned = saved;
      for (std::size_t t : tried) banned[t] = 1;
      chosen.push_back(static_cast<int>(e));
      banned[e] = 1;
      for (std::size_t f = 0; f < m; ++f) {
        if (crossing[e][f]) banned[f] = 1;
      }
      if (search()) return true;
      chosen.pop_back();
      tried.push_back(e);
    }
    banned = saved;
    return false;
  };

  const bool found = search();
  if (found && witness != nullptr) {
    witness->clear();
    for (int e : chosen) witness->push_back(pool[static_cast<std::size_t>(e)]);
  }
  return found;
}

ExactResult exact_bottleneck_planar_bst(const Instance& inst, int max_n) {
  if (inst.size() > max_n) {
    throw Error(ErrorKind::InstanceTooLarge,
                "exact solver handles at most " + std::to_string(max_n) + " points, got " + std::to_string(inst.size()));
  }
  ExactResult result;
  if (inst.size() <= 1) return result;
  if (inst.count(Color::Red) == 0 || inst.count(Color::Blue) == 0) {
    throw Error(ErrorKind::MonochromaticInstance, "both colors are required when n >= 2");
  }
  std::vector<Wide> candidates;
  for (int i = 0; i < inst.size(); ++i) {
    for (int j = i + 1; j < inst.size(); ++j) {
      if (inst.color(i) != inst.color(j)) candidates.push_back(distance2(inst.pos(i), inst.pos(j)));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (!planar_tree_feasible(inst, candidates.back(), &result.witness)) {
    throw Error(ErrorKind::Infeasible, "no planar bichromatic spanning tree found");
  }
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (planar_tree_feasible(inst, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  result.opt2 = candidates[lo];
  planar_tree_feasible(inst, result.opt2, &result.witness);
  return result;
}

}  // namespace bpst
