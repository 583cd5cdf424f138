#include "bpst/star_tree.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "bpst/disjoint_set.hpp"
#include "bpst/error.hpp"
#include "bpst/verify.hpp"

namespace bpst {

namespace {

// Sign of a * sqrt(w) + b * sqrt(u) for non-negative u, w.
int sign_of_root_sum(Wide a, Wide w, Wide b, Wide u) {
  const int sa = sign(a);
  const int sb = sign(b);
  if (sa == sb || sb == 0) return sa;
  if (sa == 0) return sb;
  const BigInt lhs = BigInt(a) * BigInt(a) * BigInt(w);
  const BigInt rhs = BigInt(b) * BigInt(b) * BigInt(u);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

Point2 origin() { return Point2{0, 0}; }

// True iff red direction r, inside the cone from ray d1 counterclockwise to
// ray d2 (angle >= pi), lies on the d1 side of the bisector; 0 on it.
int bisector_side(Point2 d1, Point2 d2, Point2 r) {
  const Wide c12 = cross(origin(), d1, d2);
  if (c12 == 0) {  // straight angle: the bisector is perpendicular to d1
    const Wide t = dot(origin(), d1, r);
    return sign(t);
  }
  const Wide a = cross(origin(), d1, r);
  const Wide b = cross(origin(), d2, r);
  return sign_of_root_sum(a, distance2(origin(), d2), b, distance2(origin(), d1));
}

bool is_tree(const Instance& inst, std::span<const int> points, std::span<const Edge> edges) {
  if (edges.size() + 1 != points.size()) return false;
  std::vector<int> local(static_cast<std::size_t>(inst.size()), -1);
  for (std::size_t k = 0; k < points.size(); ++k) local[static_cast<std::size_t>(points[k])] = static_cast<int>(k);
  DisjointSet ds(static_cast<int>(points.size()));
  for (const auto& [a, b] : edges) {
    const int la = local[static_cast<std::size_t>(a)];
    const int lb = local[static_cast<std::size_t>(b)];
    if (la < 0 || lb < 0 || inst.color(a) == inst.color(b) || !ds.unite(la, lb)) return false;
  }
  return true;
}

// Shortest-first: add bichromatic pairs joining two components unless they
// cross an edge already taken.
std::vector<Edge> greedy_planar_tree(const Instance& inst, std::span<const int> points) {
  std::vector<Edge> pairs;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (inst.color(points[a]) != inst.color(points[b])) pairs.emplace_back(points[a], points[b]);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [&](const Edge& e, const Edge& f) {
    const Wide le = distance2(inst.pos(e.first), inst.pos(e.second));
    const Wide lf = distance2(inst.pos(f.first), inst.pos(f.second));
    return le != lf ? le < lf : e < f;
  });
  std::vector<int> local(static_cast<std::size_t>(inst.size()), -1);
  for (std::size_t k = 0; k < points.size(); ++k) local[static_cast<std::size_t>(points[k])] = static_cast<int>(k);
  DisjointSet ds(static_cast<int>(points.size()));
  std::vector<Edge> edges;
  for (const Edge& e : pairs) {
    if (ds.same(local[static_cast<std::size_t>(e.first)], local[static_cast<std::size_t>(e.second)])) continue;
    const Segment s{inst.pos(e.first), inst.pos(e.second)};
    const bool crosses = std::any_of(edges.begin(), edges.end(), [&](const Edge& f) {
      return segments_properly_cross(s, Segment{inst.pos(f.first), inst.pos(f.second)});
    });
    if (crosses) continue;
    ds.unite(local[static_cast<std::size_t>(e.first)], local[static_cast<std::size_t>(e.second)]);
    edges.push_back(e);
    if (edges.size() + 1 == points.size()) break;
  }
  return edges;
}

// Exhaustive search over the cell's own points, for the rare degenerate
// cells where shortest-first gets stuck. Empty if no tree exists or the cell
// is too large to search.
std::vector<Edge> exact_planar_tree(const Instance& inst, std::span<const int> points) {
  constexpr std::size_t kMaxExactPoints = 12;
  if (points.size() > kMaxExactPoints) return {};
  std::vector<Point2> pos;
  std::vector<Color> colors;
  Wide longest = 0;
  for (int i : points) {
    pos.push_back(inst.pos(i));
    colors.push_back(inst.color(i));
    for (int j : points) longest = std::max(longest, distance2(inst.pos(i), inst.pos(j)));
  }
  std::vector<Edge> local;
  if (!planar_tree_feasible(Instance::from(pos, colors), longest, &local)) return {};
  std::vector<Edge> edges;
  for (auto [a, b] : local) edges.emplace_back(points[static_cast<std::size_t>(a)], points[static_cast<std::size_t>(b)]);
  return edges;
}

}  // namespace

bool edges_planar(const Instance& inst, std::span<const Edge> edges) {
  for (std::size_t a = 0; a < edges.size(); ++a) {
    const Segment sa{inst.pos(edges[a].first), inst.pos(edges[a].second)};
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      if (segments_properly_cross(sa, Segment{inst.pos(edges[b].first), inst.pos(edges[b].second)})) return false;
    }
  }
  return true;
}

int cone_blue(const Instance& inst, const StarTree& tree, int red) {
  const auto& rays = tree.ray_blues;
  if (rays.empty()) throw Error(ErrorKind::InvariantViolation, "tree has no blue rays");
  const Point2 s = inst.pos(tree.center);
  if (rays.size() == 1) return rays.front();
  const Point2 r = inst.pos(red) - s;
  // Cone k runs from ray k counterclockwise to ray k+1 (cyclically); a
  // direction on ray k belongs to cone k.
  std::size_t k = rays.size() - 1;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (compare_angle(inst.pos(rays[i]) - s, r) <= 0) k = i;
  }
  const int b1 = rays[k];
  const int b2 = rays[(k + 1) % rays.size()];
  const Point2 d1 = inst.pos(b1) - s;
  const Point2 d2 = inst.pos(b2) - s;
  const Wide c = cross(origin(), d1, d2);
  const bool reflex = c < 0 || (c == 0 && dot(origin(), d1, d2) < 0);
  if (!reflex) return b1;
  const int side = bisector_side(d1, d2, r);
  if (side > 0) return b1;
  if (side < 0) return b2;
  return std::min(b1, b2);
}

StarTree build_star_tree(const Instance& inst, std::span<const int> points, Trace* trace) {
  StarTree tree;
  tree.points.assign(points.begin(), points.end());
  std::sort(tree.points.begin(), tree.points.end());
  for (int i : tree.points) {
    if (inst.color(i) == Color::Red) {
      tree.center = i;
      break;
    }
  }
  const bool has_blue = std::any_of(tree.points.begin(), tree.points.end(), [&](int i) { return inst.color(i) == Color::Blue; });
  if (tree.center < 0 || !has_blue) throw Error(ErrorKind::InvariantViolation, "star tree needs both colors");

  const Point2 s = inst.pos(tree.center);
  std::vector<int> others;
  for (int i : tree.points) {
    if (i != tree.center) others.push_back(i);
  }
  std::sort(others.begin(), others.end(), [&](int a, int b) {
    const int c = compare_angle(inst.pos(a) - s, inst.pos(b) - s);
    if (c != 0) return c < 0;
    const Wide da = distance2(s, inst.pos(a));
    const Wide db = distance2(s, inst.pos(b));
    return da != db ? da < db : a < b;
  });

  bool degenerate = false;
  std::vector<int> pending_reds;
  for (std::size_t i = 0; i < others.size();) {
    std::size_t j = i + 1;
    while (j < others.size() && compare_angle(inst.pos(others[i]) - s, inst.pos(others[j]) - s) == 0) ++j;
    if (inst.color(others[i]) == Color::Blue) {
      tree.ray_blues.push_back(others[i]);
      tree.edges.emplace_back(tree.center, others[i]);
      for (std::size_t k = i + 1; k < j; ++k) {
        if (inst.color(others[k]) == inst.color(others[k - 1])) degenerate = true;
        tree.edges.emplace_back(others[k - 1], others[k]);
      }
    } else {
      for (std::size_t k = i; k < j; ++k) {
        if (inst.color(others[k]) == Color::Blue) degenerate = true;
        pending_reds.push_back(others[k]);
      }
    }
    i = j;
  }
  if (!degenerate) {
    for (int r : pending_reds) tree.edges.emplace_back(cone_blue(inst, tree, r), r);
    degenerate = !is_tree(inst, tree.points, tree.edges) || !edges_planar(inst, tree.edges);
  }
  if (degenerate) {
    if (trace != nullptr) trace->add("star-degenerate", "center " + std::to_string(tree.center));
    tree.edges = greedy_planar_tree(inst, tree.points);
    tree.ray_blues.clear();
    tree.fallback = true;
    if (!is_tree(inst, tree.points, tree.edges)) {
      if (trace != nullptr) trace->add("star-exact", "center " + std::to_string(tree.center));
      tree.edges = exact_planar_tree(inst, tree.points);
    }
    if (!is_tree(inst, tree.points, tree.edges)) {
      throw Error(ErrorKind::InvariantViolation,
                  "no planar bichromatic tree found for the cell of point " + std::to_string(tree.center));
    }
  }
  return tree;
}

AttachResult attach_external_point(const Instance& inst, const StarTree& tree, int p,
                                   const EdgePredicate& admissible, Trace* trace) {
  const Point2 pp = inst.pos(p);
  auto crosses_tree = [&](const Segment& seg) {
    return std::any_of(tree.edges.begin(), tree.edges.end(), [&](const Edge& e) {
      return segments_properly_cross(seg, Segment{inst.pos(e.first), inst.pos(e.second)});
    });
  };
  auto usable = [&](int q) {
    const Edge e{q, p};
    return inst.color(q) != inst.color(p) && !crosses_tree(Segment{inst.pos(q), pp}) && admissible(e);
  };

  int primary = -1;
  if (inst.color(p) == Color::Blue) {
    const Point2 s = inst.pos(tree.center);
    const Segment to_center{pp, s};
    std::optional<Fraction> best;
    for (const Edge& e : tree.edges) {
      const Point2 a = inst.pos(e.first);
      const Point2 b = inst.pos(e.second);
      if (!segments_properly_cross(to_center, Segment{a, b})) continue;
      const Wide f0 = cross(a, b, pp);
      const Wide f1 = cross(a, b, s);
      // Parameter of the crossing along p -> s; collinear overlaps count at 0.
      Fraction t{0, 1};
      if (f0 != f1) {
        t = Fraction{BigInt(f0), BigInt(f0 - f1)};
        if (t.den < 0) {
          t.num = -t.num;
          t.den = -t.den;
        }
      }
      if (!best || t < *best) {
        best = t;
        primary = inst.color(e.first) == Color::Red ? e.first : e.second;
      }
    }
    if (!best) primary = tree.center;
  } else if (!tree.ray_blues.empty()) {
    primary = cone_blue(inst, tree, p);
  }
  if (primary >= 0 && usable(primary)) return {{primary, p}, true};

  std::vector<int> candidates;
  for (int q : tree.points) {
    if (q != primary && inst.color(q) != inst.color(p)) candidates.push_back(q);
  }
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    const Wide da = distance2(pp, inst.pos(a));
    const Wide db = distance2(pp, inst.pos(b));
    return da != db ? da < db : a < b;
  });
  for (int q : candidates) {
    if (usable(q)) {
      if (trace != nullptr) trace->add("attach-alternate", "point " + std::to_string(p) + " -> " + std::to_string(q));
      return {{q, p}, false};
    }
  }
  throw Error(ErrorKind::AttachFailure, "no admissible edge attaches point " + std::to_string(p));
}

}  // namespace bpst
