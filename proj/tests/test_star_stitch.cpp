#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "bpst/error.hpp"
#include "bpst/generate.hpp"
#include "bpst/solve.hpp"
#include "bpst/star_tree.hpp"
#include "bpst/stitch.hpp"
#include "oracles.hpp"

using namespace bpst;

namespace {

Instance random_instance(std::mt19937_64& rng, int n, Coord range) {
  std::uniform_int_distribution<Coord> d(0, range);
  std::vector<Point2> pts;
  std::vector<Color> colors;
  while (static_cast<int>(pts.size()) < n) {
    const Point2 p{d(rng), d(rng)};
    if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
    pts.push_back(p);
    colors.push_back(rng() % 2 ? Color::Red : Color::Blue);
  }
  colors[0] = Color::Blue;
  colors[1] = Color::Red;
  return Instance::from(pts, colors);
}

std::vector<int> all_points(const Instance& inst) {
  std::vector<int> v(static_cast<std::size_t>(inst.size()));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void expect_planar_bichromatic_tree(const Instance& inst, const std::vector<int>& pts, const std::vector<Edge>& edges) {
  ASSERT_EQ(edges.size(), pts.size() - 1);
  std::vector<int> local(static_cast<std::size_t>(inst.size()), -1);
  for (std::size_t k = 0; k < pts.size(); ++k) local[static_cast<std::size_t>(pts[k])] = static_cast<int>(k);
  std::vector<std::pair<int, int>> renamed;
  for (auto [a, b] : edges) {
    EXPECT_NE(inst.color(a), inst.color(b));
    ASSERT_GE(local[static_cast<std::size_t>(a)], 0);
    ASSERT_GE(local[static_cast<std::size_t>(b)], 0);
    renamed.push_back({local[static_cast<std::size_t>(a)], local[static_cast<std::size_t>(b)]});
  }
  EXPECT_EQ(oracle::components(static_cast<int>(pts.size()), renamed), 1);
  EXPECT_TRUE(oracle::planar(inst, edges));
}

bool has_edge(const std::vector<Edge>& edges, int a, int b) {
  return std::find(edges.begin(), edges.end(), Edge{a, b}) != edges.end() ||
         std::find(edges.begin(), edges.end(), Edge{b, a}) != edges.end();
}

}  // namespace

TEST(StarTree, PlanarBichromaticSpanningOnRandomSets) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const Instance inst = random_instance(rng, n, 1'000'000);
    const std::vector<int> pts = all_points(inst);
    Trace trace;
    const StarTree t = build_star_tree(inst, pts, &trace);
    EXPECT_EQ(t.center, 1);  // lowest-index red
    expect_planar_bichromatic_tree(inst, pts, t.edges);
    EXPECT_EQ(t.fallback, trace.has("star-degenerate"));
    if (!t.fallback) {
      // A red that is first on its ray from the center hangs off its cone's
      // blue; reds further out chain to the point before them.
      for (int r : pts) {
        if (inst.color(r) != Color::Red || r == t.center) continue;
        const bool first_on_ray = std::none_of(pts.begin(), pts.end(), [&](int q) {
          return q != r && q != t.center && on_segment(inst.pos(t.center), inst.pos(r), inst.pos(q));
        });
        if (first_on_ray) {
          EXPECT_TRUE(has_edge(t.edges, r, cone_blue(inst, t, r))) << trial;
        }
      }
    }
  }
}

TEST(StarTree, SmallDegenerateSetsSucceedExactlyWhenFeasible) {
  // A 5x5 lattice makes collinear rays common; subset enumeration decides
  // whether any planar bichromatic spanning tree exists.
  std::mt19937_64 rng(32);
  int fallbacks = 0, infeasible = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Instance inst = random_instance(rng, n, 4);
    const std::vector<int> pts = all_points(inst);
    const bool feasible = oracle::brute_opt2(inst) >= 0;
    infeasible += !feasible;
    try {
      const StarTree t = build_star_tree(inst, pts);
      ASSERT_TRUE(feasible) << trial;
      expect_planar_bichromatic_tree(inst, pts, t.edges);
      fallbacks += t.fallback;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvariantViolation);
      EXPECT_FALSE(feasible) << trial;
    }
  }
  EXPECT_GT(fallbacks, 0);
  EXPECT_GT(infeasible, 0);
}

TEST(StarTree, CollinearSameColorsFallBack) {
  // Two blues behind one another on a ray and a red beyond them.
  const Point2 pts[] = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {3, 1}};
  const Color colors[] = {Color::Red, Color::Blue, Color::Blue, Color::Blue, Color::Red};
  const Instance inst = Instance::from(pts, colors);
  const StarTree t = build_star_tree(inst, all_points(inst));
  expect_planar_bichromatic_tree(inst, all_points(inst), t.edges);
}

TEST(StarTree, UnsolvableSetThrows) {
  const Point2 pts[] = {{0, 0}, {1, 0}, {2, 0}};
  const Color colors[] = {Color::Red, Color::Red, Color::Blue};
  const Instance inst = Instance::from(pts, colors);
  try {
    build_star_tree(inst, all_points(inst));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvariantViolation);
  }
}

TEST(AttachExternalPoint, EdgeCrossesNoTreeEdge) {
  std::mt19937_64 rng(77);
  const Coord side = 1'000'000;
  int primary = 0, trials = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 20);
    std::vector<Point2> pts;
    std::vector<Color> colors;
    std::uniform_int_distribution<Coord> in(0, side);
    while (static_cast<int>(pts.size()) < n) {
      const Point2 p{in(rng), in(rng)};
      if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
      pts.push_back(p);
      colors.push_back(rng() % 2 ? Color::Red : Color::Blue);
    }
    colors[0] = Color::Red;
    colors[1] = Color::Blue;
    // External point outside the cell's box on a random side.
    std::uniform_int_distribution<Coord> out(side + 1, 3 * side);
    Point2 p{in(rng), out(rng)};
    if (rng() % 2) std::swap(p.x, p.y);
    if (rng() % 2) p.x = side - p.x;
    pts.push_back(p);
    colors.push_back(rng() % 2 ? Color::Red : Color::Blue);
    const Instance inst = Instance::from(pts, colors);
    std::vector<int> members(static_cast<std::size_t>(n));
    std::iota(members.begin(), members.end(), 0);
    const StarTree t = build_star_tree(inst, members);
    const AttachResult r = attach_external_point(inst, t, n, [](const Edge&) { return true; });
    ++trials;
    primary += r.primary;
    EXPECT_TRUE(r.edge.first == n || r.edge.second == n);
    EXPECT_NE(inst.color(r.edge.first), inst.color(r.edge.second));
    for (const Edge& e : t.edges) {
      ASSERT_FALSE(oracle::properly_cross(inst.pos(e.first), inst.pos(e.second), inst.pos(r.edge.first),
                                          inst.pos(r.edge.second)))
          << trial;
    }
  }
  EXPECT_GT(primary, trials * 9 / 10);
}

TEST(AttachExternalPoint, NothingAdmissibleThrows) {
  const Point2 pts[] = {{0, 0}, {1, 0}, {5, 5}};
  const Color colors[] = {Color::Red, Color::Blue, Color::Blue};
  const Instance inst = Instance::from(pts, colors);
  const std::vector<int> members{0, 1};
  const StarTree t = build_star_tree(inst, members);
  try {
    attach_external_point(inst, t, 2, [](const Edge&) { return false; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AttachFailure);
  }
}

TEST(FindUnblockedPoint, ReturnsNearestPointWithEmptyTriangle) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GenSpec spec;
    spec.family = seed % 2 ? Family::Uniform : Family::GridStress;
    spec.n = 120;
    spec.seed = seed;
    const Instance inst = generate(spec);
    const CellComplex cx = run_stage1(inst, compute_lambda(inst).lambda2);
    GlobalTree t(inst, cx);
    for (const FinalCell& fc : cx.final_cells) {
      t.trees.push_back(build_star_tree(inst, fc.point_indices));
      for (const Edge& e : t.trees.back().edges) t.add(e);
    }
    std::mt19937_64 rng(seed);
    for (const FinalCell& fc : cx.final_cells) {
      // Boundary segment: a random side of the base square.
      const ConvexPolygon sq = cx.frame.square(fc.base);
      const std::size_t k = rng() % 4;
      const Point2 a = sq.vertices[k], b = sq.vertices[(k + 1) % 4];
      int got = -1;
      try {
        got = find_unblocked_point(t, fc.point_indices, a, b);
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SweepExhausted);
      }
      auto blocked = [&](int p) {
        for (const Edge& e : t.edges()) {
          if (e.first == p || e.second == p) continue;
          if (oracle::meets_open_triangle(inst.pos(e.first), inst.pos(e.second), inst.pos(p), a, b)) return true;
        }
        return false;
      };
      auto key = [&](int p) {
        Wide c = cross(a, b, inst.pos(p));
        return std::pair{c < 0 ? -c : c, p};
      };
      if (got < 0) {
        for (int p : fc.point_indices) EXPECT_TRUE(blocked(p));
        continue;
      }
      ++checked;
      EXPECT_FALSE(blocked(got));
      for (int p : fc.point_indices) {
        if (key(p) < key(got)) {
          EXPECT_TRUE(blocked(p));
        }
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Stitch, CellAdjacencyIsSymmetricAndOrdered) {
  GenSpec spec;
  spec.family = Family::GridStress;
  spec.n = 250;
  spec.seed = 8;
  const Instance inst = generate(spec);
  const CellComplex cx = run_stage1(inst, compute_lambda(inst).lambda2);
  const CellAdjacency adj = build_cell_adjacency(cx);
  const int m = static_cast<int>(cx.final_cells.size());
  for (int c = 0; c < m; ++c) {
    for (int d : adj.s_adjacent[static_cast<std::size_t>(c)]) {
      const auto& back = adj.s_adjacent[static_cast<std::size_t>(d)];
      EXPECT_NE(std::find(back.begin(), back.end(), c), back.end());
    }
    for (int d : adj.d_adjacent[static_cast<std::size_t>(c)]) {
      const auto& back = adj.d_adjacent[static_cast<std::size_t>(d)];
      EXPECT_NE(std::find(back.begin(), back.end(), c), back.end());
      const CellCoord a = cx.final_cells[static_cast<std::size_t>(c)].base;
      const CellCoord b = cx.final_cells[static_cast<std::size_t>(d)].base;
      EXPECT_EQ(std::abs(a.col - b.col), 1);
      EXPECT_EQ(std::abs(a.row - b.row), 1);
    }
    const auto& ord = adj.ordered[static_cast<std::size_t>(c)];
    EXPECT_EQ(ord.size(), adj.s_adjacent[static_cast<std::size_t>(c)].size() + adj.d_adjacent[static_cast<std::size_t>(c)].size());
  }
}

TEST(Stitch, EdgeBoundsAndTreeOnCorpus) {
  for (Family f : {Family::Uniform, Family::Clusters, Family::Checker, Family::GridStress}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      GenSpec spec;
      spec.family = f;
      spec.n = 30 + static_cast<int>(seed) * 25;
      spec.seed = seed;
      const Instance inst = generate(spec);
      const Solution s = solve(inst);
      const oracle::cpp_int l2 = oracle::lambda2(inst);
      ASSERT_EQ(oracle::cpp_int(s.lambda.lambda2), l2);
      ASSERT_EQ(s.edges.size(), static_cast<std::size_t>(inst.size() - 1));
      EXPECT_EQ(oracle::components(inst.size(), s.edges), 1);
      EXPECT_TRUE(oracle::planar(inst, s.edges));
      for (const Edge& e : s.star_edges) EXPECT_LE(oracle::dist2(inst.pos(e.first), inst.pos(e.second)), 50 * l2);
      for (const Edge& e : s.link_edges) EXPECT_LE(oracle::dist2(inst.pos(e.first), inst.pos(e.second)), 128 * l2);
      for (const Edge& e : s.edges) EXPECT_NE(inst.color(e.first), inst.color(e.second));
    }
  }
}
