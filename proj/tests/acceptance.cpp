// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are on
// exact squared lengths, so no floating tolerance is involved anywhere.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "bpst/error.hpp"
#include "bpst/generate.hpp"
#include "bpst/io.hpp"
#include "bpst/solve.hpp"
#include "bpst/verify.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace bpst;

namespace {

constexpr Wide kStarBound = 50;   // (5 sqrt 2)^2, in units of lambda^2
constexpr Wide kLinkBound = 128;  // (8 sqrt 2)^2

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s\n", id, name.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct CorpusRun {
  Instance inst;
  std::optional<Solution> solution;
  std::string error;
};

// 250 instances per family, n uniform in [2, 500], seeds fixed.
std::vector<CorpusRun> run_corpus() {
  std::vector<CorpusRun> out;
  XorShift64Star sizes(20240601);
  for (Family f : {Family::Uniform, Family::Clusters, Family::Chain, Family::Checker}) {
    for (int k = 0; k < 250; ++k) {
      GenSpec spec;
      spec.family = f;
      spec.n = 2 + static_cast<int>(sizes.below(499));
      spec.seed = 1000 + static_cast<std::uint64_t>(k);
      CorpusRun run{generate(spec), std::nullopt, {}};
      try {
        run.solution = solve(run.inst);
      } catch (const Error& e) {
        run.error = e.what();
      }
      out.push_back(std::move(run));
    }
  }
  return out;
}

Wide d2(const Instance& inst, const Edge& e) { return distance2(inst.pos(e.first), inst.pos(e.second)); }

void criterion1(const std::vector<CorpusRun>& corpus) {
  int bad = 0;
  for (const auto& run : corpus) {
    if (!run.solution) {
      ++bad;
      continue;
    }
    const TreeReport r = verify_tree(run.inst, run.solution->edges);
    if (!(r.is_spanning && r.is_bichromatic && r.is_planar)) ++bad;
  }
  report(1, "end-to-end soundness", bad == 0,
         std::to_string(corpus.size()) + " instances, " + std::to_string(bad) + " failures");
}

void criterion2(const std::vector<CorpusRun>& corpus) {
  int bad = 0;
  for (const auto& run : corpus) {
    if (!run.solution) {
      ++bad;
      continue;
    }
    const Wide l2 = compute_lambda(run.inst).lambda2;
    Wide worst = 0;
    for (const Edge& e : run.solution->edges) worst = std::max(worst, d2(run.inst, e));
    if (worst > kLinkBound * l2) ++bad;
  }
  report(2, "ratio bound 8*sqrt2", bad == 0,
         std::to_string(corpus.size()) + " instances, " + std::to_string(bad) + " violations (exact squares)");
}

void criterion3() {
  int bad = 0, total = 0, strict = 0;
  std::uint64_t seed = 1;
  const Family families[] = {Family::Uniform, Family::Clusters, Family::Checker, Family::GridStress, Family::Chain};
  while (total < 240) {
    GenSpec spec;
    spec.family = families[total % 5];
    spec.n = 2 + static_cast<int>(seed % 8);
    spec.seed = seed++;
    if (spec.family == Family::Clusters) spec.spread = 500'000;
    if (spec.family == Family::Uniform || spec.family == Family::Checker) spec.width = 5'000'000;
    if (spec.family == Family::Checker) spec.tile = 1'000'000;
    const Instance inst = generate(spec);
    ++total;
    try {
      const Wide l2 = compute_lambda(inst).lambda2;
      const ExactResult ex = exact_bottleneck_planar_bst(inst);
      const Solution s = solve(inst);
      if (!s.report.ok()) {
        ++bad;
        continue;
      }
      const Wide b2 = s.report.bottleneck2;
      if (!(l2 <= ex.opt2 && ex.opt2 <= b2 && b2 <= kLinkBound * l2)) ++bad;
      strict += ex.opt2 > l2;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(3, "oracle sandwich", bad == 0,
         std::to_string(total) + " instances n<=9, " + std::to_string(bad) + " failures, " + std::to_string(strict) +
             " with OPT > lambda");
}

void criterion4(const std::vector<CorpusRun>& corpus) {
  int bad = 0, cells = 0;
  for (const auto& run : corpus) {
    if (!run.solution || !run.solution->complex) {
      if (!run.solution) ++bad;
      continue;
    }
    const Instance& inst = run.inst;
    const CellComplex& cx = *run.solution->complex;
    const Wide l2 = run.solution->lambda.lambda2;
    std::vector<int> seen(static_cast<std::size_t>(inst.size()), 0);
    for (const FinalCell& fc : cx.final_cells) {
      ++cells;
      bool red = false, blue = false;
      for (int i : fc.point_indices) {
        ++seen[static_cast<std::size_t>(i)];
        (inst.color(i) == Color::Red ? red : blue) = true;
        for (int j : fc.point_indices) {
          if (distance2(inst.pos(i), inst.pos(j)) > kStarBound * l2) ++bad;
        }
      }
      if (!(red && blue)) ++bad;
    }
    for (int c : seen) bad += c != 1;
  }
  report(4, "stage-1 cell invariants", bad == 0,
         std::to_string(cells) + " final cells, " + std::to_string(bad) + " violations");
}

void criterion5(const std::vector<CorpusRun>& corpus) {
  int bad = 0;
  std::size_t star = 0, link = 0;
  for (const auto& run : corpus) {
    if (!run.solution) {
      ++bad;
      continue;
    }
    const Wide l2 = run.solution->lambda.lambda2;
    for (const Edge& e : run.solution->star_edges) bad += d2(run.inst, e) > kStarBound * l2;
    for (const Edge& e : run.solution->link_edges) bad += d2(run.inst, e) > kLinkBound * l2;
    star += run.solution->star_edges.size();
    link += run.solution->link_edges.size();
  }
  report(5, "star and link edge bounds", bad == 0,
         std::to_string(star) + " star edges <= 50 lambda^2, " + std::to_string(link) +
             " link edges <= 128 lambda^2, " + std::to_string(bad) + " violations");
}

// Star tree on random points in a square cell; the outside point lies beyond
// one side, with nothing else in the plane, so every corridor is clear.
void criterion6() {
  std::mt19937_64 rng(6006);
  const Coord side = 1'000'000;
  int bad = 0, alternates = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(rng() % 30);
    std::vector<Point2> pts;
    std::vector<Color> colors;
    std::uniform_int_distribution<Coord> in(0, side);
    while (static_cast<int>(pts.size()) < n) {
      const Point2 p{in(rng), in(rng)};
      if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
      pts.push_back(p);
      colors.push_back(rng() % 2 ? Color::Red : Color::Blue);
    }
    const std::size_t r = rng() % n;
    colors[r] = Color::Red;
    colors[(r + 1 + rng() % (n - 1)) % n] = Color::Blue;
    std::uniform_int_distribution<Coord> out(side + 1, 4 * side);
    Point2 p{in(rng), out(rng)};
    if (rng() % 2) std::swap(p.x, p.y);
    if (rng() % 2) p.x = side - p.x;
    if (rng() % 2) p.y = side - p.y;
    pts.push_back(p);
    colors.push_back(rng() % 2 ? Color::Red : Color::Blue);
    const Instance inst = Instance::from(pts, colors);
    std::vector<int> members(static_cast<std::size_t>(n));
    std::iota(members.begin(), members.end(), 0);
    try {
      const StarTree tree = build_star_tree(inst, members);
      const AttachResult r = attach_external_point(inst, tree, n, [](const Edge&) { return true; });
      alternates += !r.primary;
      bool crossing = inst.color(r.edge.first) == inst.color(r.edge.second);
      for (const Edge& e : tree.edges) {
        crossing = crossing || oracle::properly_cross(inst.pos(e.first), inst.pos(e.second), inst.pos(r.edge.first),
                                                      inst.pos(r.edge.second));
      }
      bad += crossing;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(6, "attach without crossings", bad == 0,
         std::to_string(trials) + " trials, " + std::to_string(bad) + " failures, " + std::to_string(alternates) +
             " used an alternate");
}

void criterion7() {
  const std::vector<std::string> wanted = {"step1",   "step2",   "step3", "lune-a",  "lune-b",    "lune-c",
                                           "lune-d",  "half-lune", "case1", "case2.1", "case2.2-1", "case2.2-2"};
  std::map<std::string, int> hits;
  int bad = 0;
  const int suite = 1000;
  for (int k = 1; k <= suite; ++k) {
    GenSpec spec;
    spec.family = Family::GridStress;
    spec.seed = static_cast<std::uint64_t>(k);
    XorShift64Star sizes(static_cast<std::uint64_t>(k) * 31 + 7);
    spec.n = 100 + static_cast<int>(sizes.below(401));
    try {
      const Solution s = solve(generate(spec));
      if (!s.report.ok()) ++bad;
      for (const auto& line : s.trace.lines()) {
        const std::string label = line.substr(0, line.find(' '));
        ++hits[label];
      }
    } catch (const Error&) {
      ++bad;
    }
  }
  std::string detail = std::to_string(suite) + " instances;";
  bool all = bad == 0;
  for (const auto& w : wanted) {
    detail += " " + w + "=" + std::to_string(hits[w]);
    all = all && hits[w] > 0;
  }
  report(7, "case coverage", all, detail);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BPST_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion8() {
  const fs::path dir = fs::temp_directory_path() / "bpst-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  int bad = 0, files = 0;
  for (Family f : {Family::Uniform, Family::Clusters, Family::Chain, Family::Checker, Family::GridStress}) {
    GenSpec spec;
    spec.family = f;
    spec.n = 300;
    spec.seed = 88;
    const fs::path pts = dir / (std::string(to_string(f)) + ".pts");
    write_text(pts, render_points(generate(spec)));
    std::string out[2], svg[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path res = dir / ("r" + std::to_string(k)), pic = dir / ("s" + std::to_string(k) + ".svg");
      if (run_cli("solve " + pts.string() + " -o " + res.string() + " --svg " + pic.string()) != 0) ++bad;
      out[k] = read_text(res);
      svg[k] = read_text(pic);
    }
    ++files;
    bad += out[0] != out[1] || svg[0] != svg[1] || out[0].empty() || svg[0].empty();
  }
  fs::remove_all(dir);
  report(8, "determinism", bad == 0, std::to_string(files) + " files solved twice, " + std::to_string(bad) + " mismatches");
}

void criterion9() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<std::int64_t> big(-kMaxAbsMicro + 1, kMaxAbsMicro - 1);
  int bad = 0, near = 0, exact_collinear = 0;
  const int cases = 10000;
  for (int t = 0; t < cases; ++t) {
    Point2 p[4];
    for (auto& q : p) q = {big(rng) * kSubunits, big(rng) * kSubunits};
    if (t % 2 == 1) {
      // Points 2 and 3 on the line through 0 and 1, then nudged by at most one
      // micro-unit: collinear to within about 1e-12 of the coordinate range.
      ++near;
      const Coord dx = (p[1].x - p[0].x) / 8, dy = (p[1].y - p[0].y) / 8;
      p[1] = {p[0].x + 8 * dx, p[0].y + 8 * dy};
      const int k2 = static_cast<int>(rng() % 17) - 4, k3 = static_cast<int>(rng() % 17) - 4;
      p[2] = {p[0].x + k2 * dx + (static_cast<int>(rng() % 3) - 1) * kSubunits, p[0].y + k2 * dy};
      p[3] = {p[0].x + k3 * dx, p[0].y + k3 * dy + (static_cast<int>(rng() % 3) - 1) * kSubunits};
    }
    const auto r0 = oracle::exact(p[0]), r1 = oracle::exact(p[1]), r2 = oracle::exact(p[2]);
    const int ref = oracle::orientation(r0, r1, r2);
    exact_collinear += ref == 0;
    bad += static_cast<int>(orientation(p[0], p[1], p[2])) != ref;
    if (p[0] != p[1] && p[2] != p[3]) {
      bad += segments_properly_cross({p[0], p[1]}, {p[2], p[3]}) != oracle::properly_cross(p[0], p[1], p[2], p[3]);
    }
  }
  report(9, "predicate fidelity", bad == 0,
         std::to_string(cases) + " cases (" + std::to_string(near) + " near-degenerate, " +
             std::to_string(exact_collinear) + " exactly collinear), " + std::to_string(bad) + " disagreements");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CorpusRun> corpus = run_corpus();
  criterion1(corpus);
  criterion2(corpus);
  criterion3();
  criterion4(corpus);
  criterion5(corpus);
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d of 9 criteria failed (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
