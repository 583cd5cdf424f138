#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bpst/error.hpp"
#include "bpst/generate.hpp"
#include "bpst/io.hpp"
#include "bpst/solve.hpp"
#include "bpst/verify.hpp"

namespace fs = std::filesystem;
using namespace bpst;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Usage:
    case ErrorKind::DegenerateSpec:
    case ErrorKind::InstanceTooLarge:
    case ErrorKind::Io:
      return 2;
    case ErrorKind::MonochromaticInstance:
      return 3;
    default:
      return 4;
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

std::int64_t micro_units(const std::string& text) { return parse_coord(text) / kSubunits; }

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct SolveArgs {
  std::string input;
  std::string output;
  std::string svg;
  std::string trace;
  std::string stages;
  std::uint64_t seed = 0;
};

int run_solve(const SolveArgs& a) {
  const Instance inst = read_points(a.input);
  const Solution s = solve(inst, SolveOptions{a.seed});
  emit(a.output, render_result(make_result(inst, s)));
  if (!a.trace.empty()) {
    std::string text;
    for (const auto& line : s.trace.lines()) text += line + "\n";
    write_text(a.trace, text);
  }
  const CellComplex* cx = s.complex ? &*s.complex : nullptr;
  if (!a.svg.empty()) {
    SvgLayers layers;
    layers.complex = cx;
    layers.star_edges = s.star_edges;
    layers.link_edges = s.link_edges;
    if (s.star_edges.empty()) layers.star_edges = s.edges;
    write_text(a.svg, render_svg(inst, layers));
  }
  if (!a.stages.empty()) {
    fs::create_directories(a.stages);
    SvgLayers grid{cx, true, false, false, {}, {}};
    write_text(fs::path(a.stages) / "stage1-grid.svg", render_svg(inst, grid));
    SvgLayers partition{cx, true, true, false, {}, {}};
    write_text(fs::path(a.stages) / "stage2-partition.svg", render_svg(inst, partition));
    SvgLayers stars{cx, true, true, true, s.star_edges, {}};
    write_text(fs::path(a.stages) / "stage3-stars.svg", render_svg(inst, stars));
    SvgLayers tree{cx, true, true, true, s.star_edges, s.link_edges};
    write_text(fs::path(a.stages) / "stage4-tree.svg", render_svg(inst, tree));
  }
  if (!s.report.ok() || !s.ratio_bound_ok()) {
    std::cerr << "bpst: verification failed\n";
    return 4;
  }
  return 0;
}

int run_exact(const std::string& input, const std::string& output, int max_n) {
  const Instance inst = read_points(input);
  validate_instance(inst);
  const ExactResult ex = exact_bottleneck_planar_bst(inst, max_n);
  const TreeReport report = verify_tree(inst, ex.witness);
  ResultFile r;
  r.n = inst.size();
  r.lambda2 = compute_lambda(inst).lambda2;
  r.bottleneck2 = ex.opt2;
  r.ratio_bound_ok = ex.opt2 <= 128 * r.lambda2;
  r.spanning = report.is_spanning;
  r.bichromatic = report.is_bichromatic;
  r.planar = report.is_planar;
  r.components = report.component_count;
  r.edges = ex.witness;
  emit(output, render_result(r));
  return report.ok() ? 0 : 4;
}

int run_bench(const std::string& dir, const std::string& output, int max_exact_n, bool timing) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::string csv = "instance,n,lambda,opt,bottleneck,ratio,ms,status\n";
  bool violation = false;
  for (const auto& file : files) {
    const auto start = std::chrono::steady_clock::now();
    std::string row = file.filename().string() + ",";
    try {
      const Instance inst = read_points(file);
      const Solution s = solve(inst);
      const double lambda = std::sqrt(length2_to_double(s.lambda.lambda2));
      const double bottleneck = std::sqrt(length2_to_double(s.report.bottleneck2));
      std::string opt;
      if (inst.size() <= max_exact_n) opt = fixed6(std::sqrt(length2_to_double(exact_bottleneck_planar_bst(inst, max_exact_n).opt2)));
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::string status = "ok";
      if (!s.report.ok()) status = "verify-failed";
      if (!s.ratio_bound_ok()) {
        status = "ratio-violation";
        violation = true;
      }
      row += std::to_string(inst.size()) + "," + fixed6(lambda) + "," + opt + "," + fixed6(bottleneck) + "," +
             fixed6(s.lambda.lambda2 == 0 ? 1.0 : bottleneck / lambda) + "," + (timing ? fixed6(ms) : "") + "," + status;
    } catch (const Error& e) {
      row += ",,,,,," + std::string(to_string(e.kind()));
    }
    csv += row + "\n";
  }
  emit(output, csv);
  return violation ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar bichromatic spanning trees with bounded bottleneck"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Build and verify a tree for a point file");
  solve_cmd->add_option("input", solve_args.input, "Point file")->required();
  solve_cmd->add_option("-o,--output", solve_args.output, "Result file (default stdout)");
  solve_cmd->add_option("--svg", solve_args.svg, "Write an SVG of the final tree");
  solve_cmd->add_option("--trace", solve_args.trace, "Write the decision trace");
  solve_cmd->add_option("--grid-offset-seed", solve_args.seed, "Seed for the grid offset (0 = default offset)");
  solve_cmd->add_option("--stages", solve_args.stages, "Directory for per-stage SVGs");

  std::string exact_input, exact_output;
  int exact_max_n = kDefaultExactMaxN;
  auto* exact_cmd = app.add_subcommand("exact", "Exact optimum for small instances");
  exact_cmd->add_option("input", exact_input, "Point file")->required();
  exact_cmd->add_option("-o,--output", exact_output, "Result file (default stdout)");
  exact_cmd->add_option("--max-n", exact_max_n, "Largest n accepted");

  GenSpec spec;
  std::string family = "uniform", gen_output, width = "100", spread = "3", spacing = "1", tile = "10", step = "1";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded instance");
  gen_cmd->add_option("--family", family, "uniform|clusters|chain|checker|gridstress");
  gen_cmd->add_option("--n", spec.n, "Number of points")->required();
  gen_cmd->add_option("--seed", spec.seed, "PRNG seed");
  gen_cmd->add_option("--width", width, "Side of the sampling square");
  gen_cmd->add_option("--clusters", spec.clusters, "Cluster count");
  gen_cmd->add_option("--spread", spread, "Cluster half-width");
  gen_cmd->add_option("--spacing", spacing, "Chain spacing");
  gen_cmd->add_option("--tile", tile, "Checker tile side");
  gen_cmd->add_option("--step", step, "Grid-stress step length");
  gen_cmd->add_option("-o,--output", gen_output, "Point file (default stdout)");

  std::string bench_dir, bench_output;
  int bench_exact_n = 9;
  bool no_timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "Solve every file in a directory and write CSV");
  bench_cmd->add_option("dir", bench_dir, "Corpus directory")->required();
  bench_cmd->add_option("-o,--output", bench_output, "CSV file (default stdout)");
  bench_cmd->add_option("--max-exact-n", bench_exact_n, "Run the exact solver up to this n");
  bench_cmd->add_flag("--no-timing", no_timing, "Leave the ms column empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*exact_cmd) return run_exact(exact_input, exact_output, exact_max_n);
    if (*gen_cmd) {
      spec.family = parse_family(family);
      spec.width = micro_units(width);
      spec.spread = micro_units(spread);
      spec.spacing = micro_units(spacing);
      spec.tile = micro_units(tile);
      spec.step = micro_units(step);
      emit(gen_output, render_points(generate(spec)));
      return 0;
    }
    if (*bench_cmd) return run_bench(bench_dir, bench_output, bench_exact_n, !no_timing);
  } catch (const Error& e) {
    std::cerr << "bpst: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "bpst: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
