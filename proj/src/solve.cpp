#include "bpst/solve.hpp"

#include "bpst/error.hpp"

namespace bpst {

namespace {

template <typename F>
auto in_stage(const char* stage, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(stage) + ": " + e.detail());
  }
}

}  // namespace

bool Solution::ratio_bound_ok() const { return report.bottleneck2 <= 128 * lambda.lambda2; }

Solution solve(const Instance& inst, const SolveOptions& options) {
  validate_instance(inst);
  Solution s;
  s.lambda = in_stage("bottleneck", [&] { return compute_lambda(inst); });
  if (inst.size() > 1) {
    s.complex = in_stage("stage1", [&] { return run_stage1(inst, s.lambda.lambda2, {options.grid_offset_seed}, &s.trace); });
    Stage2Result stitched = in_stage("stage2", [&] { return stitch_all(inst, *s.complex, &s.trace); });
    s.trees = std::move(stitched.trees);
    for (const auto& t : s.trees) s.star_edges.insert(s.star_edges.end(), t.edges.begin(), t.edges.end());
    s.edges = std::move(stitched.edges);
    s.link_edges.assign(s.edges.begin() + static_cast<std::ptrdiff_t>(s.star_edges.size()), s.edges.end());
  }
  s.report = verify_tree(inst, s.edges);
  return s;
}

ResultFile make_result(const Instance& inst, const Solution& s) {
  ResultFile r;
  r.n = inst.size();
  r.lambda2 = s.lambda.lambda2;
  r.bottleneck2 = s.report.bottleneck2;
  r.ratio_bound_ok = s.ratio_bound_ok();
  r.spanning = s.report.is_spanning;
  r.bichromatic = s.report.is_bichromatic;
  r.planar = s.report.is_planar;
  r.components = s.report.component_count;
  r.edges = s.edges;
  return r;
}

}  // namespace bpst
