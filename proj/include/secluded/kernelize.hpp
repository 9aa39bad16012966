#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "secluded/instance.hpp"

namespace ssp {

enum class RuleId {
  lift_weights,       // unit-weight lift of the unweighted input
  keep_st_component,  // delete everything outside the component holding s,t
  twin_reduce,        // cap a false-twin class at r survivors plus a marker
  mark_forbidden,     // eta := l+1 on vertices no feasible path can include
  drop_dead_trees,    // delete trees that no feasible path can reach
  burn_leaf,          // delete an unreachable leaf, bump eta on its support
  shrink_run,         // replace a long forced run by one aggregate vertex
  compact_ids,        // final contiguous renumbering
};

// Mutations are recorded against "stable" ids: input vertex ids, with
// aggregate vertices appended past the original range.  Only the final
// compact_ids step renumbers.
struct TraceStep {
  RuleId rule = RuleId::lift_weights;
  std::vector<int> removed;                              // deleted stable ids
  std::vector<std::pair<int, int64_t>> eta_updates;      // (stable id, new value)
  std::vector<std::pair<int, int64_t>> lambda_updates;
  std::vector<std::pair<int, int64_t>> kappa_updates;
  // shrink_run only: interior `run` (oriented from end_a to end_b) collapses
  // into fresh vertex `added`, wired to added_edges
  int added = -1;
  int end_a = -1;
  int end_b = -1;
  std::vector<int> run;
  std::vector<int> added_edges;
  // compact_ids only
  std::vector<int> old_to_new;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  std::vector<int> kernel_to_stable;
  std::vector<int> stable_to_kernel;  // -1 for deleted stable ids
};

// Replays the recorded mutations on the raw input; the result must equal the
// pipeline's reduced instance (audit invariant, checked in tests).
VwSspInstance replay_trace(const SspInstance& input, const ReductionTrace& trace);

// Maps a path through the reduced instance back to a path in the input graph
// by re-expanding aggregate vertices into their recorded runs.
PathWitness lift_witness(const ReductionTrace& trace, const PathWitness& kernel_path);

struct FvsClassification {
  VertexSet f;       // feedback vertex set, contains s and t
  VertexSet r;       // forbidden: degree > k+l, or > l pendant neighbors besides s,t
  VertexSet y;       // good: tree vertices with a neighbor in f outside r
  std::vector<VertexSet> trees;  // components of g - f
};

// NO from the component rule is a value (nullopt), not an error.
std::optional<VwSspInstance> rr_connected(const VwSspInstance& inst);

// Requires unit kappa/lambda and zero eta.  Twin classes touching s or t are
// left alone.  Deterministic survivor choice: the r smallest ids stay and the
// smallest becomes the marker carrying lambda = |U|-r+1, kappa = k+1.
VwSspInstance rr_twin_reduce(const VwSspInstance& inst, int r);

// Rejects f that misses s or t or whose removal leaves a cycle.  Asserts
// |Y| <= |F|*(k+l).
FvsClassification classify_fvs(const VwSspInstance& inst, const VertexSet& f);

VwSspInstance rr_forbidden(const VwSspInstance& inst, const FvsClassification& cls);
VwSspInstance rr_delete_trees(const VwSspInstance& inst, const FvsClassification& cls);

// Single applications; nullopt when no target exists.  The pipelines apply
// these exhaustively through a batch driver instead.
std::optional<VwSspInstance> rr_burn_leaf(const VwSspInstance& inst,
                                          const FvsClassification& cls);
std::optional<VwSspInstance> rr_shrink_edgy(const VwSspInstance& inst,
                                            const FvsClassification& cls);
std::optional<VwSspInstance> rr_burn_leaf_fes(const VwSspInstance& inst,
                                              const VertexSet& good);
std::optional<VwSspInstance> rr_shrink_edgy_fes(const VwSspInstance& inst,
                                                const VertexSet& good);

struct FvsKernel {
  bool definite_no = false;
  VwSspInstance inst;
  VertexSet forbidden;        // marker set for expand_to_ssp, kernel ids
  ReductionTrace trace;
  std::vector<int> anchors;   // feedback set in kernel ids (s and t included)
  std::vector<int> forced;    // good vertices in kernel ids
};

// lift -> component rule -> feedback-set classification -> forbidden marking
// -> dead-tree removal -> exhaustive leaf burning -> exhaustive run shrinking.
// Asserts the per-tree bound |V(T)| <= 8*|Y_T| and the weight clamps.
FvsKernel kernelize_fvs(const SspInstance& input);

struct FesKernel {
  bool definite_no = false;
  VwSspInstance inst;
  ReductionTrace trace;
  int64_t fes = 0;  // m - n + 1 of the kept component
};

// lift -> component rule -> spanning-tree split -> exhaustive burning and
// shrinking against the feedback-edge endpoints.  Asserts
// |V| <= 16*fes+9 and |E| <= 17*fes+8.
FesKernel kernelize_fes(const SspInstance& input);

struct TwinKernel {
  bool definite_no = false;
  VwSspInstance inst;
  ReductionTrace trace;
};

// lift -> component rule -> twin reduction.  The input must have no K_{r,r}
// subgraph; checked exactly for r=2, guarded per class otherwise.
TwinKernel kernelize_vc_krr(const SspInstance& input, int r);

}  // namespace ssp
