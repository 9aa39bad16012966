#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "secluded/instance.hpp"
#include "secluded/partition_set.hpp"
#include "secluded/treedecomp.hpp"

namespace ssp {

struct SolveOptions {
  // Thin every table cell down to a representative subset after it is built.
  // Turning this off keeps the full cells; answers must not change.
  bool use_reduce = true;
  ReduceMode reduce_mode = ReduceMode::general;
  // Reconstruct and re-validate a path witness on yes-answers.
  bool want_witness = true;
};

struct SolveStats {
  int width = 0;  // width of the nice decomposition that was solved
  int nodes = 0;
  std::size_t cells = 0;              // materialized (node, signature) cells
  std::size_t total_entries = 0;      // sum of final cell sizes
  std::size_t max_cell_entries = 0;   // largest final cell
  std::size_t max_table_entries = 0;  // largest per-node table (peak memory)
  std::vector<int64_t> node_micros;   // wall time per node, indexed by node id
};

struct SolveResult {
  bool answer = false;
  std::optional<int64_t> min_cost;    // set iff answer
  std::optional<PathWitness> witness; // set iff answer and witnesses requested
  SolveStats stats;
};

// Exact solver: dynamic programming over the nice decomposition.  Each bag
// vertex takes one of five roles (untouched, zero-length path, endpoint of a
// longer subpath, subpath interior, allowed neighbor); a table cell keyed by
// the role assignment and a load budget stores, per pairing of the endpoints
// into subpaths, the cheapest partial solution below the node.  Cells are
// thinned to representative subsets as they complete, so the per-cell size
// stays within 2^(E-1) for E endpoints (2^(E/2) in matching mode) whenever
// the thinning ran.  The answer reads off the root cell that pairs s with t
// at the full load budget.  Single-threaded and deterministic: identical
// inputs and options produce bit-identical tables.
//
// Throws std::invalid_argument when the decomposition does not fit the
// instance or a bag exceeds 21 vertices; std::logic_error when an internal
// invariant breaks (a cell over its bound, or a witness that fails
// re-validation against the instance).
SolveResult solve(const VwSspInstance& inst, const NiceTreeDecomposition& ntd,
                  const SolveOptions& opts = {});

}  // namespace ssp
