#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "secluded/instance.hpp"

namespace ssp {

struct OracleResult {
  bool answer = false;
  std::optional<int64_t> min_cost;       // set iff answer
  std::optional<int64_t> load_at_min;    // smallest load among min-cost paths
  std::optional<PathWitness> witness;    // lexicographically smallest such path
};

// Exhaustive path enumeration.  Prunes on cost only: the exposure budget is
// not monotone along a growing path (a neighbor may later be swallowed by the
// path), so pruning on it would be unsound.  Refuses graphs larger than cap.
OracleResult brute_force_solve(const VwSspInstance& inst, int cap = 20);

// Multicolored clique instance: pick one vertex per class so that the picks
// are pairwise adjacent.
struct MccInstance {
  Graph graph;
  std::vector<std::vector<int>> classes;
  int k = 0;  // number of classes

  void validate() const;
};

struct MccResult {
  bool answer = false;
  std::optional<std::vector<int>> witness;  // one vertex per class
};

// Product enumeration over the classes with incremental adjacency pruning.
// Refuses instances whose largest class exceeds class_cap.
MccResult brute_force_mcc(const MccInstance& inst, int class_cap = 20);

}  // namespace ssp
