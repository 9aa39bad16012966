#pragma once

#include <cstdint>
#include <vector>

#include "secluded/instance.hpp"
#include "secluded/oracle.hpp"

namespace ssp {

// Positions among the 2*log2(z) slots of a selector gadget that value p links
// to: the set bits of p in MSB-first order, then the cleared bits.  Exactly
// log2(z) positions, so every value has the same link degree.  z must be a
// power of two, 0 <= p < z.
std::vector<int> gadget_link_positions(int p, int z);

struct VcPptResult {
  SspInstance inst;
  int n_hat = 0;                          // padded class size, power of two
  std::vector<int> edge_vertex;           // per input edge, in edge order
  std::vector<int> connectors;            // chain vertices between pair blocks
  std::vector<std::vector<int>> gadget;   // per class, 2*log2(n_hat) ids
  int64_t pendants_each = 0;              // pendants per gadget vertex
};

// Encodes a multicolored clique instance as a short secluded path instance:
// the path must cross one edge vertex per class pair, the selector gadgets
// absorb exactly k*log2(n_hat) exposure only when the picks agree on a vertex
// per class, and pendant floods keep gadget vertices off the path.  Edges
// inside a class are not representable and are rejected.
VcPptResult construct_vc_ppt(const MccInstance& mcc);

struct CrossCompResult {
  SspInstance inst;
  int padded = 0;            // number of composed slots, power of two
  std::vector<int> offset;   // id offset of each slot's copy
};

// Disjoint copies of the inputs (padded to a power of two with edgeless
// dummies) wired to fresh terminals through two balanced binary trees whose
// leaves are the copies' own terminals.  The result is feasible iff some
// input is: the tree levels add 2*log2(p) path vertices and 2*log2(p)
// unavoidable neighbors, so k' = k + 2*log2(p) and l' = l + 2*log2(p).
// All inputs must share n, k and l.
CrossCompResult construct_tw_crosscomp(const std::vector<SspInstance>& inputs);

// Random spanning tree plus `extra` random non-tree edges; s and t drawn at
// random.  Deterministic in the seed.
SspInstance gen_tree_plus_edges(int n, int extra, int64_t k, int64_t l,
                                uint64_t seed);

// w x h grid, s top-left, t bottom-right.
SspInstance gen_grid(int w, int h, int64_t k, int64_t l);

// Brick-wall hexagonal grid: all horizontal edges, vertical edges where
// row+column is even.  Girth 6, so free of K_{2,2} subgraphs.
SspInstance gen_hex_grid(int w, int h, int64_t k, int64_t l);

// Series-parallel graph grown from a single s-t edge by random subdivision
// and parallel-branch steps; treewidth at most 2.
SspInstance gen_series_parallel(int n, int64_t k, int64_t l, uint64_t seed);

// k classes of class_size vertices; each cross-class pair becomes an edge
// with probability edge_prob.  No edges inside classes.
MccInstance gen_mcc_random(int k, int class_size, double edge_prob,
                           uint64_t seed);

}  // namespace ssp
