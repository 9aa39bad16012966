#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "secluded/graph.hpp"

namespace ssp {

// Short secluded path instance: find an s-t path on at most k vertices whose
// open neighborhood has at most l vertices.
struct SspInstance {
  Graph graph;
  int s = -1;
  int t = -1;
  int64_t k = 0;
  int64_t l = 0;

  void validate() const;  // throws std::invalid_argument
};

// Vertex-weighted generalization: path cost = sum of kappa over path vertices
// (budget k); exposure = sum of lambda over open-neighborhood vertices plus
// sum of eta over path vertices (budget l).
struct VwSspInstance {
  Graph graph;
  int s = -1;
  int t = -1;
  int64_t k = 0;
  int64_t l = 0;
  std::vector<int64_t> kappa;
  std::vector<int64_t> lambda;
  std::vector<int64_t> eta;

  void validate() const;
};

using PathWitness = std::vector<int>;

struct PathCost {
  int64_t cost = 0;
  int64_t load = 0;
};

VwSspInstance lift(const SspInstance& inst);  // unit kappa/lambda, zero eta

// Checks the witness is a simple s-t path and prices it; throws on a broken
// witness.
PathCost evaluate_path(const VwSspInstance& inst, const PathWitness& path);

// A vertex-weighted instance is expandable when, given a marker set `a` of
// vertices that no feasible path may touch:
//   (i)  kappa(s) = kappa(t) = 1,
//   (ii) lambda is 1 everywhere,
//   (iii) every marker has eta > l and kappa = 1,
//   (iv) outside the markers, every vertex with kappa > 1 has exactly two
//        non-marker neighbors, both of degree <= 2 there, not s or t, and of
//        unit kappa.
bool is_simple_instance(const VwSspInstance& inst, const VertexSet& a);

// Rewrites vertices with lambda != 1 into lambda-many unit-weight marker
// twins; only legal when such a vertex is already unusable on any path
// (kappa > k).  Identity on instances that already pass the check above.
// origin_to_input (optional) maps the new ids back to input ids.
std::pair<VwSspInstance, VertexSet> normalize_for_expansion(
    const VwSspInstance& inst, const VertexSet& a,
    std::vector<int>* origin_to_input = nullptr);

// Unweighted instance with the same answer: kappa > 1 vertices become paths
// of kappa vertices, eta becomes pendant leaves, markers keep their pendant
// shield.  Vertex count equals expansion_size().
SspInstance expand_to_ssp(const VwSspInstance& inst, const VertexSet& a,
                          std::vector<int>* origin_to_input = nullptr);

// Total kappa plus total eta after normalization.
int64_t expansion_size(const VwSspInstance& inst, const VertexSet& a);

}  // namespace ssp
