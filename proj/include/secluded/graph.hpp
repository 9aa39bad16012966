#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ssp {

// Set of vertex ids over a fixed universe [0, universe).  Keeps a membership
// mask for O(1) queries plus a sorted item list for deterministic iteration.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe) : mask_(universe, 0) {}

  static VertexSet of(int universe, std::vector<int> items);

  int universe() const { return static_cast<int>(mask_.size()); }
  bool contains(int v) const { return mask_[v] != 0; }
  void insert(int v);
  void erase(int v);
  int size() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }
  // Sorted ascending.
  const std::vector<int>& items() const;

  bool operator==(const VertexSet& o) const;

 private:
  std::vector<char> mask_;
  mutable std::vector<int> items_;
  mutable bool sorted_ = true;
};

struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;        // sorted neighbor lists
  std::vector<std::pair<int, int>> edges;   // u < v, sorted lexicographically

  // Validates ids, rejects self-loops and duplicate edges.
  static Graph build(int n, std::vector<std::pair<int, int>> edge_list);

  int m() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  bool has_edge(int u, int v) const;
};

// All vertices adjacent to some member of `u` but not in `u` itself.
VertexSet open_neighborhood(const Graph& g, const VertexSet& u);

// Components ordered by their smallest vertex id; vertices inside each
// component sorted ascending.
std::vector<VertexSet> connected_components(const Graph& g);

bool is_forest(const Graph& g);
bool is_connected(const Graph& g);

// Non-tree edges of a BFS spanning tree rooted at vertex 0, in edge-list
// order.  Rejects disconnected graphs.
std::vector<std::pair<int, int>> feedback_edge_set(const Graph& g);

// Heuristic feedback vertex set: repeatedly strips degree <= 1 vertices, takes
// the highest-degree vertex of the remaining 2-core, then drops redundant
// picks.  The result always leaves the graph acyclic; it makes no minimality
// promise beyond the redundancy pruning pass.
VertexSet feedback_vertex_set_heuristic(const Graph& g);

// Groups vertices by open neighborhood (false twins).  Classes ordered by
// smallest member; singletons included.
std::vector<VertexSet> twin_classes(const Graph& g);

// True if some pair of vertices has two or more common neighbors, i.e. the
// graph contains K_{2,2} as a subgraph.
bool contains_k22(const Graph& g);

struct Renumbering {
  std::vector<int> old_to_new;  // -1 for removed vertices
  std::vector<int> new_to_old;
};

// Subgraph induced by `keep`, renumbered contiguously preserving id order.
Graph induced_subgraph(const Graph& g, const VertexSet& keep,
                       Renumbering* map_out = nullptr);

}  // namespace ssp
