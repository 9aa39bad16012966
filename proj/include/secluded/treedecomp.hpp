#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "secluded/graph.hpp"

namespace ssp {

// Rooted tree decomposition: node i hangs under parent[i] (-1 marks the root)
// and carries bags[i].  width is the largest bag size minus one.
struct TreeDecomposition {
  std::vector<int> parent;
  std::vector<VertexSet> bags;
  int root = 0;
  int width = 0;

  int size() const { return static_cast<int>(bags.size()); }
};

// Min-degree elimination ordering with fill-in tie-breaking; remaining ties
// fall to a seed-shuffled vertex priority, so different seeds explore
// different valid decompositions.  The result is checked before returning.
// Rejects disconnected graphs.
TreeDecomposition heuristic_decomposition(const Graph& g, uint64_t seed = 0);

// Exact treewidth by dynamic programming over elimination prefixes.  Meant
// for reference checks; refuses graphs with more than 20 vertices.
int exact_treewidth(const Graph& g);

// Width-optimal decomposition recovered from the exact ordering.  Same size
// limit as exact_treewidth; rejects disconnected graphs.
TreeDecomposition exact_decomposition(const Graph& g);

// True iff every vertex occurs in a bag, every edge fits inside a bag, the
// bags holding any fixed vertex form a connected subtree, the parent array
// encodes one rooted tree, and the width field is honest.
bool validate(const TreeDecomposition& td, const Graph& g);

enum class NodeKind { leaf, introduce_vertex, introduce_edge, forget, join };

struct NiceNode {
  NodeKind kind = NodeKind::leaf;
  int a = -1;  // introduced or forgotten vertex; first edge endpoint
  int b = -1;  // second edge endpoint (introduce_edge only), a < b
  int parent = -1;
  std::vector<int> children;
  std::vector<int> bag;  // sorted ascending; plain list keeps nodes compact
};

// Nice form consumed by the solver: leaves carry exactly {s,t}, each join has
// two children with identical bags, every graph edge is introduced exactly
// once, s and t sit in every bag and are never introduced or forgotten, and
// the root bag is {s,t}.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;
  int width = 0;
  int s = -1;
  int t = -1;

  int size() const { return static_cast<int>(nodes.size()); }
};

// Normalizes a valid decomposition into the nice form above, raising the
// width by at most two (for the two terminals added to every bag).
NiceTreeDecomposition make_nice(const TreeDecomposition& td, const Graph& g,
                                int s, int t);

// Full structural audit of the nice form, including the plain decomposition
// conditions on its bags.
bool validate(const NiceTreeDecomposition& ntd, const Graph& g, int s, int t);

// Children before parents; the root comes last.
std::vector<int> postorder(const NiceTreeDecomposition& ntd);

// Text interchange format: header "s td <#bags> <max bag size> <n>", one
// "b <id> <v...>" line per bag, then tree edges as bare id pairs.  Ids are
// 1-based on disk.  read_td roots the tree at the first bag.
void write_td(std::ostream& out, const TreeDecomposition& td, int n_vertices);
TreeDecomposition read_td(std::istream& in);

}  // namespace ssp
