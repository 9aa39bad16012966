#include "secluded/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace ssp {

VertexSet VertexSet::of(int universe, std::vector<int> items) {
  VertexSet s(universe);
  for (int v : items) s.insert(v);
  return s;
}

void VertexSet::insert(int v) {
  if (mask_[v]) return;
  mask_[v] = 1;
  items_.push_back(v);
  sorted_ = false;
}

void VertexSet::erase(int v) {
  if (!mask_[v]) return;
  mask_[v] = 0;
  items_.erase(std::find(items_.begin(), items_.end(), v));
}

const std::vector<int>& VertexSet::items() const {
  if (!sorted_) {
    std::sort(items_.begin(), items_.end());
    sorted_ = true;
  }
  return items_;
}

bool VertexSet::operator==(const VertexSet& o) const {
  return universe() == o.universe() && items() == o.items();
}

Graph Graph::build(int n, std::vector<std::pair<int, int>> edge_list) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  Graph g;
  g.n = n;
  g.adj.resize(n);
  for (auto& [u, v] : edge_list) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  for (size_t i = 1; i < edge_list.size(); ++i)
    if (edge_list[i] == edge_list[i - 1])
      throw std::invalid_argument("graph: duplicate edge");
  g.edges = std::move(edge_list);
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  return g;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
  int w = (&nb == &adj[u]) ? v : u;
  return std::binary_search(nb.begin(), nb.end(), w);
}

VertexSet open_neighborhood(const Graph& g, const VertexSet& u) {
  VertexSet out(g.n);
  for (int v : u.items())
    for (int w : g.adj[v])
      if (!u.contains(w)) out.insert(w);
  return out;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> comps;
  std::vector<char> seen(g.n, 0);
  for (int start = 0; start < g.n; ++start) {
    if (seen[start]) continue;
    VertexSet comp(g.n);
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      comp.insert(v);
      for (int w : g.adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return true;
  return connected_components(g).size() == 1;
}

bool is_forest(const Graph& g) {
  // acyclic iff every component has |E| = |V| - 1; count via components
  auto comps = connected_components(g);
  size_t tree_edges = 0;
  for (const auto& c : comps) tree_edges += c.size() - 1;
  return static_cast<size_t>(g.m()) == tree_edges;
}

std::vector<std::pair<int, int>> feedback_edge_set(const Graph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("feedback_edge_set: graph is disconnected");
  std::vector<int> parent(g.n, -2);
  if (g.n > 0) {
    std::queue<int> q;
    q.push(0);
    parent[0] = -1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.adj[v])
        if (parent[w] == -2) {
          parent[w] = v;
          q.push(w);
        }
    }
  }
  std::vector<std::pair<int, int>> fes;
  for (auto [u, v] : g.edges)
    if (parent[u] != v && parent[v] != u) fes.emplace_back(u, v);
  return fes;
}

namespace {

// Forest check of g restricted to vertices where alive[v] != 0.
bool alive_is_forest(const Graph& g, const std::vector<char>& alive) {
  std::vector<int> deg(g.n, 0);
  int nv = 0, ne = 0;
  for (int v = 0; v < g.n; ++v)
    if (alive[v]) ++nv;
  for (auto [u, v] : g.edges)
    if (alive[u] && alive[v]) ++ne;
  (void)deg;
  if (ne >= nv && nv > 0) return false;
  // component count check: acyclic iff ne = nv - #components
  std::vector<char> seen(g.n, 0);
  int comps = 0;
  for (int s = 0; s < g.n; ++s) {
    if (!alive[s] || seen[s]) continue;
    ++comps;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.adj[v])
        if (alive[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return ne == nv - comps;
}

}  // namespace

VertexSet feedback_vertex_set_heuristic(const Graph& g) {
  std::vector<char> alive(g.n, 1);
  std::vector<int> deg(g.n);
  for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);

  auto strip = [&]() {
    std::queue<int> q;
    for (int v = 0; v < g.n; ++v)
      if (alive[v] && deg[v] <= 1) q.push(v);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      if (!alive[v] || deg[v] > 1) continue;
      alive[v] = 0;
      for (int w : g.adj[v])
        if (alive[w] && --deg[w] <= 1) q.push(w);
    }
  };

  std::vector<int> picked;
  strip();
  for (;;) {
    int best = -1;
    for (int v = 0; v < g.n; ++v)
      if (alive[v] && (best == -1 || deg[v] > deg[best])) best = v;
    if (best == -1) break;
    alive[best] = 0;
    for (int w : g.adj[best])
      if (alive[w]) --deg[w];
    picked.push_back(best);
    strip();
  }

  // Redundancy pruning: drop picks whose removal keeps the rest acyclic.
  std::vector<char> in_fvs(g.n, 0);
  for (int v : picked) in_fvs[v] = 1;
  std::sort(picked.begin(), picked.end());
  for (int v : picked) {
    in_fvs[v] = 0;
    std::vector<char> rest(g.n, 1);
    for (int u = 0; u < g.n; ++u)
      if (in_fvs[u]) rest[u] = 0;
    if (!alive_is_forest(g, rest)) in_fvs[v] = 1;
  }

  VertexSet out(g.n);
  for (int v = 0; v < g.n; ++v)
    if (in_fvs[v]) out.insert(v);
  std::vector<char> rest(g.n, 1);
  for (int v : out.items()) rest[v] = 0;
  if (!alive_is_forest(g, rest))
    throw std::logic_error("feedback_vertex_set_heuristic: residual not acyclic");
  return out;
}

std::vector<VertexSet> twin_classes(const Graph& g) {
  std::map<std::vector<int>, std::vector<int>> by_nbhd;
  for (int v = 0; v < g.n; ++v) by_nbhd[g.adj[v]].push_back(v);
  std::vector<VertexSet> classes;
  for (auto& [nb, members] : by_nbhd)
    classes.push_back(VertexSet::of(g.n, members));
  std::sort(classes.begin(), classes.end(),
            [](const VertexSet& a, const VertexSet& b) {
              return a.items().front() < b.items().front();
            });
  return classes;
}

bool contains_k22(const Graph& g) {
  // two vertices with two common neighbors = a 4-cycle = K_{2,2} subgraph
  std::unordered_set<int64_t> pairs;
  for (int w = 0; w < g.n; ++w) {
    const auto& nb = g.adj[w];
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        int64_t key = static_cast<int64_t>(nb[i]) * g.n + nb[j];
        if (!pairs.insert(key).second) return true;
      }
  }
  return false;
}

Graph induced_subgraph(const Graph& g, const VertexSet& keep,
                       Renumbering* map_out) {
  Renumbering r;
  r.old_to_new.assign(g.n, -1);
  for (int v : keep.items()) {
    r.old_to_new[v] = static_cast<int>(r.new_to_old.size());
    r.new_to_old.push_back(v);
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges)
    if (keep.contains(u) && keep.contains(v))
      edges.emplace_back(r.old_to_new[u], r.old_to_new[v]);
  Graph out = Graph::build(keep.size(), std::move(edges));
  if (map_out) *map_out = std::move(r);
  return out;
}

}  // namespace ssp
