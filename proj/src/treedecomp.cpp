#include "secluded/treedecomp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "secluded/rng.hpp"

namespace ssp {

namespace {

// Classic bag construction from an elimination order: when v goes, its bag is
// v plus its current fill-in neighbors, and it hangs under the bag of the
// earliest-eliminated of those neighbors.
TreeDecomposition from_elimination_order(const Graph& g,
                                         const std::vector<int>& order) {
  int n = g.n;
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  std::vector<std::vector<int>> bag_items(n);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> nb(adj[v].begin(), adj[v].end());
    bag_items[i] = nb;
    bag_items[i].push_back(v);
    std::sort(bag_items[i].begin(), bag_items[i].end());
    for (int u : nb) adj[u].erase(v);
    adj[v].clear();
    for (size_t a = 0; a < nb.size(); ++a)
      for (size_t b = a + 1; b < nb.size(); ++b) {
        adj[nb[a]].insert(nb[b]);
        adj[nb[b]].insert(nb[a]);
      }
  }

  TreeDecomposition td;
  td.parent.assign(n, -1);
  td.bags.reserve(n);
  int widest = 0;
  for (int i = 0; i < n; ++i) {
    widest = std::max(widest, static_cast<int>(bag_items[i].size()));
    int first = std::numeric_limits<int>::max();
    for (int u : bag_items[i])
      if (u != order[i]) first = std::min(first, pos[u]);
    if (first != std::numeric_limits<int>::max())
      td.parent[i] = first;
    else if (i + 1 < n)
      td.parent[i] = i + 1;  // isolated remainder, chain it upward
    td.bags.push_back(VertexSet::of(n, std::move(bag_items[i])));
  }
  td.root = n - 1;
  td.width = widest - 1;
  return td;
}

// Missing edges among the current neighbors of v: the cost of eliminating v
// next.  Only used to break degree ties, so quadratic is fine.
int fill_in(const std::vector<std::set<int>>& adj, int v) {
  int fill = 0;
  for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
    for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
      if (!adj[*it].count(*jt)) ++fill;
  return fill;
}

std::vector<int> min_degree_order(const Graph& g, uint64_t seed) {
  int n = g.n;
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  if (seed != 0) {
    Rng rng(seed);
    rng.shuffle(rank);
  }

  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  // degree buckets keyed by priority make each round cost the size of the
  // smallest bucket rather than a scan over every remaining vertex
  std::vector<std::set<std::pair<int, int>>> bucket(n);
  for (int v = 0; v < n; ++v)
    bucket[adj[v].size()].insert({rank[v], v});
  int min_deg = 0;
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    while (bucket[min_deg].empty()) ++min_deg;
    const std::set<std::pair<int, int>>& pool = bucket[min_deg];
    int best = pool.begin()->second;
    if (pool.size() <= 64) {
      // small pools afford the fill-in tie-break; oversized ones (fields of
      // leaves in large sparse graphs) settle for the priority order
      std::pair<int, int> best_key{std::numeric_limits<int>::max(), 0};
      for (auto [r, v] : pool) {
        std::pair<int, int> key{fill_in(adj, v), r};
        if (key < best_key) {
          best_key = key;
          best = v;
        }
      }
    }
    order.push_back(best);
    bucket[min_deg].erase({rank[best], best});
    std::vector<int> nb(adj[best].begin(), adj[best].end());
    for (int u : nb) bucket[adj[u].size()].erase({rank[u], u});
    for (int u : nb) adj[u].erase(best);
    adj[best].clear();
    for (size_t a = 0; a < nb.size(); ++a)
      for (size_t b = a + 1; b < nb.size(); ++b) {
        adj[nb[a]].insert(nb[b]);
        adj[nb[b]].insert(nb[a]);
      }
    for (int u : nb) {
      int d = static_cast<int>(adj[u].size());
      bucket[d].insert({rank[u], u});
      min_deg = std::min(min_deg, d);
    }
  }
  return order;
}

// Vertices outside S and v that the component of v inside S + v can see: the
// degree v would get if eliminated right after the set S.
int back_degree(const std::vector<uint32_t>& nbr, uint32_t s_mask, int v) {
  uint32_t inside = s_mask | (1u << v);
  uint32_t comp = 1u << v;
  uint32_t frontier = comp;
  while (frontier != 0) {
    uint32_t reach = 0;
    for (uint32_t f = frontier; f != 0; f &= f - 1)
      reach |= nbr[std::countr_zero(f)];
    frontier = reach & inside & ~comp;
    comp |= frontier;
  }
  uint32_t out = 0;
  for (uint32_t c = comp; c != 0; c &= c - 1) out |= nbr[std::countr_zero(c)];
  return std::popcount(out & ~inside);
}

// dp[S] = smallest maximum back degree achievable when S forms the prefix of
// an elimination ordering.  dp over all vertices is the treewidth.
std::vector<int8_t> width_table(const Graph& g) {
  if (g.n == 0) throw std::invalid_argument("exact_treewidth: empty graph");
  if (g.n > 20)
    throw std::invalid_argument("exact_treewidth: limited to 20 vertices");
  int n = g.n;
  std::vector<uint32_t> nbr(n, 0);
  for (auto [u, v] : g.edges) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  std::vector<int8_t> dp(uint64_t{1} << n, 0);
  for (uint32_t s_mask = 1; s_mask < (uint32_t{1} << n); ++s_mask) {
    int best = std::numeric_limits<int8_t>::max();
    for (uint32_t rem = s_mask; rem != 0; rem &= rem - 1) {
      int v = std::countr_zero(rem);
      uint32_t rest = s_mask & ~(1u << v);
      int cand = std::max<int>(dp[rest], back_degree(nbr, rest, v));
      best = std::min(best, cand);
    }
    dp[s_mask] = static_cast<int8_t>(best);
  }
  return dp;
}

}  // namespace

TreeDecomposition heuristic_decomposition(const Graph& g, uint64_t seed) {
  if (g.n == 0) throw std::invalid_argument("decomposition: empty graph");
  if (!is_connected(g))
    throw std::invalid_argument("decomposition: graph is disconnected");
  TreeDecomposition td = from_elimination_order(g, min_degree_order(g, seed));
  if (!validate(td, g))
    throw std::logic_error("decomposition: construction produced an invalid result");
  return td;
}

int exact_treewidth(const Graph& g) {
  auto dp = width_table(g);
  return dp[(uint64_t{1} << g.n) - 1];
}

TreeDecomposition exact_decomposition(const Graph& g) {
  if (g.n == 0) throw std::invalid_argument("decomposition: empty graph");
  if (!is_connected(g))
    throw std::invalid_argument("decomposition: graph is disconnected");
  auto dp = width_table(g);
  int n = g.n;
  std::vector<uint32_t> nbr(n, 0);
  for (auto [u, v] : g.edges) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  // peel the ordering back to front: the last vertex of each prefix is one
  // whose removal explains the table value
  std::vector<int> order(n);
  uint32_t s_mask = (uint32_t{1} << n) - 1;
  for (int i = n - 1; i >= 0; --i) {
    int pick = -1;
    for (uint32_t rem = s_mask; rem != 0; rem &= rem - 1) {
      int v = std::countr_zero(rem);
      uint32_t rest = s_mask & ~(1u << v);
      if (std::max<int>(dp[rest], back_degree(nbr, rest, v)) == dp[s_mask]) {
        pick = v;
        break;
      }
    }
    if (pick == -1)
      throw std::logic_error("decomposition: table backtrack failed");
    order[i] = pick;
    s_mask &= ~(1u << pick);
  }
  TreeDecomposition td = from_elimination_order(g, order);
  if (!validate(td, g) || td.width != dp[(uint64_t{1} << n) - 1])
    throw std::logic_error("decomposition: construction produced an invalid result");
  return td;
}

bool validate(const TreeDecomposition& td, const Graph& g) {
  int nodes = td.size();
  if (nodes == 0 || static_cast<int>(td.parent.size()) != nodes) return false;
  if (td.root < 0 || td.root >= nodes || td.parent[td.root] != -1) return false;
  int roots = 0;
  std::vector<std::vector<int>> children(nodes);
  for (int i = 0; i < nodes; ++i) {
    int p = td.parent[i];
    if (p == -1) {
      ++roots;
      continue;
    }
    if (p < 0 || p >= nodes) return false;
    children[p].push_back(i);
  }
  if (roots != 1) return false;
  std::vector<char> reached(nodes, 0);
  std::vector<int> stack{td.root};
  reached[td.root] = 1;
  int seen_nodes = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++seen_nodes;
    for (int c : children[x]) {
      if (reached[c]) return false;
      reached[c] = 1;
      stack.push_back(c);
    }
  }
  if (seen_nodes != nodes) return false;

  // work proportional to the total bag content, not bags times universe:
  // count per vertex how many bags hold it and how many tree links keep both
  // ends holding it; the bags with any fixed vertex induce a forest in the
  // bag tree, which is connected exactly when links = bags - 1
  std::vector<int> count(g.n, 0), links(g.n, 0);
  std::vector<std::vector<int>> bags_of(g.n);
  int widest = 0;
  for (int i = 0; i < nodes; ++i) {
    widest = std::max(widest, td.bags[i].size());
    for (int v : td.bags[i].items()) {
      if (v < 0 || v >= g.n) return false;
      ++count[v];
      bags_of[v].push_back(i);
      if (td.parent[i] != -1 && td.bags[td.parent[i]].contains(v)) ++links[v];
    }
  }
  for (int v = 0; v < g.n; ++v)
    if (count[v] == 0 || links[v] != count[v] - 1) return false;
  for (auto [u, v] : g.edges) {
    bool u_shorter = bags_of[u].size() <= bags_of[v].size();
    const std::vector<int>& probe = u_shorter ? bags_of[u] : bags_of[v];
    int other = u_shorter ? v : u;
    bool housed = false;
    for (int i : probe)
      if (td.bags[i].contains(other)) {
        housed = true;
        break;
      }
    if (!housed) return false;
  }
  return td.width == widest - 1;
}

namespace {

struct NiceBuilder {
  const std::vector<std::vector<int>>& aug;
  const std::vector<std::vector<int>>& kids;
  const std::vector<int>& base;  // sorted {s,t} pair
  NiceTreeDecomposition& out;

  int add(NodeKind kind, int a, int b, std::vector<int> bag_items,
          std::vector<int> children) {
    int id = out.size();
    for (int c : children) out.nodes[c].parent = id;
    NiceNode node;
    node.kind = kind;
    node.a = a;
    node.b = b;
    node.bag = std::move(bag_items);
    node.children = std::move(children);
    out.nodes.push_back(std::move(node));
    return id;
  }

  // Forget-then-introduce chain rewriting bag `from` into bag `to` above
  // node cur.  Both lists sorted ascending.
  int chain(int cur, const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> bag = from;
    for (int v : from) {
      if (std::binary_search(to.begin(), to.end(), v)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      cur = add(NodeKind::forget, v, -1, bag, {cur});
    }
    for (int v : to) {
      if (std::binary_search(from.begin(), from.end(), v)) continue;
      bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
      cur = add(NodeKind::introduce_vertex, v, -1, bag, {cur});
    }
    return cur;
  }

  // Returns the nice node carrying the augmented bag of decomposition node x.
  int build(int x) {
    std::vector<int> arms;
    for (int c : kids[x]) arms.push_back(chain(build(c), aug[c], aug[x]));
    if (arms.empty()) return chain(add(NodeKind::leaf, -1, -1, base, {}), base, aug[x]);
    while (arms.size() > 1) {
      std::vector<int> merged;
      for (size_t i = 0; i + 1 < arms.size(); i += 2)
        merged.push_back(
            add(NodeKind::join, -1, -1, aug[x], {arms[i], arms[i + 1]}));
      if (arms.size() % 2 != 0) merged.push_back(arms.back());
      arms = std::move(merged);
    }
    return arms[0];
  }
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td, const Graph& g,
                                int s, int t) {
  if (s < 0 || t < 0 || s >= g.n || t >= g.n || s == t)
    throw std::invalid_argument(
        "make_nice: terminals must be two distinct vertices");
  if (!validate(td, g))
    throw std::invalid_argument("make_nice: invalid tree decomposition");

  std::vector<int> base{std::min(s, t), std::max(s, t)};
  std::vector<std::vector<int>> aug(td.size());
  std::vector<std::vector<int>> kids(td.size());
  for (int i = 0; i < td.size(); ++i) {
    VertexSet bag = td.bags[i];
    bag.insert(s);
    bag.insert(t);
    aug[i] = bag.items();
    if (td.parent[i] != -1) kids[td.parent[i]].push_back(i);
  }

  NiceTreeDecomposition out;
  out.s = s;
  out.t = t;
  NiceBuilder builder{aug, kids, base, out};
  out.root = builder.chain(builder.build(td.root), aug[td.root], base);

  // each non-terminal vertex is forgotten exactly once; every edge rides just
  // below the lower of its endpoints' forget nodes, where both ends are still
  // in the bag
  std::vector<int> forget_at(g.n, -1);
  for (int i = 0; i < out.size(); ++i) {
    if (out.nodes[i].kind != NodeKind::forget) continue;
    if (forget_at[out.nodes[i].a] != -1)
      throw std::logic_error("make_nice: vertex forgotten twice");
    forget_at[out.nodes[i].a] = i;
  }
  std::vector<int> depth(out.size(), 0);
  {
    std::vector<int> stack{out.root};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int c : out.nodes[x].children) {
        depth[c] = depth[x] + 1;
        stack.push_back(c);
      }
    }
  }
  auto replace_child = [&](int parent, int was, int now) {
    if (parent == -1) {
      out.root = now;
      return;
    }
    for (int& c : out.nodes[parent].children)
      if (c == was) c = now;
  };
  auto splice_above = [&](int child, int u, int v) {
    int parent = out.nodes[child].parent;
    const std::vector<int>& cbag = out.nodes[child].bag;
    if (!std::binary_search(cbag.begin(), cbag.end(), u) ||
        !std::binary_search(cbag.begin(), cbag.end(), v))
      throw std::logic_error("make_nice: edge placement failed");
    int e = builder.add(NodeKind::introduce_edge, std::min(u, v),
                        std::max(u, v), cbag, {child});
    out.nodes[e].parent = parent;
    replace_child(parent, child, e);
  };
  int first_leaf = -1;
  for (int i = 0; i < out.size() && first_leaf == -1; ++i)
    if (out.nodes[i].kind == NodeKind::leaf) first_leaf = i;
  for (auto [u, v] : g.edges) {
    bool u_term = (u == s || u == t);
    bool v_term = (v == s || v == t);
    if (u_term && v_term) {
      // the terminal edge has no forget node; ride above the first leaf
      splice_above(first_leaf, u, v);
    } else if (u_term) {
      splice_above(out.nodes[forget_at[v]].children.at(0), u, v);
    } else if (v_term) {
      splice_above(out.nodes[forget_at[u]].children.at(0), u, v);
    } else {
      int fu = forget_at[u], fv = forget_at[v];
      int f = depth[fu] >= depth[fv] ? fu : fv;
      splice_above(out.nodes[f].children.at(0), u, v);
    }
  }

  int widest = 0;
  for (const auto& node : out.nodes)
    widest = std::max(widest, static_cast<int>(node.bag.size()));
  out.width = widest - 1;
  return out;
}

bool validate(const NiceTreeDecomposition& ntd, const Graph& g, int s, int t) {
  int nodes = ntd.size();
  if (nodes == 0 || ntd.root < 0 || ntd.root >= nodes) return false;
  if (s < 0 || t < 0 || s >= g.n || t >= g.n || s == t) return false;
  if (ntd.s != s || ntd.t != t) return false;

  // one root, mutual parent/child links, everything reachable exactly once
  if (ntd.nodes[ntd.root].parent != -1) return false;
  std::vector<int> times_child(nodes, 0);
  for (int i = 0; i < nodes; ++i)
    for (int c : ntd.nodes[i].children) {
      if (c < 0 || c >= nodes || ntd.nodes[c].parent != i) return false;
      ++times_child[c];
    }
  for (int i = 0; i < nodes; ++i)
    if (times_child[i] != (i == ntd.root ? 0 : 1)) return false;

  auto has = [](const std::vector<int>& bag, int v) {
    return std::binary_search(bag.begin(), bag.end(), v);
  };
  auto subset = [](const std::vector<int>& small,
                   const std::vector<int>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };

  int widest = 0;
  for (int i = 0; i < nodes; ++i) {
    const std::vector<int>& bag = ntd.nodes[i].bag;
    widest = std::max(widest, static_cast<int>(bag.size()));
    int last = -1;
    for (int v : bag) {
      if (v < 0 || v >= g.n || v <= last) return false;  // sorted, no repeats
      last = v;
    }
    if (!has(bag, s) || !has(bag, t)) return false;
  }
  if (ntd.width != widest - 1) return false;
  if (ntd.nodes[ntd.root].bag.size() != 2) return false;

  std::vector<std::pair<int, int>> introduced;
  for (int i = 0; i < nodes; ++i) {
    const NiceNode& node = ntd.nodes[i];
    int degree = static_cast<int>(node.children.size());
    switch (node.kind) {
      case NodeKind::leaf: {
        if (degree != 0 || node.bag.size() != 2) return false;
        break;
      }
      case NodeKind::introduce_vertex: {
        if (degree != 1) return false;
        const NiceNode& c = ntd.nodes[node.children[0]];
        int v = node.a;
        if (v < 0 || v >= g.n || v == s || v == t) return false;
        if (!has(node.bag, v) || has(c.bag, v)) return false;
        if (node.bag.size() != c.bag.size() + 1) return false;
        if (!subset(c.bag, node.bag)) return false;
        break;
      }
      case NodeKind::introduce_edge: {
        if (degree != 1) return false;
        const NiceNode& c = ntd.nodes[node.children[0]];
        if (node.a < 0 || node.b < 0 || node.a >= node.b) return false;
        if (!g.has_edge(node.a, node.b)) return false;
        if (!has(node.bag, node.a) || !has(node.bag, node.b)) return false;
        if (node.bag != c.bag) return false;
        introduced.emplace_back(node.a, node.b);
        break;
      }
      case NodeKind::forget: {
        if (degree != 1) return false;
        const NiceNode& c = ntd.nodes[node.children[0]];
        int v = node.a;
        if (v < 0 || v >= g.n || v == s || v == t) return false;
        if (has(node.bag, v) || !has(c.bag, v)) return false;
        if (c.bag.size() != node.bag.size() + 1) return false;
        if (!subset(node.bag, c.bag)) return false;
        break;
      }
      case NodeKind::join: {
        if (degree != 2) return false;
        for (int child : node.children)
          if (ntd.nodes[child].bag != node.bag) return false;
        break;
      }
    }
  }
  std::sort(introduced.begin(), introduced.end());
  if (introduced != g.edges) return false;  // each edge exactly once

  // plain decomposition side: every vertex housed and its occurrences
  // connected; a subgraph of the node tree is a forest, which is connected
  // exactly when it has one link less than it has nodes
  std::vector<int> count(g.n, 0), links(g.n, 0);
  for (int i = 0; i < nodes; ++i) {
    int p = ntd.nodes[i].parent;
    for (int v : ntd.nodes[i].bag) {
      ++count[v];
      if (p != -1 && has(ntd.nodes[p].bag, v)) ++links[v];
    }
  }
  for (int v = 0; v < g.n; ++v)
    if (count[v] == 0 || links[v] != count[v] - 1) return false;
  return true;
}

std::vector<int> postorder(const NiceTreeDecomposition& ntd) {
  std::vector<int> order;
  order.reserve(ntd.size());
  std::vector<std::pair<int, int>> stack;
  stack.emplace_back(ntd.root, 0);
  while (!stack.empty()) {
    auto [x, next_child] = stack.back();
    if (next_child < static_cast<int>(ntd.nodes[x].children.size())) {
      ++stack.back().second;
      stack.emplace_back(ntd.nodes[x].children[next_child], 0);
    } else {
      order.push_back(x);
      stack.pop_back();
    }
  }
  return order;
}

void write_td(std::ostream& out, const TreeDecomposition& td, int n_vertices) {
  int widest = 0;
  for (const auto& bag : td.bags) widest = std::max(widest, bag.size());
  out << "s td " << td.size() << ' ' << widest << ' ' << n_vertices << '\n';
  for (int i = 0; i < td.size(); ++i) {
    out << "b " << i + 1;
    for (int v : td.bags[i].items()) out << ' ' << v + 1;
    out << '\n';
  }
  for (int i = 0; i < td.size(); ++i)
    if (td.parent[i] != -1) out << td.parent[i] + 1 << ' ' << i + 1 << '\n';
}

TreeDecomposition read_td(std::istream& in) {
  std::string line;
  int line_no = 0;
  int bag_count = -1, header_widest = -1, n_vertices = -1;
  std::vector<std::vector<int>> bag_items;
  std::vector<char> declared;
  std::vector<std::pair<int, int>> links;
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("td: line " + std::to_string(line_no) + ": " +
                                what);
  };
  auto fail_total = [](const std::string& what) -> void {
    throw std::invalid_argument("td: " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;  // blank line
    if (head == "c") continue;
    if (head == "s") {
      if (bag_count != -1) fail("repeated header");
      std::string tag;
      if (!(ss >> tag) || tag != "td") fail("header is not \"s td\"");
      if (!(ss >> bag_count >> header_widest >> n_vertices))
        fail("header needs bag count, bag size and vertex count");
      if (bag_count < 1) fail("need at least one bag");
      if (header_widest < 0 || n_vertices < 0) fail("negative header field");
      bag_items.resize(bag_count);
      declared.assign(bag_count, 0);
      continue;
    }
    if (bag_count == -1) fail("content before the header");
    if (head == "b") {
      int id;
      if (!(ss >> id)) fail("bag line without an id");
      if (id < 1 || id > bag_count) fail("bag id out of range");
      if (declared[id - 1]) fail("duplicate bag id");
      declared[id - 1] = 1;
      int v;
      while (ss >> v) {
        if (v < 1 || v > n_vertices) fail("bag vertex out of range");
        bag_items[id - 1].push_back(v - 1);
      }
      if (!ss.eof()) fail("trailing junk on bag line");
      std::sort(bag_items[id - 1].begin(), bag_items[id - 1].end());
      bag_items[id - 1].erase(
          std::unique(bag_items[id - 1].begin(), bag_items[id - 1].end()),
          bag_items[id - 1].end());
      continue;
    }
    // anything else must be a tree link between two bag ids
    int u, v;
    std::istringstream es(line);
    if (!(es >> u >> v)) fail("expected a tree link");
    std::string rest;
    if (es >> rest) fail("trailing junk on link line");
    if (u < 1 || u > bag_count || v < 1 || v > bag_count)
      fail("link id out of range");
    if (u == v) fail("link joins a bag to itself");
    links.emplace_back(u - 1, v - 1);
  }
  if (bag_count == -1) fail_total("missing header");
  if (static_cast<int>(links.size()) != bag_count - 1)
    fail_total("wrong number of tree links");

  TreeDecomposition td;
  td.parent.assign(bag_count, -1);
  td.bags.reserve(bag_count);
  int widest = 0;
  for (auto& items : bag_items) {
    widest = std::max(widest, static_cast<int>(items.size()));
    td.bags.push_back(VertexSet::of(n_vertices, std::move(items)));
  }
  if (widest != header_widest)
    fail_total("header bag size does not match the bags");
  std::vector<std::vector<int>> nbrs(bag_count);
  for (auto [u, v] : links) {
    nbrs[u].push_back(v);
    nbrs[v].push_back(u);
  }
  std::vector<char> seen(bag_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++reached;
    for (int y : nbrs[x])
      if (!seen[y]) {
        seen[y] = 1;
        td.parent[y] = x;
        stack.push_back(y);
      }
  }
  if (reached != bag_count) fail_total("bag tree is disconnected");
  td.root = 0;
  td.width = widest - 1;
  return td;
}

}  // namespace ssp
