#include "secluded/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "secluded/rng.hpp"

namespace ssp {

namespace {

int log2_exact(int z) {
  if (z < 2 || (z & (z - 1)) != 0)
    throw std::invalid_argument("gadget: size must be a power of two >= 2");
  int d = 0;
  while ((1 << d) < z) ++d;
  return d;
}

int next_pow2(int x) {
  int p = 1;
  while (p < x) p <<= 1;
  return p;
}

}  // namespace

std::vector<int> gadget_link_positions(int p, int z) {
  int d = log2_exact(z);
  if (p < 0 || p >= z)
    throw std::invalid_argument("gadget: value out of range");
  std::vector<int> out;
  for (int b = d - 1; b >= 0; --b)
    if (p & (1 << b)) out.push_back(d - 1 - b);
  for (int b = d - 1; b >= 0; --b)
    if (!(p & (1 << b))) out.push_back(2 * d - 1 - b);
  std::sort(out.begin(), out.end());
  return out;
}

VcPptResult construct_vc_ppt(const MccInstance& mcc) {
  mcc.validate();
  const Graph& g = mcc.graph;
  int k = mcc.k;
  if (k < 2) throw std::invalid_argument("construct_vc_ppt: needs k >= 2");

  std::vector<int> cls_of(g.n, -1);
  std::vector<int> pos_in_cls(g.n, -1);
  int max_cls = 0;
  for (int i = 0; i < k; ++i) {
    for (size_t p = 0; p < mcc.classes[i].size(); ++p) {
      cls_of[mcc.classes[i][p]] = i;
      pos_in_cls[mcc.classes[i][p]] = static_cast<int>(p);
    }
    max_cls = std::max(max_cls, static_cast<int>(mcc.classes[i].size()));
  }
  for (auto [u, v] : g.edges) {
    if (cls_of[u] < 0 || cls_of[v] < 0)
      throw std::invalid_argument("construct_vc_ppt: edge on unclassified vertex");
    if (cls_of[u] == cls_of[v])
      throw std::invalid_argument("construct_vc_ppt: edge inside a class");
  }

  VcPptResult res;
  res.n_hat = next_pow2(std::max(2, max_cls));
  int d = log2_exact(res.n_hat);
  int pairs = k * (k - 1) / 2;

  // class pairs in lexicographic order; block index per pair
  std::vector<std::vector<int>> pair_index(k, std::vector<int>(k, -1));
  {
    int idx = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) pair_index[i][j] = idx++;
  }

  int64_t lp = g.m() - pairs + static_cast<int64_t>(k) * d;
  if (lp < 0) lp = 0;  // some pair block is empty, both sides are a no
  res.pendants_each = lp + 1;

  // id layout: s, t, edge vertices, connectors, gadget slots, pendants
  int next = 0;
  int s = next++, t = next++;
  res.edge_vertex.reserve(g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) res.edge_vertex.push_back(next++);
  for (int j = 0; j + 1 < pairs; ++j) res.connectors.push_back(next++);
  res.gadget.assign(k, {});
  for (int i = 0; i < k; ++i)
    for (int q = 0; q < 2 * d; ++q) res.gadget[i].push_back(next++);

  std::vector<std::pair<int, int>> edges;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    if (cls_of[a] > cls_of[b]) std::swap(a, b);
    int blk = pair_index[cls_of[a]][cls_of[b]];
    int ev = res.edge_vertex[e];
    // chain neighbors: s before the first block, t after the last
    if (blk == 0) edges.emplace_back(s, ev);
    else edges.emplace_back(res.connectors[blk - 1], ev);
    if (blk == pairs - 1) edges.emplace_back(ev, t);
    else edges.emplace_back(ev, res.connectors[blk]);
    for (int q : gadget_link_positions(pos_in_cls[a], res.n_hat))
      edges.emplace_back(ev, res.gadget[cls_of[a]][q]);
    for (int q : gadget_link_positions(pos_in_cls[b], res.n_hat))
      edges.emplace_back(ev, res.gadget[cls_of[b]][q]);
  }
  for (int i = 0; i < k; ++i)
    for (int u : res.gadget[i])
      for (int64_t c = 0; c < res.pendants_each; ++c)
        edges.emplace_back(u, next++);

  res.inst.graph = Graph::build(next, std::move(edges));
  res.inst.s = s;
  res.inst.t = t;
  res.inst.k = 2 * pairs + 1;
  res.inst.l = lp;
  res.inst.validate();
  return res;
}

CrossCompResult construct_tw_crosscomp(const std::vector<SspInstance>& inputs) {
  if (inputs.empty())
    throw std::invalid_argument("crosscomp: needs at least one input");
  int n = inputs[0].graph.n;
  int64_t k = inputs[0].k, l = inputs[0].l;
  for (const auto& in : inputs) {
    in.validate();
    if (in.graph.n != n || in.k != k || in.l != l)
      throw std::invalid_argument("crosscomp: inputs must share n, k and l");
  }

  CrossCompResult res;
  res.padded = next_pow2(static_cast<int>(inputs.size()));
  if (res.padded == 1) {
    res.inst = inputs[0];
    res.offset = {0};
    return res;
  }
  int p = res.padded;
  int d = 0;
  while ((1 << d) < p) ++d;

  // copies, then the two terminal trees (heap-indexed internal nodes)
  std::vector<std::pair<int, int>> edges;
  std::vector<int> leaf_s(p), leaf_t(p);
  for (int i = 0; i < p; ++i) {
    int off = i * n;
    res.offset.push_back(off);
    if (i < static_cast<int>(inputs.size())) {
      for (auto [u, v] : inputs[i].graph.edges)
        edges.emplace_back(off + u, off + v);
      leaf_s[i] = off + inputs[i].s;
      leaf_t[i] = off + inputs[i].t;
    } else {
      // edgeless pad slot: trivially infeasible
      leaf_s[i] = off + 0;
      leaf_t[i] = off + 1;
    }
  }
  int base_s = p * n;
  int base_t = base_s + (p - 1);
  auto tree = [&](int base, const std::vector<int>& leaves) {
    for (int j = 1; j < p; ++j)
      for (int c : {2 * j, 2 * j + 1}) {
        int child = c < p ? base + c - 1 : leaves[c - p];
        edges.emplace_back(base + j - 1, child);
      }
  };
  tree(base_s, leaf_s);
  tree(base_t, leaf_t);

  res.inst.graph = Graph::build(base_t + (p - 1), std::move(edges));
  res.inst.s = base_s;
  res.inst.t = base_t;
  res.inst.k = k + 2 * d;
  res.inst.l = l + 2 * d;
  res.inst.validate();
  return res;
}

SspInstance gen_tree_plus_edges(int n, int extra, int64_t k, int64_t l,
                                uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen: need at least two vertices");
  int64_t slack = static_cast<int64_t>(n) * (n - 1) / 2 - (n - 1);
  if (extra < 0 || extra > slack)
    throw std::invalid_argument("gen: extra edge count out of range");
  Rng rng(seed);
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < n; ++v) {
    int parent = static_cast<int>(rng.below(v));
    used.insert({std::min(parent, v), std::max(parent, v)});
  }
  int added = 0;
  while (added < extra) {
    int u = static_cast<int>(rng.below(n));
    int v = static_cast<int>(rng.below(n));
    if (u == v) continue;
    auto e = std::make_pair(std::min(u, v), std::max(u, v));
    if (used.insert(e).second) ++added;
  }
  SspInstance inst;
  inst.graph = Graph::build(n, {used.begin(), used.end()});
  inst.s = static_cast<int>(rng.below(n));
  inst.t = static_cast<int>(rng.below(n - 1));
  if (inst.t >= inst.s) ++inst.t;
  inst.k = k;
  inst.l = l;
  inst.validate();
  return inst;
}

SspInstance gen_grid(int w, int h, int64_t k, int64_t l) {
  if (w < 1 || h < 1 || w * h < 2)
    throw std::invalid_argument("gen: grid needs at least two vertices");
  std::vector<std::pair<int, int>> edges;
  auto id = [&](int r, int c) { return r * w + c; };
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      if (c + 1 < w) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < h) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  SspInstance inst;
  inst.graph = Graph::build(w * h, std::move(edges));
  inst.s = 0;
  inst.t = w * h - 1;
  inst.k = k;
  inst.l = l;
  inst.validate();
  return inst;
}

SspInstance gen_hex_grid(int w, int h, int64_t k, int64_t l) {
  if (w < 1 || h < 1 || w * h < 2)
    throw std::invalid_argument("gen: grid needs at least two vertices");
  std::vector<std::pair<int, int>> edges;
  auto id = [&](int r, int c) { return r * w + c; };
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      if (c + 1 < w) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < h && (r + c) % 2 == 0)
        edges.emplace_back(id(r, c), id(r + 1, c));
    }
  if (w == 1)  // degenerate: single column becomes a path
    for (int r = 0; r + 1 < h; ++r) edges.emplace_back(id(r, 0), id(r + 1, 0));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  SspInstance inst;
  inst.graph = Graph::build(w * h, std::move(edges));
  inst.s = 0;
  inst.t = w * h - 1;
  inst.k = k;
  inst.l = l;
  inst.validate();
  return inst;
}

SspInstance gen_series_parallel(int n, int64_t k, int64_t l, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen: need at least two vertices");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges{{0, 1}};
  for (int v = 2; v < n; ++v) {
    size_t e = static_cast<size_t>(rng.below(edges.size()));
    auto [a, b] = edges[e];
    if (rng.chance(0.5)) {
      edges[e] = {a, v};  // subdivide
      edges.emplace_back(v, b);
    } else {
      edges.emplace_back(a, v);  // parallel two-edge branch
      edges.emplace_back(v, b);
    }
  }
  SspInstance inst;
  inst.graph = Graph::build(n, std::move(edges));
  inst.s = 0;
  inst.t = 1;
  inst.k = k;
  inst.l = l;
  inst.validate();
  return inst;
}

MccInstance gen_mcc_random(int k, int class_size, double edge_prob,
                           uint64_t seed) {
  if (k < 1 || class_size < 1)
    throw std::invalid_argument("gen: bad multicolored clique shape");
  Rng rng(seed);
  MccInstance mcc;
  mcc.k = k;
  int n = k * class_size;
  mcc.classes.assign(k, {});
  for (int v = 0; v < n; ++v) mcc.classes[v / class_size].push_back(v);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (u / class_size != v / class_size && rng.chance(edge_prob))
        edges.emplace_back(u, v);
  mcc.graph = Graph::build(n, std::move(edges));
  mcc.validate();
  return mcc;
}

}  // namespace ssp
