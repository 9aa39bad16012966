#include "secluded/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssp {

void SspInstance::validate() const {
  if (s < 0 || s >= graph.n || t < 0 || t >= graph.n)
    throw std::invalid_argument("instance: s or t out of range");
  if (s == t) throw std::invalid_argument("instance: s equals t");
  if (k < 2) throw std::invalid_argument("instance: k must be at least 2");
  if (l < 0) throw std::invalid_argument("instance: l must be nonnegative");
}

void VwSspInstance::validate() const {
  SspInstance shell{graph, s, t, k, l};
  shell.validate();
  size_t n = static_cast<size_t>(graph.n);
  if (kappa.size() != n || lambda.size() != n || eta.size() != n)
    throw std::invalid_argument("instance: weight vector size mismatch");
  for (int v = 0; v < graph.n; ++v) {
    if (kappa[v] < 1) throw std::invalid_argument("instance: kappa below 1");
    if (lambda[v] < 0 || eta[v] < 0)
      throw std::invalid_argument("instance: negative weight");
  }
}

VwSspInstance lift(const SspInstance& inst) {
  inst.validate();
  VwSspInstance out;
  out.graph = inst.graph;
  out.s = inst.s;
  out.t = inst.t;
  out.k = inst.k;
  out.l = inst.l;
  out.kappa.assign(inst.graph.n, 1);
  out.lambda.assign(inst.graph.n, 1);
  out.eta.assign(inst.graph.n, 0);
  return out;
}

PathCost evaluate_path(const VwSspInstance& inst, const PathWitness& path) {
  if (path.empty()) throw std::invalid_argument("witness: empty path");
  if (path.front() != inst.s || path.back() != inst.t)
    throw std::invalid_argument("witness: endpoints are not s and t");
  std::vector<char> on_path(inst.graph.n, 0);
  for (int v : path) {
    if (v < 0 || v >= inst.graph.n)
      throw std::invalid_argument("witness: vertex out of range");
    if (on_path[v]) throw std::invalid_argument("witness: repeated vertex");
    on_path[v] = 1;
  }
  PathCost pc;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (!inst.graph.has_edge(path[i], path[i + 1]))
      throw std::invalid_argument("witness: consecutive vertices not adjacent");
  std::vector<char> seen_nb(inst.graph.n, 0);
  for (int v : path) {
    pc.cost += inst.kappa[v];
    pc.load += inst.eta[v];
    for (int w : inst.graph.adj[v])
      if (!on_path[w] && !seen_nb[w]) {
        seen_nb[w] = 1;
        pc.load += inst.lambda[w];
      }
  }
  return pc;
}

bool is_simple_instance(const VwSspInstance& inst, const VertexSet& a) {
  const Graph& g = inst.graph;
  if (a.universe() != g.n) return false;
  if (inst.kappa[inst.s] != 1 || inst.kappa[inst.t] != 1) return false;
  for (int v = 0; v < g.n; ++v)
    if (inst.lambda[v] != 1) return false;
  for (int v : a.items())
    if (inst.eta[v] <= inst.l || inst.kappa[v] != 1) return false;

  auto nonmarker_degree = [&](int v) {
    int d = 0;
    for (int w : g.adj[v])
      if (!a.contains(w)) ++d;
    return d;
  };
  for (int v = 0; v < g.n; ++v) {
    if (a.contains(v) || inst.kappa[v] <= 1) continue;
    std::vector<int> nb;
    for (int w : g.adj[v])
      if (!a.contains(w)) nb.push_back(w);
    if (nb.size() != 2) return false;
    for (int w : nb) {
      if (w == inst.s || w == inst.t) return false;
      if (inst.kappa[w] != 1) return false;
      if (nonmarker_degree(w) > 2) return false;
    }
  }
  return true;
}

std::pair<VwSspInstance, VertexSet> normalize_for_expansion(
    const VwSspInstance& inst, const VertexSet& a,
    std::vector<int>* origin_to_input) {
  inst.validate();
  const Graph& g = inst.graph;
  bool identity = true;
  for (int v = 0; v < g.n; ++v)
    if (inst.lambda[v] != 1) identity = false;
  if (identity) {
    if (origin_to_input) {
      origin_to_input->resize(g.n);
      for (int v = 0; v < g.n; ++v) (*origin_to_input)[v] = v;
    }
    return {inst, a};
  }

  // Replace each lambda != 1 vertex by lambda-many unit twins.  Vertices that
  // could still sit on a path cannot be rewritten this way.
  for (int v = 0; v < g.n; ++v)
    if (inst.lambda[v] != 1 && inst.kappa[v] <= inst.k)
      throw std::invalid_argument(
          "normalize_for_expansion: lambda != 1 on a vertex usable by a path");

  std::vector<std::vector<int>> reps(g.n);
  int next = 0;
  std::vector<int> origin;
  for (int v = 0; v < g.n; ++v) {
    int copies = inst.lambda[v] == 1 ? 1 : static_cast<int>(inst.lambda[v]);
    for (int c = 0; c < copies; ++c) {
      reps[v].push_back(next++);
      origin.push_back(v);
    }
  }

  VwSspInstance out;
  out.s = reps[inst.s][0];
  out.t = reps[inst.t][0];
  out.k = inst.k;
  out.l = inst.l;
  out.kappa.assign(next, 1);
  out.lambda.assign(next, 1);
  out.eta.assign(next, 0);
  VertexSet marks(next);
  for (int v = 0; v < g.n; ++v) {
    if (inst.lambda[v] == 1) {
      int id = reps[v][0];
      out.kappa[id] = inst.kappa[v];
      out.eta[id] = inst.eta[v];
      if (a.contains(v)) marks.insert(id);
    } else {
      for (int id : reps[v]) {
        out.eta[id] = inst.l + 1;
        marks.insert(id);
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, w] : g.edges)
    for (int iu : reps[u])
      for (int iw : reps[w]) edges.emplace_back(iu, iw);
  out.graph = Graph::build(next, std::move(edges));
  if (origin_to_input) *origin_to_input = std::move(origin);
  return {out, marks};
}

int64_t expansion_size(const VwSspInstance& inst, const VertexSet& a) {
  auto [norm, marks] = normalize_for_expansion(inst, a);
  (void)marks;
  int64_t total = 0;
  for (int v = 0; v < norm.graph.n; ++v) total += norm.kappa[v] + norm.eta[v];
  return total;
}

SspInstance expand_to_ssp(const VwSspInstance& inst, const VertexSet& a,
                          std::vector<int>* origin_to_input) {
  std::vector<int> norm_origin;
  auto [norm, marks] = normalize_for_expansion(inst, a, &norm_origin);
  if (!is_simple_instance(norm, marks))
    throw std::invalid_argument("expand_to_ssp: instance is not expandable");

  const Graph& g = norm.graph;
  int next = 0;
  std::vector<int> first_id(g.n), last_id(g.n);
  std::vector<int> origin;
  for (int v = 0; v < g.n; ++v) {
    first_id[v] = next;
    int span = static_cast<int>(norm.kappa[v]);
    next += span;
    last_id[v] = next - 1;
    for (int c = 0; c < span; ++c) origin.push_back(norm_origin[v]);
  }
  std::vector<int> attach(g.n);
  std::vector<std::pair<int, int>> edges;

  // Orient each kappa-path so its head faces the smaller of the two anchor
  // neighbors; the head also carries pendants and marker edges.
  for (int v = 0; v < g.n; ++v) {
    if (norm.kappa[v] == 1) {
      attach[v] = first_id[v];
      continue;
    }
    std::vector<int> anchors;
    for (int w : g.adj[v])
      if (!marks.contains(w)) anchors.push_back(w);
    // is_simple_instance guarantees exactly two anchors, sorted already
    int lo = anchors[0], hi = anchors[1];
    for (int id = first_id[v]; id < last_id[v]; ++id)
      edges.emplace_back(id, id + 1);
    edges.emplace_back(first_id[lo], first_id[v]);
    edges.emplace_back(last_id[v], first_id[hi]);
    attach[v] = first_id[v];
  }
  for (auto [u, w] : g.edges) {
    bool mu = norm.kappa[u] > 1, mw = norm.kappa[w] > 1;
    if (!mu && !mw) {
      edges.emplace_back(first_id[u], first_id[w]);
    } else if (mu && marks.contains(w)) {
      edges.emplace_back(attach[u], first_id[w]);
    } else if (mw && marks.contains(u)) {
      edges.emplace_back(attach[w], first_id[u]);
    }
    // anchor edges of kappa-paths were added above
  }
  for (int v = 0; v < g.n; ++v)
    for (int64_t c = 0; c < norm.eta[v]; ++c) {
      edges.emplace_back(attach[v], next);
      origin.push_back(norm_origin[v]);
      ++next;
    }

  SspInstance out;
  out.graph = Graph::build(next, std::move(edges));
  out.s = first_id[norm.s];
  out.t = first_id[norm.t];
  out.k = norm.k;
  out.l = norm.l;
  out.validate();
  if (out.graph.n != expansion_size(inst, a))
    throw std::logic_error("expand_to_ssp: size mismatch");
  if (origin_to_input) *origin_to_input = std::move(origin);
  return out;
}

}  // namespace ssp
