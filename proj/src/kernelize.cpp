#include "secluded/kernelize.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace ssp {

namespace {

bool unit_weights(const VwSspInstance& i) {
  for (int v = 0; v < i.graph.n; ++v)
    if (i.kappa[v] != 1 || i.lambda[v] != 1 || i.eta[v] != 0) return false;
  return true;
}

VwSspInstance restrict_to(const VwSspInstance& i, const VertexSet& keep,
                          Renumbering* map_out = nullptr) {
  Renumbering r;
  VwSspInstance out;
  out.graph = induced_subgraph(i.graph, keep, &r);
  out.s = r.old_to_new[i.s];
  out.t = r.old_to_new[i.t];
  out.k = i.k;
  out.l = i.l;
  for (int v : r.new_to_old) {
    out.kappa.push_back(i.kappa[v]);
    out.lambda.push_back(i.lambda[v]);
    out.eta.push_back(i.eta[v]);
  }
  if (out.s < 0 || out.t < 0)
    throw std::logic_error("kernelize: a terminal was deleted");
  if (map_out) *map_out = std::move(r);
  return out;
}

}  // namespace

std::optional<VwSspInstance> rr_connected(const VwSspInstance& inst) {
  inst.validate();
  for (const auto& comp : connected_components(inst.graph)) {
    if (!comp.contains(inst.s)) continue;
    if (!comp.contains(inst.t)) return std::nullopt;
    if (comp.size() == inst.graph.n) return inst;
    return restrict_to(inst, comp);
  }
  return std::nullopt;
}

VwSspInstance rr_twin_reduce(const VwSspInstance& inst, int r) {
  inst.validate();
  if (r < 1) throw std::invalid_argument("twin reduce: r must be positive");
  if (!unit_weights(inst))
    throw std::invalid_argument("twin reduce: needs unit weights");
  VwSspInstance out = inst;
  VertexSet keep(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v) keep.insert(v);
  for (const auto& cls : twin_classes(inst.graph)) {
    if (cls.size() <= r) continue;
    if (cls.contains(inst.s) || cls.contains(inst.t)) continue;
    // a class above r with r common neighbors would embed K_{r,r}
    if (open_neighborhood(inst.graph, cls).size() >= r)
      throw std::invalid_argument("twin reduce: K_{r,r} subgraph present");
    const auto& members = cls.items();
    for (size_t j = static_cast<size_t>(r); j < members.size(); ++j)
      keep.erase(members[j]);
    out.lambda[members[0]] = static_cast<int64_t>(members.size()) - r + 1;
    out.kappa[members[0]] = inst.k + 1;
  }
  return restrict_to(out, keep);
}

FvsClassification classify_fvs(const VwSspInstance& inst, const VertexSet& f) {
  inst.validate();
  if (f.universe() != inst.graph.n)
    throw std::invalid_argument("classify: universe mismatch");
  if (!f.contains(inst.s) || !f.contains(inst.t))
    throw std::invalid_argument("classify: f must contain s and t");
  VertexSet rest(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v)
    if (!f.contains(v)) rest.insert(v);
  Renumbering map;
  Graph sub = induced_subgraph(inst.graph, rest, &map);
  if (!is_forest(sub))
    throw std::invalid_argument("classify: removal of f leaves a cycle");

  FvsClassification cls;
  cls.f = f;
  cls.r = VertexSet(inst.graph.n);
  int64_t budget = inst.k + inst.l;
  for (int v : f.items()) {
    // pendants can only be on a path as its end, so s,t do not count here
    int64_t pendants = 0;
    for (int w : inst.graph.adj[v])
      if (inst.graph.degree(w) == 1 && w != inst.s && w != inst.t) ++pendants;
    if (inst.graph.degree(v) > budget || pendants > inst.l) cls.r.insert(v);
  }
  cls.y = VertexSet(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v) {
    if (f.contains(v)) continue;
    for (int w : inst.graph.adj[v])
      if (f.contains(w) && !cls.r.contains(w)) {
        cls.y.insert(v);
        break;
      }
  }
  for (const auto& comp : connected_components(sub)) {
    VertexSet tree(inst.graph.n);
    for (int v : comp.items()) tree.insert(map.new_to_old[v]);
    cls.trees.push_back(std::move(tree));
  }
  if (cls.y.size() > static_cast<int64_t>(f.size()) * budget)
    throw std::logic_error("classify: good-vertex count exceeds |F|*(k+l)");
  return cls;
}

VwSspInstance rr_forbidden(const VwSspInstance& inst,
                           const FvsClassification& cls) {
  VwSspInstance out = inst;
  for (int v : cls.r.items()) out.eta[v] = inst.l + 1;
  return out;
}

VwSspInstance rr_delete_trees(const VwSspInstance& inst,
                              const FvsClassification& cls) {
  VertexSet keep(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v) keep.insert(v);
  for (const auto& tree : cls.trees) {
    bool has_good = false;
    for (int v : tree.items())
      if (cls.y.contains(v)) {
        has_good = true;
        break;
      }
    if (!has_good)
      for (int v : tree.items()) keep.erase(v);
  }
  return restrict_to(inst, keep);
}

namespace {

// Shared cores for the single-application rules: `blocked` (may be null)
// plays the feedback-set role, `good` the protected vertices, `forbid` (may
// be null) the reattachment targets for shrinking.
int nonblocked_degree(const Graph& g, const VertexSet* blocked, int v) {
  if (!blocked) return g.degree(v);
  int d = 0;
  for (int w : g.adj[v])
    if (!blocked->contains(w)) ++d;
  return d;
}

std::optional<VwSspInstance> burn_one(const VwSspInstance& inst,
                                      const VertexSet* blocked,
                                      const VertexSet& good) {
  for (int v = 0; v < inst.graph.n; ++v) {
    if (good.contains(v) || (blocked && blocked->contains(v))) continue;
    if (nonblocked_degree(inst.graph, blocked, v) != 1) continue;
    int w = -1;
    for (int u : inst.graph.adj[v])
      if (!blocked || !blocked->contains(u)) w = u;
    VwSspInstance out = inst;
    out.eta[w] = std::min(inst.l + 1, out.eta[w] + 1);
    VertexSet keep(inst.graph.n);
    for (int u = 0; u < inst.graph.n; ++u)
      if (u != v) keep.insert(u);
    return restrict_to(out, keep);
  }
  return std::nullopt;
}

std::optional<VwSspInstance> shrink_one(const VwSspInstance& inst,
                                        const VertexSet* blocked,
                                        const VertexSet& good,
                                        const VertexSet* forbid) {
  const Graph& g = inst.graph;
  auto eligible = [&](int v) {
    return !good.contains(v) && (!blocked || !blocked->contains(v)) &&
           nonblocked_degree(g, blocked, v) <= 2;
  };
  std::vector<char> seen(g.n, 0);
  for (int v0 = 0; v0 < g.n; ++v0) {
    if (seen[v0] || (blocked && blocked->contains(v0)) || !eligible(v0))
      continue;
    std::vector<int> comp;
    std::vector<int> stack{v0};
    seen[v0] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : g.adj[u])
        if (!seen[w] && (!blocked || !blocked->contains(w)) && eligible(w)) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    if (comp.size() <= 3) continue;

    // order the run: walk from the smaller-id end
    auto in_comp_deg = [&](int u) {
      int d = 0;
      for (int w : g.adj[u])
        if ((!blocked || !blocked->contains(w)) && eligible(w) &&
            std::find(comp.begin(), comp.end(), w) != comp.end())
          ++d;
      return d;
    };
    int start = -1;
    for (int u : comp)
      if (in_comp_deg(u) <= 1 && (start == -1 || u < start)) start = u;
    std::vector<int> seq;
    int prev = -1, cur = start;
    while (cur != -1) {
      seq.push_back(cur);
      int nxt = -1;
      for (int w : g.adj[cur])
        if (w != prev && (!blocked || !blocked->contains(w)) && eligible(w) &&
            std::find(comp.begin(), comp.end(), w) != comp.end())
          nxt = w;
      prev = cur;
      cur = nxt;
    }
    if (seq.size() != comp.size())
      throw std::logic_error("shrink: run is not a path");
    int a = seq.front(), b = seq.back();

    VertexSet keep(g.n);
    std::vector<char> in_run(g.n, 0);
    for (size_t i = 1; i + 1 < seq.size(); ++i) in_run[seq[i]] = 1;
    for (int u = 0; u < g.n; ++u)
      if (!in_run[u]) keep.insert(u);
    int64_t kap = 0, et = 0;
    std::set<int> reattach;
    for (size_t i = 1; i + 1 < seq.size(); ++i) {
      int u = seq[i];
      kap += inst.kappa[u];
      et += inst.eta[u];
      if (forbid)
        for (int w : g.adj[u])
          if (forbid->contains(w)) reattach.insert(w);
    }

    Renumbering map;
    Graph sub = induced_subgraph(g, keep, &map);
    int x = sub.n;
    auto edges = sub.edges;
    edges.emplace_back(map.old_to_new[a], x);
    edges.emplace_back(map.old_to_new[b], x);
    for (int w : reattach) edges.emplace_back(map.old_to_new[w], x);
    VwSspInstance out;
    out.graph = Graph::build(sub.n + 1, std::move(edges));
    out.s = map.old_to_new[inst.s];
    out.t = map.old_to_new[inst.t];
    out.k = inst.k;
    out.l = inst.l;
    for (int u : map.new_to_old) {
      out.kappa.push_back(inst.kappa[u]);
      out.lambda.push_back(inst.lambda[u]);
      out.eta.push_back(inst.eta[u]);
    }
    out.kappa.push_back(std::min(inst.k + 1, kap));
    out.lambda.push_back(1);
    out.eta.push_back(std::min(inst.l + 1, et));
    out.validate();
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::optional<VwSspInstance> rr_burn_leaf(const VwSspInstance& inst,
                                          const FvsClassification& cls) {
  return burn_one(inst, &cls.f, cls.y);
}

std::optional<VwSspInstance> rr_shrink_edgy(const VwSspInstance& inst,
                                            const FvsClassification& cls) {
  return shrink_one(inst, &cls.f, cls.y, &cls.r);
}

namespace {

void check_fes_good(const VwSspInstance& inst, const VertexSet& good) {
  if (good.universe() != inst.graph.n)
    throw std::invalid_argument("fes rule: universe mismatch");
  if (!good.contains(inst.s) || !good.contains(inst.t))
    throw std::invalid_argument("fes rule: good set must contain s and t");
  VertexSet rest(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v)
    if (!good.contains(v)) rest.insert(v);
  if (!is_forest(induced_subgraph(inst.graph, rest)))
    throw std::invalid_argument("fes rule: non-good vertices contain a cycle");
}

}  // namespace

std::optional<VwSspInstance> rr_burn_leaf_fes(const VwSspInstance& inst,
                                              const VertexSet& good) {
  check_fes_good(inst, good);
  return burn_one(inst, nullptr, good);
}

std::optional<VwSspInstance> rr_shrink_edgy_fes(const VwSspInstance& inst,
                                                const VertexSet& good) {
  check_fes_good(inst, good);
  return shrink_one(inst, nullptr, good, nullptr);
}

namespace {

// Batch pipeline state over stable vertex ids: input ids stay fixed,
// aggregates append past them, and only finalize() renumbers.
struct Reducer {
  int s = -1, t = -1;
  int64_t k = 0, l = 0;
  std::vector<char> alive;
  std::vector<std::vector<int>> adj;  // alive-to-alive, sorted
  std::vector<int64_t> kappa, lambda, eta;
  std::vector<char> blocked, forbid, good;
  std::vector<TraceStep> steps;

  void init(const VwSspInstance& inst) {
    s = inst.s;
    t = inst.t;
    k = inst.k;
    l = inst.l;
    alive.assign(inst.graph.n, 1);
    adj = inst.graph.adj;
    kappa = inst.kappa;
    lambda = inst.lambda;
    eta = inst.eta;
    blocked.assign(inst.graph.n, 0);
    forbid.assign(inst.graph.n, 0);
    good.assign(inst.graph.n, 0);
    steps.push_back({});
    steps.back().rule = RuleId::lift_weights;
  }

  int n() const { return static_cast<int>(alive.size()); }

  void detach(int v) {
    for (int w : adj[v]) {
      auto& nb = adj[w];
      nb.erase(std::find(nb.begin(), nb.end(), v));
    }
    adj[v].clear();
    alive[v] = 0;
  }

  int tree_deg(int v) const {
    int d = 0;
    for (int w : adj[v])
      if (!blocked[w]) ++d;
    return d;
  }

  Graph stable_graph() const {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n(); ++v)
      for (int w : adj[v])
        if (w > v) edges.emplace_back(v, w);
    return Graph::build(n(), std::move(edges));
  }

  VertexSet alive_set() const {
    VertexSet out(n());
    for (int v = 0; v < n(); ++v)
      if (alive[v]) out.insert(v);
    return out;
  }

  bool keep_st_component() {
    std::vector<char> seen(n(), 0);
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
    }
    if (!seen[t]) return false;
    TraceStep st;
    st.rule = RuleId::keep_st_component;
    for (int v = 0; v < n(); ++v)
      if (alive[v] && !seen[v]) st.removed.push_back(v);
    for (int v : st.removed) detach(v);
    steps.push_back(std::move(st));
    return true;
  }

  void twin_reduce(int r) {
    Renumbering map;
    Graph sub = induced_subgraph(stable_graph(), alive_set(), &map);
    for (const auto& cls : twin_classes(sub)) {
      if (cls.size() <= r) continue;
      std::vector<int> members;
      for (int v : cls.items()) members.push_back(map.new_to_old[v]);
      if (std::find(members.begin(), members.end(), s) != members.end() ||
          std::find(members.begin(), members.end(), t) != members.end())
        continue;
      if (open_neighborhood(sub, cls).size() >= r)
        throw std::invalid_argument("twin reduce: K_{r,r} subgraph present");
      TraceStep st;
      st.rule = RuleId::twin_reduce;
      for (size_t j = static_cast<size_t>(r); j < members.size(); ++j)
        st.removed.push_back(members[j]);
      int marker = members[0];
      lambda[marker] = static_cast<int64_t>(members.size()) - r + 1;
      kappa[marker] = k + 1;
      st.lambda_updates.emplace_back(marker, lambda[marker]);
      st.kappa_updates.emplace_back(marker, kappa[marker]);
      for (int v : st.removed) detach(v);
      steps.push_back(std::move(st));
    }
  }

  void classify(const std::vector<char>& f_mask) {
    blocked = f_mask;
    int64_t budget = k + l;
    int64_t fcount = 0, ycount = 0;
    for (int v = 0; v < n(); ++v) {
      if (!alive[v] || !blocked[v]) continue;
      ++fcount;
      int64_t pendants = 0;
      for (int w : adj[v])
        if (adj[w].size() == 1 && w != s && w != t) ++pendants;
      if (static_cast<int64_t>(adj[v].size()) > budget || pendants > l)
        forbid[v] = 1;
    }
    for (int v = 0; v < n(); ++v) {
      if (!alive[v] || blocked[v]) continue;
      for (int w : adj[v])
        if (blocked[w] && !forbid[w]) {
          good[v] = 1;
          ++ycount;
          break;
        }
    }
    if (ycount > fcount * budget)
      throw std::logic_error("classify: good-vertex count exceeds |F|*(k+l)");
  }

  void mark_forbidden() {
    TraceStep st;
    st.rule = RuleId::mark_forbidden;
    for (int v = 0; v < n(); ++v)
      if (alive[v] && forbid[v]) {
        eta[v] = l + 1;
        st.eta_updates.emplace_back(v, eta[v]);
      }
    steps.push_back(std::move(st));
  }

  void drop_dead_trees() {
    std::vector<char> seen(n(), 0);
    for (int v0 = 0; v0 < n(); ++v0) {
      if (!alive[v0] || blocked[v0] || seen[v0]) continue;
      std::vector<int> comp, stack{v0};
      seen[v0] = 1;
      bool has_good = false;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        if (good[v]) has_good = true;
        for (int w : adj[v])
          if (!blocked[w] && !seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      if (has_good) continue;
      TraceStep st;
      st.rule = RuleId::drop_dead_trees;
      std::sort(comp.begin(), comp.end());
      st.removed = comp;
      for (int v : comp) detach(v);
      steps.push_back(std::move(st));
    }
  }

  bool burnable(int v) const {
    return alive[v] && !blocked[v] && !good[v] && tree_deg(v) == 1;
  }

  void burn_exhaustive() {
    std::deque<int> q;
    for (int v = 0; v < n(); ++v)
      if (burnable(v)) q.push_back(v);
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (!burnable(v)) continue;
      int w = -1;
      for (int u : adj[v])
        if (!blocked[u]) w = u;
      TraceStep st;
      st.rule = RuleId::burn_leaf;
      st.removed = {v};
      eta[w] = std::min(l + 1, eta[w] + 1);
      st.eta_updates.emplace_back(w, eta[w]);
      detach(v);
      steps.push_back(std::move(st));
      if (burnable(w)) q.push_back(w);
    }
  }

  bool runnable(int v) const {
    return alive[v] && !blocked[v] && !good[v] && tree_deg(v) <= 2;
  }

  void shrink_exhaustive() {
    std::vector<char> processed(alive.size(), 0);
    for (int v0 = 0; v0 < static_cast<int>(alive.size()); ++v0) {
      if (processed[v0] || !runnable(v0)) continue;
      std::vector<int> comp, stack{v0};
      std::vector<char> in_comp(alive.size(), 0);
      in_comp[v0] = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (int w : adj[u])
          if (!blocked[w] && !in_comp[w] && runnable(w)) {
            in_comp[w] = 1;
            stack.push_back(w);
          }
      }
      for (int u : comp) processed[u] = 1;
      if (comp.size() <= 3) continue;

      auto in_comp_deg = [&](int u) {
        int d = 0;
        for (int w : adj[u])
          if (in_comp[w]) ++d;
        return d;
      };
      int start = -1;
      for (int u : comp)
        if (in_comp_deg(u) <= 1 && (start == -1 || u < start)) start = u;
      if (start == -1) throw std::logic_error("shrink: run has no end");
      std::vector<int> seq;
      int prev = -1, cur = start;
      while (cur != -1) {
        seq.push_back(cur);
        int nxt = -1;
        for (int w : adj[cur])
          if (in_comp[w] && w != prev) nxt = w;
        prev = cur;
        cur = nxt;
      }
      if (seq.size() != comp.size())
        throw std::logic_error("shrink: run is not a path");

      TraceStep st;
      st.rule = RuleId::shrink_run;
      st.end_a = seq.front();
      st.end_b = seq.back();
      int64_t kap = 0, et = 0;
      std::set<int> nbs{st.end_a, st.end_b};
      for (size_t i = 1; i + 1 < seq.size(); ++i) {
        int u = seq[i];
        st.run.push_back(u);
        kap += kappa[u];
        et += eta[u];
        for (int w : adj[u])
          if (forbid[w]) nbs.insert(w);
      }
      int x = static_cast<int>(alive.size());
      st.added = x;
      st.added_edges.assign(nbs.begin(), nbs.end());
      st.kappa_updates.emplace_back(x, std::min(k + 1, kap));
      st.eta_updates.emplace_back(x, std::min(l + 1, et));

      alive.push_back(1);
      blocked.push_back(0);
      forbid.push_back(0);
      good.push_back(0);
      processed.push_back(0);
      kappa.push_back(std::min(k + 1, kap));
      lambda.push_back(1);
      eta.push_back(std::min(l + 1, et));
      adj.push_back(st.added_edges);
      for (int w : st.added_edges) adj[w].push_back(x);  // x is the max id
      for (int u : st.run) detach(u);
      steps.push_back(std::move(st));
    }
  }

  void assert_fixpoint() {
    for (int v = 0; v < n(); ++v)
      if (burnable(v))
        throw std::logic_error("kernelize: burnable leaf after exhaustion");
    std::vector<char> seen(n(), 0);
    for (int v0 = 0; v0 < n(); ++v0) {
      if (seen[v0] || !runnable(v0)) continue;
      std::vector<int> comp, stack{v0};
      seen[v0] = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (int w : adj[u])
          if (!blocked[w] && !seen[w] && runnable(w)) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      if (comp.size() > 3)
        throw std::logic_error("kernelize: shrinkable run after exhaustion");
    }
    // every surviving tree keeps a protected vertex; forbidden stay saturated
    std::vector<char> tseen(n(), 0);
    for (int v0 = 0; v0 < n(); ++v0) {
      if (!alive[v0] || blocked[v0] || tseen[v0]) continue;
      bool has_good = false;
      std::vector<int> stack{v0};
      tseen[v0] = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (good[u]) has_good = true;
        for (int w : adj[u])
          if (!blocked[w] && !tseen[w]) {
            tseen[w] = 1;
            stack.push_back(w);
          }
      }
      bool any_blocked = false;
      for (int v = 0; v < n(); ++v) any_blocked |= (alive[v] && blocked[v]);
      if (!has_good && any_blocked)
        throw std::logic_error("kernelize: tree without protected vertex");
    }
    for (int v = 0; v < n(); ++v)
      if (alive[v] && forbid[v] && eta[v] != l + 1)
        throw std::logic_error("kernelize: forbidden vertex not saturated");
  }

  VwSspInstance finalize(ReductionTrace* trace) {
    std::vector<int> old_to_new(alive.size(), -1);
    int id = 0;
    for (int v = 0; v < n(); ++v)
      if (alive[v]) old_to_new[v] = id++;
    TraceStep st;
    st.rule = RuleId::compact_ids;
    st.old_to_new = old_to_new;
    steps.push_back(std::move(st));

    VwSspInstance out;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n(); ++v) {
      if (!alive[v]) continue;
      for (int w : adj[v])
        if (w > v) edges.emplace_back(old_to_new[v], old_to_new[w]);
    }
    out.graph = Graph::build(id, std::move(edges));
    out.s = old_to_new[s];
    out.t = old_to_new[t];
    out.k = k;
    out.l = l;
    out.kappa.resize(id);
    out.lambda.resize(id);
    out.eta.resize(id);
    for (int v = 0; v < n(); ++v)
      if (alive[v]) {
        out.kappa[old_to_new[v]] = kappa[v];
        out.lambda[old_to_new[v]] = lambda[v];
        out.eta[old_to_new[v]] = eta[v];
      }
    out.validate();
    trace->steps = std::move(steps);
    trace->stable_to_kernel = old_to_new;
    trace->kernel_to_stable.resize(id);
    for (int v = 0; v < n(); ++v)
      if (old_to_new[v] >= 0) trace->kernel_to_stable[old_to_new[v]] = v;
    return out;
  }
};

void check_weight_clamps(const VwSspInstance& inst) {
  for (int v = 0; v < inst.graph.n; ++v)
    if (inst.kappa[v] > inst.k + 1 || inst.eta[v] > inst.l + 1)
      throw std::logic_error("kernelize: weight clamp violated");
}

}  // namespace

FvsKernel kernelize_fvs(const SspInstance& input) {
  input.validate();
  FvsKernel out;
  Reducer red;
  red.init(lift(input));
  if (!red.keep_st_component()) {
    out.definite_no = true;
    return out;
  }

  // feedback set of the live component, forced through s and t, then pruned
  Renumbering map;
  Graph sub = induced_subgraph(red.stable_graph(), red.alive_set(), &map);
  std::vector<char> fmask(red.n(), 0);
  fmask[red.s] = fmask[red.t] = 1;
  VertexSet heuristic = feedback_vertex_set_heuristic(sub);
  for (int v : heuristic.items()) fmask[map.new_to_old[v]] = 1;
  auto residual_is_forest = [&](const std::vector<char>& mask) {
    VertexSet keep(red.n());
    for (int v = 0; v < red.n(); ++v)
      if (red.alive[v] && !mask[v]) keep.insert(v);
    return is_forest(induced_subgraph(red.stable_graph(), keep));
  };
  for (int v = 0; v < red.n(); ++v) {
    if (!fmask[v] || v == red.s || v == red.t) continue;
    fmask[v] = 0;
    if (!residual_is_forest(fmask)) fmask[v] = 1;
  }

  red.classify(fmask);
  red.mark_forbidden();
  red.drop_dead_trees();
  red.burn_exhaustive();
  red.shrink_exhaustive();
  red.assert_fixpoint();
  out.inst = red.finalize(&out.trace);
  check_weight_clamps(out.inst);

  out.forbidden = VertexSet(out.inst.graph.n);
  for (int v = 0; v < red.n(); ++v) {
    int nv = out.trace.stable_to_kernel[v];
    if (nv < 0) continue;
    if (red.blocked[v]) out.anchors.push_back(nv);
    if (red.forbid[v]) out.forbidden.insert(nv);
    if (red.good[v]) out.forced.push_back(nv);
  }
  std::sort(out.anchors.begin(), out.anchors.end());
  std::sort(out.forced.begin(), out.forced.end());

  // per-tree size bound against the protected vertices
  VertexSet nonf(out.inst.graph.n);
  std::vector<char> is_forced(out.inst.graph.n, 0);
  for (int v : out.forced) is_forced[v] = 1;
  {
    std::vector<char> is_anchor(out.inst.graph.n, 0);
    for (int v : out.anchors) is_anchor[v] = 1;
    for (int v = 0; v < out.inst.graph.n; ++v)
      if (!is_anchor[v]) nonf.insert(v);
  }
  Renumbering tmap;
  Graph tsub = induced_subgraph(out.inst.graph, nonf, &tmap);
  for (const auto& comp : connected_components(tsub)) {
    int64_t forced_count = 0;
    for (int v : comp.items())
      if (is_forced[tmap.new_to_old[v]]) ++forced_count;
    if (comp.size() > 8 * forced_count)
      throw std::logic_error("kernelize: tree exceeds 8x its protected count");
  }
  if (!is_simple_instance(out.inst, out.forbidden))
    throw std::logic_error("kernelize: fvs kernel is not expandable");
  return out;
}

FesKernel kernelize_fes(const SspInstance& input) {
  input.validate();
  FesKernel out;
  Reducer red;
  red.init(lift(input));
  if (!red.keep_st_component()) {
    out.definite_no = true;
    return out;
  }

  Renumbering map;
  Graph sub = induced_subgraph(red.stable_graph(), red.alive_set(), &map);
  auto feedback = feedback_edge_set(sub);
  out.fes = sub.m() - sub.n + 1;
  if (out.fes != static_cast<int64_t>(feedback.size()))
    throw std::logic_error("kernelize: feedback edge count mismatch");
  red.good[red.s] = red.good[red.t] = 1;
  for (auto [u, v] : feedback) {
    red.good[map.new_to_old[u]] = 1;
    red.good[map.new_to_old[v]] = 1;
  }

  red.burn_exhaustive();
  red.shrink_exhaustive();
  red.assert_fixpoint();
  out.inst = red.finalize(&out.trace);
  check_weight_clamps(out.inst);
  if (out.inst.graph.n > 16 * out.fes + 9 ||
      out.inst.graph.m() > 17 * out.fes + 8)
    throw std::logic_error("kernelize: fes size bound violated");
  if (!is_simple_instance(out.inst, VertexSet(out.inst.graph.n)))
    throw std::logic_error("kernelize: fes kernel is not expandable");
  return out;
}

TwinKernel kernelize_vc_krr(const SspInstance& input, int r) {
  input.validate();
  if (r < 1) throw std::invalid_argument("kernelize: r must be positive");
  TwinKernel out;
  Reducer red;
  red.init(lift(input));
  if (!red.keep_st_component()) {
    out.definite_no = true;
    return out;
  }
  Graph sub = induced_subgraph(red.stable_graph(), red.alive_set());
  if (r == 2 && contains_k22(sub))
    throw std::invalid_argument("kernelize: input has a K_{2,2} subgraph");

  // matching-based cover of the live component, for the size bound below
  int64_t cover = 0;
  {
    std::vector<char> covered(sub.n, 0);
    for (auto [u, v] : sub.edges)
      if (!covered[u] && !covered[v]) {
        covered[u] = covered[v] = 1;
        cover += 2;
      }
  }

  red.twin_reduce(r);
  out.inst = red.finalize(&out.trace);
  for (int v = 0; v < out.inst.graph.n; ++v)
    if (out.inst.kappa[v] > out.inst.k + 1)
      throw std::logic_error("kernelize: weight clamp violated");

  for (const auto& cls : twin_classes(out.inst.graph))
    if (cls.size() > r && !cls.contains(out.inst.s) && !cls.contains(out.inst.t))
      throw std::logic_error("kernelize: twin class above r after reduction");
  // size bound (cover+2) + r*(cover+2)^r, saturating well past any real n
  int64_t base = cover + 2, pw = 1;
  bool saturated = false;
  for (int i = 0; i < r; ++i) {
    if (pw > (int64_t{1} << 40)) {
      saturated = true;
      break;
    }
    pw *= base;
  }
  int64_t bound = saturated ? INT64_MAX : base + r * pw;
  if (out.inst.graph.n > bound)
    throw std::logic_error("kernelize: twin kernel exceeds its size bound");
  return out;
}

VwSspInstance replay_trace(const SspInstance& input,
                           const ReductionTrace& trace) {
  std::vector<char> alive;
  std::vector<std::vector<int>> adj;
  std::vector<int64_t> kap, lam, eta;
  int s = -1, t = -1;
  int64_t k = 0, l = 0;
  auto detach = [&](int v) {
    for (int w : adj[v]) {
      auto& nb = adj[w];
      nb.erase(std::find(nb.begin(), nb.end(), v));
    }
    adj[v].clear();
    alive[v] = 0;
  };
  VwSspInstance out;
  bool compacted = false;
  for (const auto& st : trace.steps) {
    if (st.rule == RuleId::lift_weights) {
      VwSspInstance base = lift(input);
      alive.assign(base.graph.n, 1);
      adj = base.graph.adj;
      kap = base.kappa;
      lam = base.lambda;
      eta = base.eta;
      s = base.s;
      t = base.t;
      k = base.k;
      l = base.l;
      continue;
    }
    if (st.rule == RuleId::compact_ids) {
      const auto& o2n = st.old_to_new;
      int id = 0;
      for (int v : o2n) id = std::max(id, v + 1);
      std::vector<std::pair<int, int>> edges;
      out.kappa.resize(id);
      out.lambda.resize(id);
      out.eta.resize(id);
      for (size_t v = 0; v < o2n.size(); ++v) {
        if (o2n[v] < 0) continue;
        out.kappa[o2n[v]] = kap[v];
        out.lambda[o2n[v]] = lam[v];
        out.eta[o2n[v]] = eta[v];
        for (int w : adj[v])
          if (w > static_cast<int>(v)) edges.emplace_back(o2n[v], o2n[w]);
      }
      out.graph = Graph::build(id, std::move(edges));
      out.s = o2n[s];
      out.t = o2n[t];
      out.k = k;
      out.l = l;
      compacted = true;
      continue;
    }
    if (st.rule == RuleId::shrink_run) {
      int x = st.added;
      if (x != static_cast<int>(alive.size()))
        throw std::logic_error("replay: aggregate id out of sequence");
      alive.push_back(1);
      adj.push_back(st.added_edges);
      kap.push_back(1);
      lam.push_back(1);
      eta.push_back(0);
      for (int w : st.added_edges) adj[w].push_back(x);
    }
    for (auto [v, val] : st.kappa_updates) kap[v] = val;
    for (auto [v, val] : st.lambda_updates) lam[v] = val;
    for (auto [v, val] : st.eta_updates) eta[v] = val;
    for (int v : st.removed) detach(v);
    if (st.rule == RuleId::shrink_run)
      for (int v : st.run) detach(v);
  }
  if (!compacted) throw std::logic_error("replay: trace never compacted");
  out.validate();
  return out;
}

PathWitness lift_witness(const ReductionTrace& trace,
                         const PathWitness& kernel_path) {
  PathWitness path;
  for (int v : kernel_path) path.push_back(trace.kernel_to_stable.at(v));
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    if (it->rule != RuleId::shrink_run) continue;
    auto pos = std::find(path.begin(), path.end(), it->added);
    if (pos == path.end()) continue;
    size_t i = static_cast<size_t>(pos - path.begin());
    if (i == 0 || i + 1 == path.size())
      throw std::logic_error("witness lift: aggregate at a path end");
    std::vector<int> run = it->run;
    if (path[i - 1] == it->end_b)
      std::reverse(run.begin(), run.end());
    else if (path[i - 1] != it->end_a)
      throw std::logic_error("witness lift: aggregate context mismatch");
    path.erase(path.begin() + static_cast<long>(i));
    path.insert(path.begin() + static_cast<long>(i), run.begin(), run.end());
  }
  return path;
}

}  // namespace ssp
