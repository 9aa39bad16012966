#include "secluded/oracle.hpp"

#include <stdexcept>

namespace ssp {

namespace {

struct DfsState {
  const VwSspInstance& inst;
  std::vector<int> path;
  std::vector<char> on_path;
  int64_t cost = 0;
  OracleResult best;

  explicit DfsState(const VwSspInstance& i) : inst(i), on_path(i.graph.n, 0) {}

  void complete() {
    int64_t load = 0;
    std::vector<char> counted(inst.graph.n, 0);
    for (int v : path) {
      load += inst.eta[v];
      for (int w : inst.graph.adj[v])
        if (!on_path[w] && !counted[w]) {
          counted[w] = 1;
          load += inst.lambda[w];
        }
    }
    if (load > inst.l) return;
    if (!best.answer || cost < *best.min_cost ||
        (cost == *best.min_cost && load < *best.load_at_min)) {
      best.answer = true;
      best.min_cost = cost;
      best.load_at_min = load;
      best.witness = path;
    }
  }

  void extend() {
    int v = path.back();
    if (v == inst.t) {
      complete();
      return;  // a path may not continue past t
    }
    for (int w : inst.graph.adj[v]) {
      if (on_path[w] || cost + inst.kappa[w] > inst.k) continue;
      path.push_back(w);
      on_path[w] = 1;
      cost += inst.kappa[w];
      extend();
      cost -= inst.kappa[w];
      on_path[w] = 0;
      path.pop_back();
    }
  }
};

}  // namespace

OracleResult brute_force_solve(const VwSspInstance& inst, int cap) {
  inst.validate();
  if (inst.graph.n > cap)
    throw std::invalid_argument("oracle: graph exceeds the size cap");
  DfsState st(inst);
  if (inst.kappa[inst.s] > inst.k) return st.best;
  st.path.push_back(inst.s);
  st.on_path[inst.s] = 1;
  st.cost = inst.kappa[inst.s];
  st.extend();
  return st.best;
}

void MccInstance::validate() const {
  if (k != static_cast<int>(classes.size()))
    throw std::invalid_argument("mcc: k does not match the class count");
  if (k < 1) throw std::invalid_argument("mcc: empty class list");
  std::vector<char> used(graph.n, 0);
  for (const auto& cls : classes) {
    if (cls.empty()) throw std::invalid_argument("mcc: empty class");
    for (int v : cls) {
      if (v < 0 || v >= graph.n)
        throw std::invalid_argument("mcc: class vertex out of range");
      if (used[v]) throw std::invalid_argument("mcc: classes overlap");
      used[v] = 1;
    }
  }
}

namespace {

bool mcc_dfs(const MccInstance& inst, size_t idx, std::vector<int>& picks) {
  if (idx == inst.classes.size()) return true;
  for (int v : inst.classes[idx]) {
    bool ok = true;
    for (int p : picks)
      if (!inst.graph.has_edge(p, v)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    picks.push_back(v);
    if (mcc_dfs(inst, idx + 1, picks)) return true;
    picks.pop_back();
  }
  return false;
}

}  // namespace

MccResult brute_force_mcc(const MccInstance& inst, int class_cap) {
  inst.validate();
  for (const auto& cls : inst.classes)
    if (static_cast<int>(cls.size()) > class_cap)
      throw std::invalid_argument("mcc: class exceeds the size cap");
  MccResult res;
  std::vector<int> picks;
  if (mcc_dfs(inst, 0, picks)) {
    res.answer = true;
    res.witness = picks;
  }
  return res;
}

}  // namespace ssp
