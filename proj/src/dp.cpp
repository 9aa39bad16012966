#include "secluded/dp.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ssp {

namespace {

// Roles a bag vertex can hold inside a table signature.
constexpr std::uint64_t kNone = 0;   // neither on the path nor a neighbor
constexpr std::uint64_t kZero = 1;   // path vertex without incident path edges
constexpr std::uint64_t kEnd = 2;    // endpoint of a subpath, one path edge
constexpr std::uint64_t kInner = 3;  // interior subpath vertex, two path edges
constexpr std::uint64_t kNbr = 4;    // declared neighbor of the path

bool on_path(std::uint64_t role) {
  return role == kZero || role == kEnd || role == kInner;
}

// A signature packs one 3-bit role per bag slot (slot = rank of the vertex in
// the sorted bag) next to the remaining load budget.
struct SigKey {
  std::uint64_t roles = 0;
  std::int64_t l = 0;

  bool operator==(const SigKey& o) const {
    return roles == o.roles && l == o.l;
  }
  bool operator<(const SigKey& o) const {
    if (roles != o.roles) return roles < o.roles;
    return l < o.l;
  }
};

struct SigKeyHash {
  std::size_t operator()(const SigKey& k) const {
    std::uint64_t h =
        k.roles + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(k.l + 1);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t role_at(std::uint64_t roles, int slot) {
  return (roles >> (3 * slot)) & 7u;
}

std::uint64_t with_role(std::uint64_t roles, int slot, std::uint64_t role) {
  return (roles & ~(7ull << (3 * slot))) | (role << (3 * slot));
}

// Opens a zeroed 3-bit slot when a vertex enters the bag, and closes one when
// a vertex leaves; slots above shift by one position.
std::uint64_t insert_slot(std::uint64_t roles, int slot) {
  std::uint64_t low = roles & ((1ull << (3 * slot)) - 1);
  std::uint64_t high = (roles >> (3 * slot)) << (3 * (slot + 1));
  return high | low;
}

std::uint64_t remove_slot(std::uint64_t roles, int slot) {
  std::uint64_t low = roles & ((1ull << (3 * slot)) - 1);
  std::uint64_t high = (roles >> (3 * (slot + 1))) << (3 * slot);
  return high | low;
}

// Provenance chain: a row made at a leaf starts a chain, consuming a path
// edge wraps the feeding row, and a join links two feeds.  Replaying the
// chain of a root row yields exactly the edge set of its path.
struct Step {
  int left = -1;
  int right = -1;
  int u = -1;  // consumed path edge; unset on leaf and join steps
  int v = -1;
};

struct Row {
  Partition p;
  long long w = 0;
  int step = -1;
};

// Keep the cheapest row per pairing; ties fall to the oldest provenance so
// reruns pick the same witness.
void dedup_rows(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.p != b.p) return a.p < b.p;
    if (a.w != b.w) return a.w < b.w;
    return a.step < b.step;
  });
  rows.erase(
      std::unique(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.p == b.p; }),
      rows.end());
}

struct Cell {
  std::vector<Row> rows;  // sorted by pairing, one row per pairing
};

using Table = std::unordered_map<SigKey, Cell, SigKeyHash>;

// Hash tables iterate in an unspecified order; the transitions walk cells in
// key order instead so that provenance ids, and with them entire runs, are
// reproducible.
std::vector<std::pair<SigKey, const Cell*>> sorted_cells(const Table& t) {
  std::vector<std::pair<SigKey, const Cell*>> out;
  out.reserve(t.size());
  for (const auto& [key, cell] : t) out.emplace_back(key, &cell);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

int slot_of(const std::vector<int>& items, int v) {
  auto it = std::lower_bound(items.begin(), items.end(), v);
  assert(it != items.end() && *it == v);
  return static_cast<int>(it - items.begin());
}

class Solver {
 public:
  Solver(const VwSspInstance& inst, const NiceTreeDecomposition& ntd,
         const SolveOptions& opts)
      : inst_(inst), ntd_(ntd), opts_(opts) {}

  SolveResult run();

 private:
  void do_leaf(int x);
  void do_introduce_vertex(int x);
  void do_introduce_edge(int x);
  void do_forget(int x);
  void do_join(int x);
  void finalize(int x);

  void accumulate(Table& table, const SigKey& key, std::vector<Row> rows);
  int add_step(int left, int right, int u, int v);
  bool terminals_ok(std::uint64_t roles, const std::vector<int>& items) const;
  PathWitness rebuild_witness(int step, long long expect_cost) const;

  const std::vector<int>& bag_items(int x) const {
    return ntd_.nodes[x].bag;
  }

  const VwSspInstance& inst_;
  const NiceTreeDecomposition& ntd_;
  SolveOptions opts_;
  std::int64_t l_eff_ = 0;
  std::vector<Table> tables_;
  std::vector<Step> steps_;
  SolveStats stats_;
};

int Solver::add_step(int left, int right, int u, int v) {
  steps_.push_back(Step{left, right, u, v});
  return static_cast<int>(steps_.size()) - 1;
}

void Solver::accumulate(Table& table, const SigKey& key,
                        std::vector<Row> rows) {
  if (rows.empty()) return;
  Cell& cell = table[key];
  if (cell.rows.empty())
    cell.rows = std::move(rows);
  else
    cell.rows.insert(cell.rows.end(), rows.begin(), rows.end());
  dedup_rows(cell.rows);
}

bool Solver::terminals_ok(std::uint64_t roles,
                          const std::vector<int>& items) const {
  std::uint64_t rs = role_at(roles, slot_of(items, inst_.s));
  std::uint64_t rt = role_at(roles, slot_of(items, inst_.t));
  // The terminals end up as the endpoints of the one final path, so neither
  // may ever sink into a subpath interior.
  return (rs == kZero || rs == kEnd) && (rt == kZero || rt == kEnd);
}

void Solver::do_leaf(int x) {
  // Leaf bags are exactly {s,t} and see no edges: the only partial solution
  // is the two terminals as isolated path vertices.
  long long base = inst_.kappa[inst_.s] + inst_.kappa[inst_.t];
  std::int64_t floor_l = inst_.eta[inst_.s] + inst_.eta[inst_.t];
  if (base > inst_.k) return;
  int step = add_step(-1, -1, -1, -1);
  std::uint64_t roles = with_role(with_role(0, 0, kZero), 1, kZero);
  for (std::int64_t l = floor_l; l <= l_eff_; ++l)
    tables_[x][SigKey{roles, l}].rows.push_back(Row{Partition{}, base, step});
}

void Solver::do_introduce_vertex(int x) {
  const NiceNode& node = ntd_.nodes[x];
  int v = node.a;
  int vslot = slot_of(bag_items(x), v);
  Table& out = tables_[x];
  for (const auto& [ckey, cell] : sorted_cells(tables_[node.children[0]])) {
    std::uint64_t base = insert_slot(ckey.roles, vslot);
    // Not part of the solution at all.
    accumulate(out, SigKey{base, ckey.l}, cell->rows);
    // On the path: the fresh vertex has no incident edges yet, so it starts
    // isolated, paying its cost and its own exposure.
    std::int64_t lz = ckey.l + inst_.eta[v];
    if (lz <= l_eff_) {
      std::vector<Row> rows;
      rows.reserve(cell->rows.size());
      for (const Row& r : cell->rows)
        if (r.w + inst_.kappa[v] <= inst_.k)
          rows.push_back(Row{r.p, r.w + inst_.kappa[v], r.step});
      accumulate(out, SigKey{with_role(base, vslot, kZero), lz},
                 std::move(rows));
    }
    // Declared neighbor: feasible only while its exposure fits the budget.
    std::int64_t ln = ckey.l + inst_.lambda[v];
    if (ln <= l_eff_)
      accumulate(out, SigKey{with_role(base, vslot, kNbr), ln}, cell->rows);
  }
}

void Solver::do_introduce_edge(int x) {
  const NiceNode& node = ntd_.nodes[x];
  int u = node.a;
  int v = node.b;
  const std::vector<int>& items = bag_items(x);
  int uslot = slot_of(items, u);
  int vslot = slot_of(items, v);
  Table& out = tables_[x];
  const WeightedPartitionSet bridge{{Partition::pairs({{u, v}}), 0}};
  for (const auto& [key, cell] : sorted_cells(tables_[node.children[0]])) {
    std::uint64_t ru = role_at(key.roles, uslot);
    std::uint64_t rv = role_at(key.roles, vslot);
    // Leave the edge unused.  Impossible when exactly one endpoint is on the
    // path and the other is neither on it nor a declared neighbor: the edge
    // would make it an undeclared one.
    bool undeclared = (on_path(ru) && rv == kNone) || (on_path(rv) && ru == kNone);
    if (!undeclared) accumulate(out, key, cell->rows);
    // Put the edge on the path.  Joining two isolated vertices pairs them
    // up; every endpoint that already had a path edge turns interior and
    // leaves the pairing universe.
    if (ru == kZero && rv == kZero) {
      std::vector<Row> rows;
      rows.reserve(cell->rows.size());
      for (const Row& r : cell->rows) {
        WeightedPartitionSet one = glue(u, v, {{r.p, r.w}});
        rows.push_back(
            Row{one.front().p, one.front().w, add_step(r.step, -1, u, v)});
      }
      std::uint64_t roles =
          with_role(with_role(key.roles, uslot, kEnd), vslot, kEnd);
      accumulate(out, SigKey{roles, key.l}, std::move(rows));
    } else if ((ru == kZero && rv == kEnd) || (ru == kEnd && rv == kZero) ||
               (ru == kEnd && rv == kEnd)) {
      std::vector<int> drop;
      std::uint64_t roles = key.roles;
      if (ru == kEnd) {
        drop.push_back(u);
        roles = with_role(roles, uslot, kInner);
      } else {
        roles = with_role(roles, uslot, kEnd);
      }
      if (rv == kEnd) {
        drop.push_back(v);
        roles = with_role(roles, vslot, kInner);
      } else {
        roles = with_role(roles, vslot, kEnd);
      }
      if (!terminals_ok(roles, items)) continue;
      std::vector<Row> rows;
      rows.reserve(cell->rows.size());
      for (const Row& r : cell->rows) {
        // The former endpoint is matched already, so the edge is absorbed by
        // bridging the pair through a zero-weight {u,v} link and projecting
        // the now-interior endpoint away.  A pairing whose subpath would
        // close into a cycle loses its block entirely and is dropped here.
        WeightedPartitionSet one = proj(drop, join({{r.p, r.w}}, bridge));
        if (one.empty()) continue;
        rows.push_back(
            Row{one.front().p, one.front().w, add_step(r.step, -1, u, v)});
      }
      accumulate(out, SigKey{roles, key.l}, std::move(rows));
    }
  }
}

void Solver::do_forget(int x) {
  const NiceNode& node = ntd_.nodes[x];
  int vslot = slot_of(bag_items(node.children[0]), node.a);
  Table& out = tables_[x];
  for (const auto& [key, cell] : sorted_cells(tables_[node.children[0]])) {
    std::uint64_t role = role_at(key.roles, vslot);
    // A vertex leaving the bag never sees another edge.  A still-isolated
    // path vertex or a dangling endpoint could then never connect to the
    // rest of the path, so those rows die here; interior vertices,
    // neighbors, and untouched vertices are simply dropped from the key.
    if (role == kZero || role == kEnd) continue;
    accumulate(out, SigKey{remove_slot(key.roles, vslot), key.l}, cell->rows);
  }
}

void Solver::do_join(int x) {
  const NiceNode& node = ntd_.nodes[x];
  const std::vector<int>& items = bag_items(x);
  int nslots = static_cast<int>(items.size());
  Table& out = tables_[x];

  // How the children's claims about one shared vertex combine: a path vertex
  // contributes its path edges from both sides (0+0, 0+1, 1+0 or 1+1 of
  // them), a neighbor or outsider must be one on both sides.  -1 marks
  // contradictions, including three or more path edges in total.
  static constexpr int kCombine[5][5] = {
      {0, -1, -1, -1, -1},
      {-1, 1, 2, 3, -1},
      {-1, 2, 3, -1, -1},
      {-1, 3, -1, -1, -1},
      {-1, -1, -1, -1, 4},
  };

  // Children agreeing on which vertices are on the path and which are
  // neighbors is necessary to combine, so pre-group the right table.
  auto membership = [&](std::uint64_t roles) {
    std::uint64_t m = 0;
    for (int s = 0; s < nslots; ++s) {
      std::uint64_t role = role_at(roles, s);
      m |= (role == kNone ? 0ull : role == kNbr ? 2ull : 1ull) << (2 * s);
    }
    return m;
  };
  auto zcells = sorted_cells(tables_[node.children[1]]);
  std::map<std::uint64_t, std::vector<int>> groups;
  for (std::size_t i = 0; i < zcells.size(); ++i)
    groups[membership(zcells[i].first.roles)].push_back(static_cast<int>(i));

  for (const auto& [ykey, ycell] : sorted_cells(tables_[node.children[0]])) {
    auto git = groups.find(membership(ykey.roles));
    if (git == groups.end()) continue;
    for (int zi : git->second) {
      const SigKey& zkey = zcells[zi].first;
      const Cell* zcell = zcells[zi].second;
      std::uint64_t roles = 0;
      std::vector<int> drop;  // endpoints on both sides turn interior
      std::int64_t shared_load = 0;
      long long shared_cost = 0;
      bool ok = true;
      for (int s = 0; s < nslots; ++s) {
        std::uint64_t ry = role_at(ykey.roles, s);
        std::uint64_t rz = role_at(zkey.roles, s);
        int combined = kCombine[ry][rz];
        if (combined < 0) {
          ok = false;
          break;
        }
        roles = with_role(roles, s, static_cast<std::uint64_t>(combined));
        // Load and cost of the shared bag vertices are paid by both
        // children; the join discounts one copy.
        if (combined == kNbr) {
          shared_load += inst_.lambda[items[s]];
        } else if (combined != kNone) {
          shared_load += inst_.eta[items[s]];
          shared_cost += inst_.kappa[items[s]];
        }
        if (ry == kEnd && rz == kEnd) drop.push_back(items[s]);
      }
      if (!ok || !terminals_ok(roles, items)) continue;
      std::int64_t l = ykey.l + zkey.l - shared_load;
      if (l < 0 || l > l_eff_) continue;
      std::vector<Row> rows;
      rows.reserve(ycell->rows.size() * zcell->rows.size());
      for (const Row& a : ycell->rows) {
        for (const Row& b : zcell->rows) {
          long long w = a.w + b.w - shared_cost;
          assert(w >= 0);
          if (w > inst_.k) continue;
          // Chains of subpaths alternate between the two children through
          // the both-sided endpoints; projecting those away leaves the new
          // endpoint pairs, and drops any chain that closed into a cycle.
          WeightedPartitionSet one = proj(drop, join({{a.p, a.w}}, {{b.p, b.w}}));
          if (one.empty()) continue;
          rows.push_back(Row{one.front().p, w, add_step(a.step, b.step, -1, -1)});
        }
      }
      accumulate(out, SigKey{roles, l}, std::move(rows));
    }
  }
}

void Solver::finalize(int x) {
  Table& table = tables_[x];
  const std::vector<int>& items = bag_items(x);
  for (auto& [key, cell] : table) {
    std::vector<int> de;
    for (int s = 0; s < static_cast<int>(items.size()); ++s)
      if (role_at(key.roles, s) == kEnd) de.push_back(items[s]);
#ifndef NDEBUG
    for (const Row& r : cell.rows) {
      assert(r.p.is_perfect_matching());
      assert(r.p.universe() == de);
    }
#endif
    int e = static_cast<int>(de.size());
    bool within_mode = opts_.reduce_mode == ReduceMode::matching ? e <= 12
                                                                 : e <= 20;
    if (!opts_.use_reduce || e < 2 || e % 2 != 0 || !within_mode) continue;
    WeightedPartitionSet set;
    set.reserve(cell.rows.size());
    for (const Row& r : cell.rows) set.push_back({r.p, r.w});
    WeightedPartitionSet kept = reduce(set, opts_.reduce_mode);
    // The survivors are a subsequence of the cell in the same order.
    std::vector<Row> rows;
    rows.reserve(kept.size());
    std::size_t j = 0;
    for (const WeightedPartition& wp : kept) {
      while (j < cell.rows.size() && cell.rows[j].p != wp.p) ++j;
      assert(j < cell.rows.size());
      rows.push_back(cell.rows[j]);
    }
    cell.rows = std::move(rows);
    std::size_t cap = opts_.reduce_mode == ReduceMode::matching
                          ? 1ull << (e / 2)
                          : 1ull << (e - 1);
    if (cell.rows.size() > cap)
      throw std::logic_error(
          "solver: table cell exceeded its representative bound");
  }
  stats_.cells += table.size();
  std::size_t node_entries = 0;
  for (const auto& [key, cell] : table) {
    node_entries += cell.rows.size();
    stats_.max_cell_entries = std::max(stats_.max_cell_entries, cell.rows.size());
  }
  stats_.total_entries += node_entries;
  stats_.max_table_entries = std::max(stats_.max_table_entries, node_entries);
}

SolveResult Solver::run() {
  inst_.validate();
  if (!validate(ntd_, inst_.graph, inst_.s, inst_.t))
    throw std::invalid_argument("solve: decomposition does not fit the instance");
  for (const NiceNode& node : ntd_.nodes)
    if (node.bag.size() > 21)
      throw std::invalid_argument(
          "solve: bags wider than 21 vertices are not supported");

  // A load budget beyond the total exposure of the whole graph never binds;
  // clamping it keeps the budget axis of the tables short.
  __int128 total = 0;
  for (int v = 0; v < inst_.graph.n; ++v)
    total += inst_.lambda[v] + inst_.eta[v];
  l_eff_ = static_cast<std::int64_t>(
      std::min<__int128>(total, static_cast<__int128>(inst_.l)));

  tables_.assign(ntd_.size(), Table{});
  stats_.width = ntd_.width;
  stats_.nodes = ntd_.size();
  stats_.node_micros.assign(ntd_.size(), 0);

  for (int x : postorder(ntd_)) {
    auto started = std::chrono::steady_clock::now();
    switch (ntd_.nodes[x].kind) {
      case NodeKind::leaf:
        do_leaf(x);
        break;
      case NodeKind::introduce_vertex:
        do_introduce_vertex(x);
        break;
      case NodeKind::introduce_edge:
        do_introduce_edge(x);
        break;
      case NodeKind::forget:
        do_forget(x);
        break;
      case NodeKind::join:
        do_join(x);
        break;
    }
    finalize(x);
    // Child tables are dead weight once the parent is built; provenance
    // steps carry everything the witness needs.
    for (int c : ntd_.nodes[x].children) tables_[c] = Table{};
    stats_.node_micros[x] = std::chrono::duration_cast<std::chrono::microseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();
  }

  SolveResult res;
  const std::vector<int>& ritems = bag_items(ntd_.root);
  std::uint64_t roles = with_role(
      with_role(0, slot_of(ritems, inst_.s), kEnd), slot_of(ritems, inst_.t), kEnd);
  const Table& root = tables_[ntd_.root];
  auto it = root.find(SigKey{roles, l_eff_});
  if (it != root.end() && !it->second.rows.empty()) {
    // The pairing universe at the root is {s,t}, so the cell holds exactly
    // one row: the cheapest full path.
    const Row& best = it->second.rows.front();
    res.answer = true;
    res.min_cost = best.w;
    if (opts_.want_witness) res.witness = rebuild_witness(best.step, best.w);
  }
  res.stats = std::move(stats_);
  return res;
}

PathWitness Solver::rebuild_witness(int step, long long expect_cost) const {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> pending{step};
  while (!pending.empty()) {
    const Step& st = steps_[pending.back()];
    pending.pop_back();
    if (st.u >= 0) edges.emplace_back(st.u, st.v);
    if (st.left >= 0) pending.push_back(st.left);
    if (st.right >= 0) pending.push_back(st.right);
  }
  std::map<int, std::vector<int>> adj;
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  PathWitness path{inst_.s};
  int prev = -1;
  int cur = inst_.s;
  while (cur != inst_.t) {
    int next = -1;
    auto at = adj.find(cur);
    if (at != adj.end())
      for (int w : at->second)
        if (w != prev) {
          next = w;
          break;
        }
    if (next < 0 || path.size() > edges.size())
      throw std::logic_error(
          "solver: provenance edges do not chain into an s-t path");
    prev = cur;
    cur = next;
    path.push_back(cur);
  }
  if (path.size() != edges.size() + 1)
    throw std::logic_error(
        "solver: provenance edges do not chain into an s-t path");
  // Final guard: price the reconstructed path directly on the instance.
  PathCost pc = evaluate_path(inst_, path);
  if (pc.cost != expect_cost || pc.cost > inst_.k || pc.load > inst_.l)
    throw std::logic_error("solver: witness price disagrees with the table");
  return path;
}

}  // namespace

SolveResult solve(const VwSspInstance& inst, const NiceTreeDecomposition& ntd,
                  const SolveOptions& opts) {
  return Solver(inst, ntd, opts).run();
}

}  // namespace ssp
