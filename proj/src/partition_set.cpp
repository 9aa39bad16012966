#include "secluded/partition_set.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace ssp {

namespace {

// Disjoint-set forest over dense indices; unions root at the smaller index
// so grouping by root yields blocks already ordered by smallest element.
int ds_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void ds_unite(std::vector<int>& parent, int a, int b) {
  a = ds_find(parent, a);
  b = ds_find(parent, b);
  if (a == b) return;
  if (a < b)
    parent[b] = a;
  else
    parent[a] = b;
}

bool weight_then_partition(const WeightedPartition& l,
                           const WeightedPartition& r) {
  if (l.w != r.w) return l.w < r.w;
  return l.p < r.p;
}

}  // namespace

Partition Partition::of_blocks(std::vector<std::vector<int>> blocks) {
  std::vector<int> all;
  for (auto& block : blocks) {
    if (block.empty()) throw std::invalid_argument("partition: empty block");
    std::sort(block.begin(), block.end());
    all.insert(all.end(), block.begin(), block.end());
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i] == all[i - 1])
      throw std::invalid_argument("partition: element " +
                                  std::to_string(all[i]) + " appears twice");
  // Blocks are disjoint and internally sorted, so lexicographic order on the
  // block lists orders them by smallest element.
  std::sort(blocks.begin(), blocks.end());
  Partition p;
  p.blocks_ = std::move(blocks);
  return p;
}

Partition Partition::pairs(const std::vector<std::pair<int, int>>& ps) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(ps.size());
  for (const auto& [u, v] : ps) blocks.push_back({u, v});
  return of_blocks(std::move(blocks));
}

Partition Partition::singletons(const std::vector<int>& elems) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(elems.size());
  for (int e : elems) blocks.push_back({e});
  return of_blocks(std::move(blocks));
}

std::vector<int> Partition::universe() const {
  std::vector<int> all;
  for (const auto& block : blocks_)
    all.insert(all.end(), block.begin(), block.end());
  std::sort(all.begin(), all.end());
  return all;
}

bool Partition::covers(int x) const {
  for (const auto& block : blocks_)
    if (std::binary_search(block.begin(), block.end(), x)) return true;
  return false;
}

bool Partition::is_perfect_matching() const {
  for (const auto& block : blocks_)
    if (block.size() != 2) return false;
  return true;
}

std::ostream& operator<<(std::ostream& out, const Partition& p) {
  out << '{';
  for (std::size_t b = 0; b < p.blocks().size(); ++b) {
    if (b > 0) out << ',';
    out << '{';
    const auto& block = p.blocks()[b];
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) out << ',';
      out << block[i];
    }
    out << '}';
  }
  return out << '}';
}

std::ostream& operator<<(std::ostream& out, const WeightedPartition& wp) {
  return out << '(' << wp.p << ',' << wp.w << ')';
}

WeightedPartitionSet rmc(WeightedPartitionSet a) {
  std::sort(a.begin(), a.end(),
            [](const WeightedPartition& l, const WeightedPartition& r) {
              if (l.p != r.p) return l.p < r.p;
              return l.w < r.w;
            });
  a.erase(std::unique(a.begin(), a.end(),
                      [](const WeightedPartition& l,
                         const WeightedPartition& r) { return l.p == r.p; }),
          a.end());
  return a;
}

WeightedPartitionSet union_min(const WeightedPartitionSet& a,
                               const WeightedPartitionSet& b) {
  WeightedPartitionSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return rmc(std::move(out));
}

WeightedPartitionSet glue(int u, int v, const WeightedPartitionSet& a) {
  if (u == v) throw std::invalid_argument("glue: endpoints must differ");
  WeightedPartitionSet out;
  out.reserve(a.size());
  for (const auto& [p, w] : a) {
    if (p.covers(u) || p.covers(v))
      throw std::invalid_argument(
          "glue: element " + std::to_string(p.covers(u) ? u : v) +
          " is already covered");
    auto blocks = p.blocks();
    blocks.push_back({std::min(u, v), std::max(u, v)});
    out.push_back({Partition::of_blocks(std::move(blocks)), w});
  }
  return rmc(std::move(out));
}

WeightedPartitionSet shift(long long w, const WeightedPartitionSet& a) {
  if (a.empty()) return {};
  long long lo = a.front().w;
  for (const auto& wp : a) lo = std::min(lo, wp.w);
  if (lo + w < 0)
    throw std::invalid_argument("shift: weight would drop below zero");
  WeightedPartitionSet out = a;
  for (auto& wp : out) wp.w += w;
  return rmc(std::move(out));
}

WeightedPartitionSet proj(const std::vector<int>& x,
                          const WeightedPartitionSet& a) {
  std::vector<int> removed = x;
  std::sort(removed.begin(), removed.end());
  WeightedPartitionSet out;
  out.reserve(a.size());
  for (const auto& [p, w] : a) {
    std::vector<std::vector<int>> kept;
    bool block_vanished = false;
    for (const auto& block : p.blocks()) {
      std::vector<int> rest;
      for (int e : block)
        if (!std::binary_search(removed.begin(), removed.end(), e))
          rest.push_back(e);
      if (rest.empty()) {
        block_vanished = true;
        break;
      }
      kept.push_back(std::move(rest));
    }
    if (block_vanished) continue;
    out.push_back({Partition::of_blocks(std::move(kept)), w});
  }
  return rmc(std::move(out));
}

WeightedPartitionSet join(const WeightedPartitionSet& a,
                          const WeightedPartitionSet& b) {
  WeightedPartitionSet out;
  out.reserve(a.size() * b.size());
  for (const auto& [p, w1] : a)
    for (const auto& [q, w2] : b) out.push_back({coarsen_join(p, q), w1 + w2});
  return rmc(std::move(out));
}

Partition coarsen_join(const Partition& p, const Partition& q) {
  std::vector<int> elems = p.universe();
  {
    std::vector<int> uq = q.universe();
    elems.insert(elems.end(), uq.begin(), uq.end());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  }
  if (elems.empty()) return Partition();
  auto index_of = [&elems](int e) {
    return static_cast<int>(
        std::lower_bound(elems.begin(), elems.end(), e) - elems.begin());
  };
  std::vector<int> parent(elems.size());
  for (std::size_t i = 0; i < parent.size(); ++i)
    parent[i] = static_cast<int>(i);
  for (const Partition* part : {&p, &q})
    for (const auto& block : part->blocks())
      for (std::size_t i = 1; i < block.size(); ++i)
        ds_unite(parent, index_of(block[0]), index_of(block[i]));
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < elems.size(); ++i)
    groups[ds_find(parent, static_cast<int>(i))].push_back(elems[i]);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(groups.size());
  for (auto& [root, members] : groups) blocks.push_back(std::move(members));
  return Partition::of_blocks(std::move(blocks));
}

std::optional<long long> opt(const Partition& q,
                             const WeightedPartitionSet& a) {
  std::optional<long long> best;
  for (const auto& [p, w] : a)
    if (coarsen_join(p, q).block_count() <= 1 && (!best || w < *best)) best = w;
  return best;
}

namespace {

// Highest set bit index of a word-packed bit vector, -1 when all zero.
int highest_bit(const std::vector<std::uint64_t>& v) {
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
    if (v[i] != 0) return i * 64 + 63 - std::countl_zero(v[i]);
  return -1;
}

// GF(2) row space with one stored row per leading bit.  absorb() reduces the
// incoming row and keeps it when independent.
class Gf2Basis {
 public:
  bool absorb(std::vector<std::uint64_t> v) {
    int lead = highest_bit(v);
    while (lead >= 0) {
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        rows_.emplace(lead, std::move(v));
        return true;
      }
      for (std::size_t w = 0; w < v.size(); ++w) v[w] ^= it->second[w];
      lead = highest_bit(v);
    }
    return false;
  }

 private:
  std::map<int, std::vector<std::uint64_t>> rows_;
};

// Partner position of each element position under a perfect matching.
std::vector<int> partner_array(const Partition& p,
                               const std::vector<int>& universe) {
  auto position_of = [&universe](int e) {
    return static_cast<int>(
        std::lower_bound(universe.begin(), universe.end(), e) -
        universe.begin());
  };
  std::vector<int> partner(universe.size(), -1);
  for (const auto& block : p.blocks()) {
    int left = position_of(block[0]);
    int right = position_of(block[1]);
    partner[left] = right;
    partner[right] = left;
  }
  return partner;
}

// Cut columns: a matching is consistent with exactly the cuts assembled
// from whole pairs of it, with the pair of the pinned first element staying
// on the pinned side.  A dropped row is a GF(2) sum of kept lighter rows,
// and connectivity of p joined with any partition q equals the parity of
// cuts consistent with both, so some kept row connects q at no larger
// weight whenever a dropped one did.
std::vector<std::uint64_t> cut_row(const std::vector<int>& partner,
                                   std::size_t words) {
  std::vector<std::uint64_t> pair_masks;
  for (std::size_t pos = 1; pos < partner.size(); ++pos) {
    int mate = partner[pos];
    if (mate == 0 || static_cast<std::size_t>(mate) < pos) continue;
    pair_masks.push_back((std::uint64_t{1} << (pos - 1)) |
                         (std::uint64_t{1} << (mate - 1)));
  }
  std::vector<std::uint64_t> rowbits(words, 0);
  const std::size_t subsets = std::size_t{1} << pair_masks.size();
  for (std::size_t sub = 0; sub < subsets; ++sub) {
    std::uint64_t column = 0;
    for (std::size_t j = 0; j < pair_masks.size(); ++j)
      if (sub >> j & 1) column |= pair_masks[j];
    rowbits[column / 64] |= std::uint64_t{1} << (column % 64);
  }
  return rowbits;
}

// Matching-query columns: two perfect matchings coarsen to a single block
// exactly when their union is one alternating cycle, checked by walking
// from position 0 until it closes.
std::vector<std::uint64_t> cycle_row(
    const std::vector<int>& partner,
    const std::vector<std::vector<int>>& column_partners, std::size_t words) {
  std::vector<std::uint64_t> rowbits(words, 0);
  const int n = static_cast<int>(partner.size());
  for (std::size_t c = 0; c < column_partners.size(); ++c) {
    int pos = 0;
    int steps = 0;
    do {
      pos = column_partners[c][partner[pos]];
      steps += 2;
    } while (pos != 0);
    if (steps == n) rowbits[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  return rowbits;
}

}  // namespace

WeightedPartitionSet reduce(const WeightedPartitionSet& a, ReduceMode mode) {
  WeightedPartitionSet rows = rmc(a);
  if (rows.empty()) return rows;
  const std::vector<int> universe = rows.front().p.universe();
  for (const auto& [p, w] : rows) {
    if (!p.is_perfect_matching())
      throw std::invalid_argument("reduce: every block must be a pair");
    if (p.universe() != universe)
      throw std::invalid_argument("reduce: partitions must share one universe");
  }
  const int n = static_cast<int>(universe.size());
  if (n == 0) return rows;  // only the empty partition exists, rmc kept one
  if (mode == ReduceMode::general && n > 20)
    throw std::invalid_argument(
        "reduce: universe larger than 20 elements is not supported");
  if (mode == ReduceMode::matching && n > 12)
    throw std::invalid_argument(
        "reduce: matching mode supports universes up to 12 elements");

  std::vector<std::vector<int>> column_partners;
  std::size_t column_count;
  if (mode == ReduceMode::matching) {
    for (const Partition& q : all_perfect_matchings(universe))
      column_partners.push_back(partner_array(q, universe));
    column_count = column_partners.size();
  } else {
    column_count = std::size_t{1} << (n - 1);
  }
  const std::size_t words = (column_count + 63) / 64;

  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&rows](std::size_t l, std::size_t r) {
                     return weight_then_partition(rows[l], rows[r]);
                   });

  Gf2Basis basis;
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    std::vector<int> partner = partner_array(rows[idx].p, universe);
    std::vector<std::uint64_t> rowbits =
        mode == ReduceMode::matching
            ? cycle_row(partner, column_partners, words)
            : cut_row(partner, words);
    // a dependent row is covered by lighter kept rows for every query the
    // mode guarantees
    if (basis.absorb(std::move(rowbits))) kept.push_back(idx);
  }

  const std::size_t cap = mode == ReduceMode::matching
                              ? std::size_t{1} << (n / 2)
                              : column_count;
  if (kept.size() > cap)
    throw std::logic_error("reduce: representative set exceeded its size bound");

  std::sort(kept.begin(), kept.end());
  WeightedPartitionSet out;
  out.reserve(kept.size());
  for (std::size_t idx : kept) out.push_back(rows[idx]);
  return out;
}

namespace {

void grow_partitions(const std::vector<int>& elems, std::size_t i,
                     std::vector<std::vector<int>>& acc,
                     std::vector<Partition>& out) {
  if (i == elems.size()) {
    out.push_back(acc.empty() ? Partition() : Partition::of_blocks(acc));
    return;
  }
  for (std::size_t b = 0; b < acc.size(); ++b) {
    acc[b].push_back(elems[i]);
    grow_partitions(elems, i + 1, acc, out);
    acc[b].pop_back();
  }
  acc.push_back({elems[i]});
  grow_partitions(elems, i + 1, acc, out);
  acc.pop_back();
}

void grow_matchings(std::vector<int>& rest,
                    std::vector<std::pair<int, int>>& acc,
                    std::vector<Partition>& out) {
  if (rest.empty()) {
    out.push_back(Partition::pairs(acc));
    return;
  }
  int first = rest.front();
  for (std::size_t j = 1; j < rest.size(); ++j) {
    int partner = rest[j];
    std::vector<int> remaining(rest.begin() + 1, rest.end());
    remaining.erase(remaining.begin() + (j - 1));
    acc.emplace_back(first, partner);
    grow_matchings(remaining, acc, out);
    acc.pop_back();
  }
}

std::vector<int> checked_elements(const std::vector<int>& universe,
                                  const char* who) {
  std::vector<int> elems = universe;
  std::sort(elems.begin(), elems.end());
  for (std::size_t i = 1; i < elems.size(); ++i)
    if (elems[i] == elems[i - 1])
      throw std::invalid_argument(std::string(who) + ": repeated element");
  return elems;
}

}  // namespace

std::vector<Partition> all_partitions(const std::vector<int>& universe) {
  std::vector<int> elems = checked_elements(universe, "all_partitions");
  std::vector<Partition> out;
  std::vector<std::vector<int>> acc;
  grow_partitions(elems, 0, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Partition> all_perfect_matchings(const std::vector<int>& universe) {
  std::vector<int> elems = checked_elements(universe, "all_perfect_matchings");
  if (elems.size() % 2 != 0) return {};
  std::vector<Partition> out;
  std::vector<std::pair<int, int>> acc;
  grow_matchings(elems, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ssp
