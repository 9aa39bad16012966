#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

namespace ssp {

// Partition of a small set of vertex ids into disjoint nonempty blocks, kept
// in canonical form: each block sorted ascending, blocks ordered by their
// smallest element.  The solver mostly stores perfect matchings (all blocks
// of size two, pairing up subpath endpoints), but coarsenings produced by
// join legitimately carry larger blocks until the caller's proj resolves
// them, so the type does not force the matching shape.
class Partition {
 public:
  Partition() = default;  // the empty partition over the empty universe

  // Canonicalizes; rejects empty blocks and repeated elements.
  static Partition of_blocks(std::vector<std::vector<int>> blocks);
  // Convenience for building matchings.
  static Partition pairs(const std::vector<std::pair<int, int>>& ps);
  static Partition singletons(const std::vector<int>& elems);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  // Sorted ascending union of all blocks.
  std::vector<int> universe() const;
  bool covers(int x) const;
  bool empty() const { return blocks_.empty(); }
  // True when every block has exactly two elements.
  bool is_perfect_matching() const;

  bool operator==(const Partition& o) const { return blocks_ == o.blocks_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  // Lexicographic on the canonical block list; total order used to keep
  // weighted sets in a deterministic order.
  bool operator<(const Partition& o) const { return blocks_ < o.blocks_; }

 private:
  std::vector<std::vector<int>> blocks_;
};

struct WeightedPartition {
  Partition p;
  long long w = 0;

  bool operator==(const WeightedPartition& o) const {
    return p == o.p && w == o.w;
  }
};

// Always kept duplicate-free and sorted by partition after any operation
// below, so value equality is meaningful in tests and tables are
// reproducible run to run.
using WeightedPartitionSet = std::vector<WeightedPartition>;

std::ostream& operator<<(std::ostream& out, const Partition& p);
std::ostream& operator<<(std::ostream& out, const WeightedPartition& wp);

// Removes duplicate partitions, keeping the smallest weight for each.
WeightedPartitionSet rmc(WeightedPartitionSet a);

// All entries of both sets, keeping the smaller weight where a partition
// appears in both.
WeightedPartitionSet union_min(const WeightedPartitionSet& a,
                               const WeightedPartitionSet& b);

// Adds the fresh pair {u,v} to every partition.  u and v must not appear in
// any partition of `a` yet; call sites pair brand-new endpoints only, and a
// covered element signals a broken transition, so this throws instead of
// merging existing blocks.  (Merging through an existing block is expressed
// as join with a single-pair bridge set followed by proj.)
WeightedPartitionSet glue(int u, int v, const WeightedPartitionSet& a);

// Adds w to every weight.  w may be negative as long as no weight drops
// below zero.
WeightedPartitionSet shift(long long w, const WeightedPartitionSet& a);

// Removes the elements of `x` from every block.  A partition whose block
// count drops is discarded entirely: a block swallowed whole means a subpath
// closed into a cycle or a component that can never reconnect.  Blocks that
// merely shrink keep their remaining elements grouped, which is how the
// endpoints of an alternating chain end up paired after a join.
WeightedPartitionSet proj(const std::vector<int>& x,
                          const WeightedPartitionSet& a);

// Pairwise coarsen_join with summed weights, deduplicated.  Output blocks
// may exceed size two; the caller's subsequent proj resolves them.
WeightedPartitionSet join(const WeightedPartitionSet& a,
                          const WeightedPartitionSet& b);

// Finest partition of the combined universe that is coarser than both
// arguments; elements known to only one side join in as singletons first.
Partition coarsen_join(const Partition& p, const Partition& q);

// Smallest weight among entries whose partition coarsen-joins with q into a
// single block spanning the combined universe; nullopt when no entry
// qualifies.
std::optional<long long> opt(const Partition& q, const WeightedPartitionSet& a);

enum class ReduceMode {
  // Row basis over all cuts of the universe: opt() is preserved for every
  // partition query, result size at most 2^(|U|-1).
  general,
  // Row basis over perfect-matching queries only: opt() is preserved for
  // every perfect-matching query, result size at most 2^(|U|/2).  That
  // guarantee is strictly weaker, but it is the one the solver needs: the
  // root query pairs the two terminals, and unwinding a matching query
  // through any transition yields a matching query again.  Supports
  // universes up to 12 elements.
  matching,
};

// Representative thinning: returns a subset whose opt() agrees with the
// input's for every query covered by the mode's guarantee.  Requires every
// entry to be a perfect matching on one shared universe.  Scans entries by
// increasing weight and keeps those whose connectivity row is GF(2)
// independent of the rows already kept, so a dropped entry's optimal
// connections are always covered by a kept entry of no larger weight.
WeightedPartitionSet reduce(const WeightedPartitionSet& a,
                            ReduceMode mode = ReduceMode::general);

// Every partition of the given elements, canonically ordered.  Intended for
// exhaustive checks over small universes.
std::vector<Partition> all_partitions(const std::vector<int>& universe);

// Every perfect matching of the given elements; empty when their count is
// odd.  Canonically ordered.
std::vector<Partition> all_perfect_matchings(const std::vector<int>& universe);

}  // namespace ssp
