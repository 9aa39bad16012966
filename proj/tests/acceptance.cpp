// End-to-end acceptance checks for the toolkit.  Each check prints exactly
// one "C<n> PASS|FAIL  <summary>" line; the exit code is the number of failed
// checks.  Pass a number 1..10 to run a single check.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "secluded/dp.hpp"
#include "secluded/generators.hpp"
#include "secluded/kernelize.hpp"
#include "secluded/oracle.hpp"
#include "secluded/partition_set.hpp"
#include "secluded/rng.hpp"
#include "secluded/treedecomp.hpp"

using namespace ssp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fixed1(double x) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << x;
  return out.str();
}

int clamp_extra(int n, int extra) {
  int room = n * (n - 1) / 2 - (n - 1);
  return extra < room ? extra : room;
}

SolveResult run_dp(const VwSspInstance& inst, uint64_t seed, bool use_reduce) {
  NiceTreeDecomposition ntd = make_nice(
      heuristic_decomposition(inst.graph, seed), inst.graph, inst.s, inst.t);
  SolveOptions opts;
  opts.use_reduce = use_reduce;
  opts.want_witness = false;
  return solve(inst, ntd, opts);
}

bool same_verdict(bool a_ans, const std::optional<int64_t>& a_cost, bool b_ans,
                  const std::optional<int64_t>& b_cost) {
  return a_ans == b_ans && (!a_ans || *a_cost == *b_cost);
}

// C1: the tree DP agrees with exhaustive search on a broad seeded mix.
Outcome criterion1() {
  auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    uint64_t seed = 81000 + static_cast<uint64_t>(i);
    Rng rng(seed);
    SspInstance in;
    int pick = i % 5;
    if (pick <= 2) {
      int n = 5 + static_cast<int>(rng.below(12));
      int extra = clamp_extra(n, static_cast<int>(rng.below(7)));
      in = gen_tree_plus_edges(n, extra, rng.range(2, n),
                               static_cast<int64_t>(rng.below(9)), seed);
    } else if (pick == 3) {
      int w = 2 + static_cast<int>(rng.below(3));
      int h = 2 + static_cast<int>(rng.below(3));
      in = gen_grid(w, h, rng.range(2, w * h),
                    static_cast<int64_t>(rng.below(9)));
    } else {
      int w = 2 + static_cast<int>(rng.below(3));
      int h = 2 + static_cast<int>(rng.below(3));
      in = gen_hex_grid(w, h, rng.range(2, w * h),
                        static_cast<int64_t>(rng.below(9)));
    }
    VwSspInstance inst = lift(in);
    SolveResult dp = run_dp(inst, seed, true);
    OracleResult oracle = brute_force_solve(inst);
    if (!same_verdict(dp.answer, dp.min_cost, oracle.answer, oracle.min_cost))
      ++mismatches;
  }
  Outcome out;
  out.pass = mismatches == 0;
  out.detail = "dp vs oracle on 500 mixed instances: " +
               std::to_string(mismatches) + " mismatches (" +
               fixed1(seconds_since(start)) + "s)";
  return out;
}

// Shared corpus for C2..C5: 200 kernelizable draws per pipeline, redrawn when
// the unweighted expansion would outgrow what the oracle can price exactly.
struct KernelRun {
  bool definite_no = false;
  VwSspInstance inst;
  VertexSet markers;
  int64_t fes = -1;
  std::vector<int> anchors;
  std::vector<int> forced;
};

KernelRun run_kernel(const std::string& pipeline, const SspInstance& in) {
  KernelRun out;
  if (pipeline == "fvs") {
    FvsKernel kern = kernelize_fvs(in);
    out.definite_no = kern.definite_no;
    out.inst = kern.inst;
    out.markers = kern.forbidden;
    out.anchors = kern.anchors;
    out.forced = kern.forced;
  } else if (pipeline == "fes") {
    FesKernel kern = kernelize_fes(in);
    out.definite_no = kern.definite_no;
    out.inst = kern.inst;
    out.markers = VertexSet(kern.inst.graph.n);
    out.fes = kern.fes;
  } else {
    TwinKernel kern = kernelize_vc_krr(in, 2);
    out.definite_no = kern.definite_no;
    out.inst = kern.inst;
    out.markers = VertexSet(kern.inst.graph.n);
  }
  return out;
}

int for_kernel_batch(
    const std::string& pipeline,
    const std::function<void(const SspInstance&, const KernelRun&)>& fn) {
  uint64_t seed =
      pipeline == "fvs" ? 50000 : pipeline == "fes" ? 60000 : 70000;
  int done = 0, attempts = 0;
  while (done < 200 && ++attempts < 5000) {
    ++seed;
    Rng rng(seed);
    SspInstance in;
    if (pipeline == "vc-krr") {
      // the twin pipeline wants inputs with no two vertices sharing two
      // neighbors, so mix cycle-free draws with honeycomb grids
      if (seed % 7 == 0) {
        int w = 2 + static_cast<int>(rng.below(3));
        int h = 2 + static_cast<int>(rng.below(3));
        in = gen_hex_grid(w, h, rng.range(2, 6),
                          static_cast<int64_t>(rng.below(5)));
      } else {
        int n = 4 + static_cast<int>(rng.below(8));
        int extra = clamp_extra(n, static_cast<int>(rng.below(3)));
        in = gen_tree_plus_edges(n, extra, rng.range(2, 6),
                                 static_cast<int64_t>(rng.below(5)), seed);
        if (contains_k22(in.graph)) continue;
      }
    } else {
      int n = 4 + static_cast<int>(rng.below(8));
      int extra = clamp_extra(n, static_cast<int>(rng.below(4)));
      in = gen_tree_plus_edges(n, extra, rng.range(2, 6),
                               static_cast<int64_t>(rng.below(5)), seed);
    }
    KernelRun kern = run_kernel(pipeline, in);
    if (!kern.definite_no && expansion_size(kern.inst, kern.markers) > 60)
      continue;
    fn(in, kern);
    ++done;
  }
  return done;
}

// C2: kernelize then flatten back to unit weights; the exhaustive verdict and
// its optimal cost must survive the round trip.
Outcome criterion2() {
  auto start = std::chrono::steady_clock::now();
  int bad = 0, checked = 0;
  for (const char* pipeline : {"fvs", "fes", "vc-krr"}) {
    checked += for_kernel_batch(
        pipeline, [&](const SspInstance& in, const KernelRun& kern) {
          OracleResult before = brute_force_solve(lift(in));
          if (kern.definite_no) {
            if (before.answer) ++bad;
            return;
          }
          SspInstance flat = expand_to_ssp(kern.inst, kern.markers);
          OracleResult after = brute_force_solve(lift(flat), 64);
          if (!same_verdict(before.answer, before.min_cost, after.answer,
                            after.min_cost))
            ++bad;
        });
  }
  Outcome out;
  out.pass = bad == 0 && checked == 600;
  out.detail = "kernelize+expand round trips on " + std::to_string(checked) +
               "/600 instances: " + std::to_string(bad) +
               " verdict changes (" + fixed1(seconds_since(start)) + "s)";
  return out;
}

// C3: the spanning-tree kernel obeys its certified size bounds.
Outcome criterion3() {
  int bad = 0, checked = 0;
  for_kernel_batch("fes", [&](const SspInstance& in, const KernelRun& kern) {
    if (kern.definite_no) return;
    ++checked;
    int64_t fes = in.graph.m() - in.graph.n + 1;
    if (kern.fes != fes) ++bad;
    if (kern.inst.graph.n > 16 * fes + 9) ++bad;
    if (kern.inst.graph.m() > 17 * fes + 8) ++bad;
  });
  Outcome out;
  out.pass = bad == 0 && checked > 0;
  out.detail = "|V| <= 16*fes+9 and |E| <= 17*fes+8 on " +
               std::to_string(checked) +
               " reduced instances: " + std::to_string(bad) + " violations";
  return out;
}

// C4: after the feedback-set kernel, every off-anchor tree is small relative
// to its forced vertices, and the weight clamps hold everywhere.
Outcome criterion4() {
  int bad = 0, trees = 0, instances = 0;
  for_kernel_batch("fvs", [&](const SspInstance&, const KernelRun& kern) {
    if (kern.definite_no) return;
    ++instances;
    const VwSspInstance& inst = kern.inst;
    for (int v = 0; v < inst.graph.n; ++v)
      if (inst.kappa[v] > inst.k + 1 || inst.eta[v] > inst.l + 1) ++bad;
    VertexSet off_anchor(inst.graph.n);
    for (int v = 0; v < inst.graph.n; ++v) off_anchor.insert(v);
    for (int v : kern.anchors) off_anchor.erase(v);
    VertexSet forced(inst.graph.n);
    for (int v : kern.forced) forced.insert(v);
    Renumbering ids;
    Graph residual = induced_subgraph(inst.graph, off_anchor, &ids);
    for (const VertexSet& tree : connected_components(residual)) {
      ++trees;
      int good = 0;
      for (int v : tree.items())
        if (forced.contains(ids.new_to_old[v])) ++good;
      if (tree.size() > 8 * good) ++bad;
    }
  });
  Outcome out;
  out.pass = bad == 0 && instances > 0;
  out.detail = "per-tree size and weight clamps over " +
               std::to_string(trees) + " residual trees in " +
               std::to_string(instances) +
               " kernels: " + std::to_string(bad) + " violations";
  return out;
}

// C5: flattening a weighted kernel produces exactly the predicted number of
// vertices (total path cost plus total on-path exposure).
Outcome criterion5() {
  int bad = 0, checked = 0;
  for (const char* pipeline : {"fvs", "fes", "vc-krr"}) {
    for_kernel_batch(pipeline,
                     [&](const SspInstance&, const KernelRun& kern) {
                       if (kern.definite_no) return;
                       ++checked;
                       SspInstance flat =
                           expand_to_ssp(kern.inst, kern.markers);
                       if (flat.graph.n !=
                           expansion_size(kern.inst, kern.markers))
                         ++bad;
                     });
  }
  Outcome out;
  out.pass = bad == 0 && checked > 0;
  out.detail = "expansion sizes exact on " + std::to_string(checked) +
               " kernels: " + std::to_string(bad) + " violations";
  return out;
}

// C6: representative thinning must preserve the optimum of every completion
// query while meeting the per-mode size bound.
Outcome criterion6() {
  int bad_general = 0, bad_bound = 0;
  long long bad_specialized = 0;
  int bad_specialized_sets = 0, bad_matching_queries = 0;
  int first_bad_seed = -1;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    int u = 2 * (1 + static_cast<int>(seed % 3));  // universes of 2, 4, 6
    std::vector<int> universe;
    for (int i = 0; i < u; ++i) universe.push_back(i);
    std::vector<Partition> matchings = all_perfect_matchings(universe);
    std::vector<int> order;
    for (size_t i = 0; i < matchings.size(); ++i)
      order.push_back(static_cast<int>(i));
    rng.shuffle(order);
    int count = 1 + static_cast<int>(rng.below(matchings.size()));
    WeightedPartitionSet full;
    for (int i = 0; i < count; ++i)
      full.push_back(
          {matchings[order[i]], static_cast<long long>(rng.below(50))});
    full = rmc(full);

    WeightedPartitionSet general = reduce(full, ReduceMode::general);
    WeightedPartitionSet specialized = reduce(full, ReduceMode::matching);
    if (general.size() > (1ull << (u - 1))) ++bad_bound;
    if (specialized.size() > (1ull << (u / 2))) ++bad_bound;
    bool set_broke = false;
    for (const Partition& q : all_partitions(universe)) {
      if (opt(q, general) != opt(q, full)) ++bad_general;
      if (opt(q, specialized) != opt(q, full)) {
        ++bad_specialized;
        set_broke = true;
      }
    }
    for (const Partition& q : matchings)
      if (opt(q, specialized) != opt(q, full)) ++bad_matching_queries;
    if (set_broke) {
      ++bad_specialized_sets;
      if (first_bad_seed < 0) first_bad_seed = static_cast<int>(seed);
    }
  }
  Outcome out;
  out.pass = bad_general == 0 && bad_bound == 0 && bad_specialized == 0;
  std::ostringstream detail;
  detail << "thinning over 1000 matching sets: baseline mode exact on every "
            "query within its 2^(|U|-1) bound; specialized mode held its "
            "2^(|U|/2) bound and all "
         << (bad_matching_queries == 0 ? "" : "but some ")
         << "matching queries, yet missed " << bad_specialized
         << " general queries across " << bad_specialized_sets
         << " sets (first seed " << first_bad_seed
         << "); no subset that small can answer every query";
  out.detail = detail.str();
  return out;
}

// C7: thinning the tables is an optimization, never a behavior change.
Outcome criterion7() {
  int diffs = 0;
  for (int i = 0; i < 100; ++i) {
    uint64_t seed = 77000 + static_cast<uint64_t>(i);
    Rng rng(seed);
    SspInstance in;
    switch (i % 4) {
      case 0: {
        int n = 6 + static_cast<int>(rng.below(11));
        int extra = clamp_extra(n, static_cast<int>(rng.below(5)));
        in = gen_tree_plus_edges(n, extra, rng.range(2, n),
                                 static_cast<int64_t>(rng.below(7)), seed);
        break;
      }
      case 1:
        in = gen_series_parallel(6 + static_cast<int>(rng.below(9)),
                                 rng.range(2, 10),
                                 static_cast<int64_t>(rng.below(7)), seed);
        break;
      case 2:
        in = gen_grid(2 + static_cast<int>(rng.below(3)),
                      2 + static_cast<int>(rng.below(2)), rng.range(2, 10),
                      static_cast<int64_t>(rng.below(7)));
        break;
      default:
        in = gen_hex_grid(2 + static_cast<int>(rng.below(3)),
                          2 + static_cast<int>(rng.below(3)),
                          rng.range(2, 10),
                          static_cast<int64_t>(rng.below(7)));
        break;
    }
    VwSspInstance inst = lift(in);
    SolveResult fast = run_dp(inst, seed, true);
    SolveResult plain = run_dp(inst, seed, false);
    if (!same_verdict(fast.answer, fast.min_cost, plain.answer,
                      plain.min_cost))
      ++diffs;
  }
  Outcome out;
  out.pass = diffs == 0;
  out.detail = "thinned vs unthinned tables on 100 instances: " +
               std::to_string(diffs) + " verdict differences";
  return out;
}

// C8: the clique-to-path construction keeps its structural bookkeeping and,
// where the oracle can price the output, the exact verdict.
Outcome criterion8() {
  auto start = std::chrono::steady_clock::now();
  int bad_structure = 0, bad_equivalence = 0, equivalences = 0;
  for (int i = 0; i < 50; ++i) {
    int class_size = i % 2 == 0 ? 2 : 4;
    double prob = 0.2 + 0.15 * static_cast<double>(i % 5);
    MccInstance mcc =
        gen_mcc_random(3, class_size, prob, 88000 + static_cast<uint64_t>(i));
    VcPptResult res = construct_vc_ppt(mcc);
    int log_nhat = 0;
    while ((1 << (log_nhat + 1)) <= res.n_hat) ++log_nhat;
    int64_t m = mcc.graph.m();
    int64_t lp = m - 3 + 3 * log_nhat;
    int gadget_total = 3 * 2 * log_nhat;
    bool structure =
        res.n_hat == class_size && res.inst.k == 7 && res.inst.l == lp &&
        static_cast<int64_t>(res.connectors.size()) == 2 &&
        res.gadget.size() == 3 && res.pendants_each == lp + 1 &&
        static_cast<int64_t>(res.edge_vertex.size()) == m &&
        res.inst.graph.n == 2 + m + 2 + gadget_total * (1 + lp + 1);
    for (const std::vector<int>& gadget : res.gadget)
      structure = structure && static_cast<int>(gadget.size()) == 2 * log_nhat;
    if (!structure) ++bad_structure;
    if (res.inst.graph.n <= 130) {
      ++equivalences;
      bool want = brute_force_mcc(mcc).answer;
      bool got = brute_force_solve(lift(res.inst), 130).answer;
      if (want != got) ++bad_equivalence;
    }
  }
  Outcome out;
  out.pass = bad_structure == 0 && bad_equivalence == 0 && equivalences > 0;
  out.detail = "clique-to-path layout exact on 50 builds, verdict equal on " +
               std::to_string(equivalences) + " oracle-sized ones (" +
               std::to_string(bad_structure) + "+" +
               std::to_string(bad_equivalence) + " violations, " +
               fixed1(seconds_since(start)) + "s)";
  return out;
}

// C9: composing instances behind two selector trees answers their OR, and the
// composed budgets match the advertised formulas.
Outcome criterion9() {
  SspInstance pool[4];
  {
    SspInstance a;  // plain feasible path
    a.graph = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}});
    a.s = 0;
    a.t = 3;
    a.k = 4;
    a.l = 2;
    pool[0] = a;
    SspInstance b = a;  // shortcut with one exposed corner
    b.graph = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
    pool[1] = b;
    SspInstance c = a;  // goal cut off
    c.graph = Graph::build(4, {{0, 1}, {1, 2}});
    pool[2] = c;
    SspInstance d = a;  // goal isolated behind a triangle
    d.graph = Graph::build(4, {{0, 1}, {1, 2}, {0, 2}});
    pool[3] = d;
  }
  int bad_or = 0, bad_k = 0, literal_l_hits = 0, actual_l_hits = 0;
  for (int i = 0; i < 20; ++i) {
    Rng rng(99000 + static_cast<uint64_t>(i));
    int p = i % 2 == 0 ? 2 : 4;
    std::vector<SspInstance> inputs;
    bool any_yes = false;
    for (int j = 0; j < p; ++j) {
      int pick = i == 0 ? 2 : i == 1 ? 0 : static_cast<int>(rng.below(4));
      inputs.push_back(pool[pick]);
      any_yes = any_yes || pick <= 1;
    }
    CrossCompResult comp = construct_tw_crosscomp(inputs);
    int log_p = p == 2 ? 1 : 2;
    OracleResult res = brute_force_solve(lift(comp.inst), 40);
    if (res.answer != any_yes) ++bad_or;
    if (comp.inst.k != 4 + 2 * log_p) ++bad_k;
    if (comp.inst.l == 2 + 2 * log_p - 1) ++literal_l_hits;
    if (comp.inst.l == 2 + 2 * log_p) ++actual_l_hits;
  }
  Outcome out;
  out.pass = bad_or == 0 && bad_k == 0 && literal_l_hits == 20;
  out.detail = "20 compositions: OR law " +
               std::string(bad_or == 0 ? "held" : "BROKE") +
               ", path budget k+2*log(p) " +
               std::string(bad_k == 0 ? "matched" : "BROKE") +
               "; load budget l+2*log(p)-1 matched " +
               std::to_string(literal_l_hits) + "/20 (the sound wiring needs " +
               "l+2*log(p), seen " + std::to_string(actual_l_hits) + "/20)";
  return out;
}

// C10: near-linear behavior on big low-width inputs, and the peak table stays
// under the budget implied by the decomposition width.
Outcome criterion10() {
  struct Case {
    const char* name;
    SspInstance inst;
    double limit_s;
  };
  std::vector<Case> cases;
  cases.push_back({"tree n=10000",
                   gen_tree_plus_edges(10000, 0, 30, 15, 424242), 10.0});
  cases.push_back(
      {"series-parallel n=2000", gen_series_parallel(2000, 50, 25, 424243),
       60.0});
  bool pass = true;
  std::ostringstream detail;
  for (size_t i = 0; i < cases.size(); ++i) {
    VwSspInstance inst = lift(cases[i].inst);
    auto start = std::chrono::steady_clock::now();
    NiceTreeDecomposition ntd = make_nice(
        heuristic_decomposition(inst.graph, 1), inst.graph, inst.s, inst.t);
    SolveOptions opts;
    opts.want_witness = false;
    SolveResult res = solve(inst, ntd, opts);
    double elapsed = seconds_since(start);

    int bag_max = ntd.width + 1;
    int64_t l_eff = std::min<int64_t>(inst.l, inst.graph.n);
    unsigned __int128 signatures = 1;
    for (int b = 0; b < bag_max; ++b) signatures *= 5;
    signatures *= static_cast<unsigned __int128>(l_eff + 1);
    unsigned __int128 budget = signatures
                               << (bag_max > 0 ? bag_max - 1 : 0);
    bool in_budget =
        static_cast<unsigned __int128>(res.stats.max_table_entries) <= budget;
    bool in_time = elapsed < cases[i].limit_s;
    pass = pass && in_budget && in_time;
    if (i > 0) detail << "; ";
    detail << cases[i].name << " " << (res.answer ? "yes" : "no") << " in "
           << fixed1(elapsed) << "s (width " << ntd.width << ", peak table "
           << res.stats.max_table_entries << ", budget "
           << static_cast<unsigned long long>(budget) << ")";
    if (!in_time) detail << " OVER TIME";
    if (!in_budget) detail << " OVER BUDGET";
  }
  Outcome out;
  out.pass = pass;
  out.detail = detail.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<Outcome()>> checks = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 10) {
      std::cerr << "usage: acceptance [1..10]\n";
      return 2;
    }
  }
  int failures = 0;
  for (int i = 1; i <= 10; ++i) {
    if (only != 0 && i != only) continue;
    Outcome outcome = checks[static_cast<size_t>(i - 1)]();
    std::cout << "C" << i << (outcome.pass ? " PASS  " : " FAIL  ")
              << outcome.detail << std::endl;
    if (!outcome.pass) ++failures;
  }
  return failures;
}
