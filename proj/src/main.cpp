#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "secluded/dp.hpp"
#include "secluded/generators.hpp"
#include "secluded/io.hpp"
#include "secluded/kernelize.hpp"
#include "secluded/oracle.hpp"
#include "secluded/treedecomp.hpp"

using namespace ssp;

namespace {

// 0 also covers the non-decision commands; 20 is the "no" verdict so scripts
// can tell a negative answer from a crash.
constexpr int kExitYes = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitNo = 20;
constexpr int kExitInvariant = 70;

class Stopwatch {
 public:
  double lap_ms() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - mark_).count();
    mark_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point mark_ =
      std::chrono::steady_clock::now();
};

ParsedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in);
}

ParsedInstance wrap(const SspInstance& inst) {
  ParsedInstance p;
  p.inst = lift(inst);
  return p;
}

void emit_json(const nlohmann::ordered_json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

void emit_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct PipelineConfig {
  std::string kernel = "none";  // none | fvs | fes | vc-krr
  bool use_reduce = true;
  uint64_t seed = 0;
  std::string td_file;
  std::string td_out;
  bool want_witness = true;
};

std::string pipeline_name(const PipelineConfig& cfg) {
  std::string name = cfg.kernel == "none" ? "dp" : cfg.kernel + "+dp";
  if (!cfg.use_reduce) name += "-noreduce";
  return name;
}

// Kernel (optional) -> decomposition -> tree DP -> witness lifted back to
// input ids and re-priced against the input instance.
RunResult run_pipeline(const ParsedInstance& input, const PipelineConfig& cfg) {
  RunResult res;
  res.n = input.inst.graph.n;
  res.m = input.inst.graph.m();
  res.seed = cfg.seed;
  res.pipeline = pipeline_name(cfg);
  res.kernel_sizes.emplace_back("input", res.n);
  Stopwatch watch;

  VwSspInstance work;
  const ReductionTrace* trace = nullptr;
  std::optional<Renumbering> ren;
  FvsKernel fvs_kernel;
  FesKernel fes_kernel;
  TwinKernel twin_kernel;

  if (cfg.kernel == "none") {
    work = input.inst;
    if (cfg.td_file.empty() && !is_connected(work.graph)) {
      // The decomposition heuristic wants a connected graph; everything
      // outside the terminals' component is irrelevant anyway.
      std::vector<VertexSet> comps = connected_components(work.graph);
      const VertexSet* home = nullptr;
      for (const VertexSet& c : comps)
        if (c.contains(work.s)) home = &c;
      if (!home->contains(work.t)) {
        res.answer = false;
        res.timings_ms.emplace_back("solve", watch.lap_ms());
        return res;
      }
      Renumbering map;
      Graph sub = induced_subgraph(work.graph, *home, &map);
      VwSspInstance cut;
      cut.graph = std::move(sub);
      cut.s = map.old_to_new[work.s];
      cut.t = map.old_to_new[work.t];
      cut.k = work.k;
      cut.l = work.l;
      for (int v : map.new_to_old) {
        cut.kappa.push_back(work.kappa[v]);
        cut.lambda.push_back(work.lambda[v]);
        cut.eta.push_back(work.eta[v]);
      }
      work = std::move(cut);
      ren = std::move(map);
      res.kernel_sizes.emplace_back("component", work.graph.n);
    }
  } else {
    SspInstance raw;
    raw.graph = input.inst.graph;
    raw.s = input.inst.s;
    raw.t = input.inst.t;
    raw.k = input.inst.k;
    raw.l = input.inst.l;
    bool definite_no = false;
    if (cfg.kernel == "fvs") {
      fvs_kernel = kernelize_fvs(raw);
      definite_no = fvs_kernel.definite_no;
      work = fvs_kernel.inst;
      trace = &fvs_kernel.trace;
    } else if (cfg.kernel == "fes") {
      fes_kernel = kernelize_fes(raw);
      definite_no = fes_kernel.definite_no;
      work = fes_kernel.inst;
      trace = &fes_kernel.trace;
    } else if (cfg.kernel == "vc-krr") {
      twin_kernel = kernelize_vc_krr(raw, 2);
      definite_no = twin_kernel.definite_no;
      work = twin_kernel.inst;
      trace = &twin_kernel.trace;
    } else {
      throw std::runtime_error("unknown kernel pipeline " + cfg.kernel);
    }
    if (definite_no) {
      res.answer = false;
      res.kernel_sizes.emplace_back(cfg.kernel, 0);
      res.timings_ms.emplace_back("kernel", watch.lap_ms());
      return res;
    }
    res.kernel_sizes.emplace_back(cfg.kernel, work.graph.n);
    res.timings_ms.emplace_back("kernel", watch.lap_ms());
  }

  TreeDecomposition td;
  if (!cfg.td_file.empty()) {
    std::ifstream in(cfg.td_file);
    if (!in) throw std::runtime_error("cannot open " + cfg.td_file);
    td = read_td(in);
    if (!validate(td, work.graph))
      throw std::invalid_argument(
          "td file is not a decomposition of the instance graph");
  } else {
    td = heuristic_decomposition(work.graph, cfg.seed);
  }
  if (!cfg.td_out.empty()) {
    std::ofstream out(cfg.td_out);
    if (!out) throw std::runtime_error("cannot write " + cfg.td_out);
    write_td(out, td, work.graph.n);
  }
  NiceTreeDecomposition ntd = make_nice(td, work.graph, work.s, work.t);
  res.width = ntd.width;
  res.timings_ms.emplace_back("decompose", watch.lap_ms());

  SolveOptions opts;
  opts.use_reduce = cfg.use_reduce;
  opts.want_witness = cfg.want_witness;
  SolveResult sol = solve(work, ntd, opts);
  res.timings_ms.emplace_back("solve", watch.lap_ms());
  res.answer = sol.answer;
  res.min_cost = sol.min_cost;
  res.max_table = sol.stats.max_table_entries;

  if (sol.witness) {
    PathWitness path = *sol.witness;
    if (trace) path = lift_witness(*trace, path);
    if (ren)
      for (int& v : path) v = ren->new_to_old[v];
    PathCost priced = evaluate_path(input.inst, path);
    if (priced.cost != *sol.min_cost || priced.cost > input.inst.k ||
        priced.load > input.inst.l)
      throw std::logic_error(
          "pipeline: lifted witness disagrees with the solver");
    res.witness = std::move(path);
  }
  return res;
}

const char* rule_name(RuleId rule) {
  switch (rule) {
    case RuleId::lift_weights: return "lift_weights";
    case RuleId::keep_st_component: return "keep_st_component";
    case RuleId::twin_reduce: return "twin_reduce";
    case RuleId::mark_forbidden: return "mark_forbidden";
    case RuleId::drop_dead_trees: return "drop_dead_trees";
    case RuleId::burn_leaf: return "burn_leaf";
    case RuleId::shrink_run: return "shrink_run";
    case RuleId::compact_ids: return "compact_ids";
  }
  return "?";
}

nlohmann::ordered_json trace_to_json(const ReductionTrace& trace) {
  auto steps = nlohmann::ordered_json::array();
  for (const TraceStep& step : trace.steps) {
    nlohmann::ordered_json one;
    one["rule"] = rule_name(step.rule);
    if (!step.removed.empty()) one["removed"] = step.removed.size();
    size_t reweighted = step.eta_updates.size() + step.lambda_updates.size() +
                        step.kappa_updates.size();
    if (reweighted > 0) one["reweighted"] = reweighted;
    if (step.added >= 0) one["merged_run"] = step.run.size();
    steps.push_back(std::move(one));
  }
  return steps;
}

int cmd_solve(const std::string& file, const PipelineConfig& cfg,
              const std::string& json_out) {
  ParsedInstance parsed = load_instance(file);
  if (parsed.weighted && cfg.kernel != "none") {
    std::cerr << "error: kernel pipelines take unweighted instances\n";
    return kExitUsage;
  }
  RunResult res = run_pipeline(parsed, cfg);
  emit_json(to_json(res), json_out);
  return res.answer ? kExitYes : kExitNo;
}

int cmd_kernelize(const std::string& file, const std::string& kernel,
                  const std::string& out, const std::string& json_out) {
  ParsedInstance parsed = load_instance(file);
  if (parsed.weighted) {
    std::cerr << "error: kernel pipelines take unweighted instances\n";
    return kExitUsage;
  }
  SspInstance raw;
  raw.graph = parsed.inst.graph;
  raw.s = parsed.inst.s;
  raw.t = parsed.inst.t;
  raw.k = parsed.inst.k;
  raw.l = parsed.inst.l;

  Stopwatch watch;
  bool definite_no = false;
  VwSspInstance reduced;
  const ReductionTrace* trace = nullptr;
  FvsKernel fvs_kernel;
  FesKernel fes_kernel;
  TwinKernel twin_kernel;
  if (kernel == "fvs") {
    fvs_kernel = kernelize_fvs(raw);
    definite_no = fvs_kernel.definite_no;
    reduced = fvs_kernel.inst;
    trace = &fvs_kernel.trace;
  } else if (kernel == "fes") {
    fes_kernel = kernelize_fes(raw);
    definite_no = fes_kernel.definite_no;
    reduced = fes_kernel.inst;
    trace = &fes_kernel.trace;
  } else {
    twin_kernel = kernelize_vc_krr(raw, 2);
    definite_no = twin_kernel.definite_no;
    reduced = twin_kernel.inst;
    trace = &twin_kernel.trace;
  }
  double ms = watch.lap_ms();

  if (!json_out.empty()) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["pipeline"] = kernel;
    doc["definite_no"] = definite_no;
    doc["input"] = {{"n", raw.graph.n}, {"m", raw.graph.m()}};
    if (!definite_no)
      doc["kernel"] = {{"n", reduced.graph.n}, {"m", reduced.graph.m()}};
    else
      doc["kernel"] = nullptr;
    doc["steps"] = trace_to_json(*trace);
    doc["ms"] = ms;
    emit_json(doc, json_out);
  }
  if (definite_no) {
    std::cerr << "kernelization settled the answer: no\n";
    return kExitNo;
  }
  std::ostringstream text;
  write_instance(text, reduced);
  emit_text(text.str(), out);
  return kExitYes;
}

int cmd_oracle(const std::string& file, int cap, const std::string& json_out) {
  ParsedInstance parsed = load_instance(file);
  Stopwatch watch;
  OracleResult ores = brute_force_solve(parsed.inst, cap);
  RunResult res;
  res.answer = ores.answer;
  res.min_cost = ores.min_cost;
  res.witness = ores.witness;
  res.n = parsed.inst.graph.n;
  res.m = parsed.inst.graph.m();
  res.kernel_sizes.emplace_back("input", res.n);
  res.timings_ms.emplace_back("solve", watch.lap_ms());
  res.pipeline = "oracle";
  emit_json(to_json(res), json_out);
  return res.answer ? kExitYes : kExitNo;
}

int cmd_verify(const std::vector<std::string>& files,
               const PipelineConfig& cfg, int cap) {
  bool mismatch = false;
  for (const std::string& file : files) {
    ParsedInstance parsed = load_instance(file);
    if (parsed.inst.graph.n > cap) {
      std::cout << "skip " << file << " (n=" << parsed.inst.graph.n
                << " beyond the oracle cap)\n";
      continue;
    }
    if (parsed.weighted && cfg.kernel != "none") {
      std::cerr << "error: kernel pipelines take unweighted instances\n";
      return kExitUsage;
    }
    RunResult dp = run_pipeline(parsed, cfg);
    OracleResult oracle = brute_force_solve(parsed.inst, cap);
    bool agree = dp.answer == oracle.answer &&
                 (!dp.answer || *dp.min_cost == *oracle.min_cost);
    if (agree) {
      std::cout << "ok " << file << " answer=" << (dp.answer ? "yes" : "no");
      if (dp.min_cost) std::cout << " cost=" << *dp.min_cost;
      std::cout << '\n';
    } else {
      mismatch = true;
      auto show = [](bool ans, const std::optional<int64_t>& cost) {
        return ans ? "yes/" + std::to_string(*cost) : std::string("no");
      };
      std::cout << "mismatch " << file << " dp=" << show(dp.answer, dp.min_cost)
                << " oracle=" << show(oracle.answer, oracle.min_cost) << '\n';
    }
  }
  return mismatch ? kExitInvariant : kExitYes;
}

struct BenchJob {
  int64_t param = 0;
  uint64_t seed = 0;
  SspInstance inst;
};

int cmd_bench(const std::string& family, int count, int n, int max_extra,
              int max_side, int64_t k, int64_t l, uint64_t seed, int workers,
              const PipelineConfig& base_cfg, const std::string& json_out) {
  std::string param_label;
  std::vector<BenchJob> jobs;
  uint64_t next_seed = seed;
  if (family == "tree") {
    param_label = "extra_edges";
    for (int extra = 0; extra <= max_extra; ++extra)
      for (int rep = 0; rep < count; ++rep) {
        uint64_t job_seed = next_seed++;
        jobs.push_back(
            {extra, job_seed, gen_tree_plus_edges(n, extra, k, l, job_seed)});
      }
  } else if (family == "grid" || family == "hex") {
    param_label = "side";
    for (int side = 2; side <= max_side; ++side)
      for (int rep = 0; rep < count; ++rep) {
        SspInstance inst = family == "grid" ? gen_grid(side, side, k, l)
                                            : gen_hex_grid(side, side, k, l);
        jobs.push_back({side, next_seed++, std::move(inst)});
      }
  } else {  // series-parallel
    param_label = "n";
    for (int point = 1; point <= 4; ++point) {
      int size = std::max(5, n * point / 4);
      for (int rep = 0; rep < count; ++rep) {
        uint64_t job_seed = next_seed++;
        jobs.push_back({size, job_seed, gen_series_parallel(size, k, l, job_seed)});
      }
    }
  }

  std::vector<RunResult> results(jobs.size());
  std::atomic<size_t> cursor{0};
  std::mutex error_lock;
  std::exception_ptr first_error;
  auto drain = [&] {
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        PipelineConfig cfg = base_cfg;
        cfg.seed = jobs[i].seed;
        cfg.want_witness = false;
        results[i] = run_pipeline(wrap(jobs[i].inst), cfg);
      } catch (...) {
        std::lock_guard<std::mutex> guard(error_lock);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  auto stage_ms = [](const RunResult& r, const std::string& stage) {
    for (const auto& [name, ms] : r.timings_ms)
      if (name == stage) return ms;
    return 0.0;
  };

  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["family"] = family;
  doc["pipeline"] = pipeline_name(base_cfg);
  doc["workers"] = workers;
  doc["param"] = param_label;
  auto points = nlohmann::ordered_json::array();
  for (size_t i = 0; i < jobs.size();) {
    size_t j = i;
    while (j < jobs.size() && jobs[j].param == jobs[i].param) ++j;
    nlohmann::ordered_json point;
    point["param"] = jobs[i].param;
    auto runs = nlohmann::ordered_json::array();
    double kernel_n_sum = 0, solve_sum = 0, solve_max = 0;
    int yes = 0;
    for (size_t r = i; r < j; ++r) {
      const RunResult& res = results[r];
      int64_t kernel_n = res.kernel_sizes.back().second;
      double solve = stage_ms(res, "solve");
      kernel_n_sum += static_cast<double>(kernel_n);
      solve_sum += solve;
      solve_max = std::max(solve_max, solve);
      yes += res.answer ? 1 : 0;
      runs.push_back({{"seed", jobs[r].seed},
                      {"n", res.n},
                      {"m", res.m},
                      {"kernel_n", kernel_n},
                      {"width", res.width ? nlohmann::ordered_json(*res.width)
                                          : nlohmann::ordered_json(nullptr)},
                      {"answer", res.answer},
                      {"kernel_ms", stage_ms(res, "kernel")},
                      {"solve_ms", solve}});
    }
    point["runs"] = std::move(runs);
    point["yes"] = yes;
    point["mean_kernel_n"] = kernel_n_sum / static_cast<double>(j - i);
    point["mean_solve_ms"] = solve_sum / static_cast<double>(j - i);
    point["max_solve_ms"] = solve_max;
    points.push_back(std::move(point));
    i = j;
  }
  doc["points"] = std::move(points);
  emit_json(doc, json_out);
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver toolkit for short secluded paths"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  std::string file, out, json_out, td_file;
  PipelineConfig cfg;
  bool no_reduce = false;
  int cap = 20;
  std::string kernel = "fvs";
  std::vector<std::string> files;

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "decide an instance file with the tree DP");
  solve_cmd->add_option("file", file, "instance file")->required();
  solve_cmd->add_option("--kernel", cfg.kernel, "kernelization pipeline")
      ->check(CLI::IsMember({"none", "fvs", "fes", "vc-krr"}));
  solve_cmd->add_flag("--no-reduce", no_reduce,
                      "disable representative-set shrinking");
  solve_cmd->add_option("--td-file", td_file,
                        "use this tree decomposition instead of the heuristic");
  solve_cmd->add_option("--td-out", cfg.td_out,
                        "export the decomposition of the solved graph");
  solve_cmd->add_option("--seed", cfg.seed, "decomposition heuristic seed");
  solve_cmd->add_option("--json-out", json_out, "write the result here");

  CLI::App* kern_cmd = app.add_subcommand(
      "kernelize", "emit the reduced instance and a reduction trace");
  kern_cmd->add_option("file", file, "instance file")->required();
  kern_cmd->add_option("--kernel", kernel, "kernelization pipeline")
      ->check(CLI::IsMember({"fvs", "fes", "vc-krr"}));
  kern_cmd->add_option("-o,--out", out, "reduced instance file (default stdout)");
  kern_cmd->add_option("--json-out", json_out, "write the trace report here");

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "decide a small instance by brute force");
  oracle_cmd->add_option("file", file, "instance file")->required();
  oracle_cmd->add_option("--cap-oracle-n", cap,
                         "refuse instances above this vertex count");
  oracle_cmd->add_option("--json-out", json_out, "write the result here");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "cross-check the DP pipeline against the oracle");
  verify_cmd->add_option("files", files, "instance files")->required();
  verify_cmd->add_option("--kernel", cfg.kernel, "kernelization pipeline")
      ->check(CLI::IsMember({"none", "fvs", "fes", "vc-krr"}));
  verify_cmd->add_flag("--no-reduce", no_reduce,
                       "disable representative-set shrinking");
  verify_cmd->add_option("--seed", cfg.seed, "decomposition heuristic seed");
  verify_cmd->add_option("--cap-oracle-n", cap,
                         "skip instances above this vertex count");

  CLI::App* gen_cmd =
      app.add_subcommand("gen", "generate an instance file");
  gen_cmd->require_subcommand(1);
  int gn = 12, gextra = 2, gw = 3, gh = 3;
  int64_t gk = 6, gl = 3;
  uint64_t gseed = 0;
  CLI::App* gen_tree =
      gen_cmd->add_subcommand("tree", "random spanning tree plus extra edges");
  gen_tree->add_option("--n", gn, "vertex count");
  gen_tree->add_option("--extra", gextra, "non-tree edge count");
  CLI::App* gen_grid_cmd = gen_cmd->add_subcommand("grid", "square grid");
  gen_grid_cmd->add_option("--width", gw, "columns");
  gen_grid_cmd->add_option("--height", gh, "rows");
  CLI::App* gen_hex = gen_cmd->add_subcommand("hex", "hexagonal (brick) grid");
  gen_hex->add_option("--width", gw, "columns");
  gen_hex->add_option("--height", gh, "rows");
  CLI::App* gen_sp =
      gen_cmd->add_subcommand("sp", "random series-parallel graph");
  gen_sp->add_option("--n", gn, "vertex count");
  for (CLI::App* g : {gen_tree, gen_grid_cmd, gen_hex, gen_sp}) {
    g->add_option("--k", gk, "path budget");
    g->add_option("--l", gl, "load budget");
    g->add_option("-o,--out", out, "output file (default stdout)");
  }
  gen_tree->add_option("--seed", gseed, "generator seed");
  gen_sp->add_option("--seed", gseed, "generator seed");

  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "sweep a generator family and report timings");
  std::string family = "tree";
  int count = 3, workers = 1, bn = 30, bmax_extra = 6, bmax_side = 5;
  int64_t bk = 10, bl = 5;
  bench_cmd->add_option("--family", family, "instance family")
      ->check(CLI::IsMember({"tree", "grid", "hex", "sp"}));
  bench_cmd->add_option("--count", count, "runs per parameter point")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--n", bn, "base vertex count (tree, sp)");
  bench_cmd->add_option("--max-extra", bmax_extra, "extra-edge sweep end (tree)");
  bench_cmd->add_option("--max-side", bmax_side, "side sweep end (grid, hex)");
  bench_cmd->add_option("--k", bk, "path budget");
  bench_cmd->add_option("--l", bl, "load budget");
  bench_cmd->add_option("--seed", cfg.seed, "base seed");
  bench_cmd->add_option("--workers", workers, "concurrent solves")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--kernel", cfg.kernel, "kernelization pipeline")
      ->check(CLI::IsMember({"none", "fvs", "fes", "vc-krr"}));
  bench_cmd->add_flag("--no-reduce", no_reduce,
                      "disable representative-set shrinking");
  bench_cmd->add_option("--json-out", json_out, "write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  cfg.use_reduce = !no_reduce;
  cfg.td_file = td_file;
  if (!td_file.empty() && cfg.kernel != "none") {
    std::cerr << "error: --td-file describes the input graph, so it cannot be "
                 "combined with a kernel pipeline\n";
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(file, cfg, json_out);
    if (*kern_cmd) return cmd_kernelize(file, kernel, out, json_out);
    if (*oracle_cmd) return cmd_oracle(file, cap, json_out);
    if (*verify_cmd) return cmd_verify(files, cfg, cap);
    if (*bench_cmd)
      return cmd_bench(family, count, bn, bmax_extra, bmax_side, bk, bl,
                       cfg.seed, workers, cfg, json_out);
    // gen
    SspInstance inst;
    std::ostringstream text;
    if (*gen_tree) {
      inst = gen_tree_plus_edges(gn, gextra, gk, gl, gseed);
      text << "# gen tree n=" << gn << " extra=" << gextra << " seed=" << gseed
           << '\n';
    } else if (*gen_grid_cmd) {
      inst = gen_grid(gw, gh, gk, gl);
      text << "# gen grid " << gw << "x" << gh << '\n';
    } else if (*gen_hex) {
      inst = gen_hex_grid(gw, gh, gk, gl);
      text << "# gen hex " << gw << "x" << gh << '\n';
    } else {
      inst = gen_series_parallel(gn, gk, gl, gseed);
      text << "# gen sp n=" << gn << " seed=" << gseed << '\n';
    }
    write_instance(text, inst);
    emit_text(text.str(), out);
    return kExitYes;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
