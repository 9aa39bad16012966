#include "secluded/io.hpp"

#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssp {

namespace {

long long clamp_weight(long long w, long long budget) {
  long long cap = budget < std::numeric_limits<long long>::max() ? budget + 1
                                                                 : budget;
  return w < cap ? w : cap;
}

}  // namespace

ParsedInstance parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("instance: line " + std::to_string(line_no) +
                                ": " + what);
  };
  auto fail_total = [](const std::string& what) -> void {
    throw std::invalid_argument("instance: " + what);
  };

  long long n = -1, m = -1;
  long long k = 0, l = 0;
  int s = -1, t = -1;
  bool weighted = false;
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  std::vector<char> weight_given;
  std::vector<long long> kappa, lambda, eta;

  auto vertex = [&](std::istringstream& ss, const char* what) -> int {
    long long v;
    if (!(ss >> v)) fail(std::string(what) + " needs a vertex");
    if (v < 1 || v > n) fail(std::string(what) + " vertex out of range");
    return static_cast<int>(v - 1);
  };
  auto no_trailing = [&](std::istringstream& ss) -> void {
    std::string rest;
    if (ss >> rest) fail("trailing junk");
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "p") {
      if (n != -1) fail("repeated header");
      std::string tag;
      if (!(ss >> tag) || tag != "ssp") fail("header is not \"p ssp\"");
      if (!(ss >> n >> m >> k >> l))
        fail("header needs vertex count, edge count, k and l");
      if (n < 1) fail("vertex count below 1");
      if (m < 0) fail("negative edge count");
      no_trailing(ss);
      weight_given.assign(static_cast<size_t>(n), 0);
      kappa.assign(static_cast<size_t>(n), 1);
      lambda.assign(static_cast<size_t>(n), 1);
      eta.assign(static_cast<size_t>(n), 0);
      continue;
    }
    if (n == -1) fail("content before the header");
    if (head == "s") {
      if (s != -1) fail("repeated s line");
      s = vertex(ss, "s line");
      no_trailing(ss);
    } else if (head == "t") {
      if (t != -1) fail("repeated t line");
      t = vertex(ss, "t line");
      no_trailing(ss);
    } else if (head == "e") {
      int u = vertex(ss, "edge");
      int v = vertex(ss, "edge");
      no_trailing(ss);
      if (u == v) fail("self-loop");
      auto key = std::minmax(u, v);
      if (!seen.insert(std::pair<int, int>(key.first, key.second)).second)
        fail("duplicate edge");
      edges.emplace_back(key.first, key.second);
    } else if (head == "w") {
      int v = vertex(ss, "w line");
      long long ka, la, et;
      if (!(ss >> ka >> la >> et)) fail("w line needs three weights");
      no_trailing(ss);
      if (ka < 1) fail("kappa below 1");
      if (la < 0 || et < 0) fail("negative weight");
      if (weight_given[static_cast<size_t>(v)]) fail("repeated w line");
      weight_given[static_cast<size_t>(v)] = 1;
      kappa[static_cast<size_t>(v)] = clamp_weight(ka, k);
      lambda[static_cast<size_t>(v)] = clamp_weight(la, l);
      eta[static_cast<size_t>(v)] = clamp_weight(et, l);
      weighted = true;
    } else {
      fail("unknown directive \"" + head + "\"");
    }
  }

  if (n == -1) fail_total("missing header");
  if (static_cast<long long>(edges.size()) != m)
    fail_total("edge count does not match the header");
  if (s == -1) fail_total("missing s line");
  if (t == -1) fail_total("missing t line");

  ParsedInstance out;
  out.inst.graph = Graph::build(static_cast<int>(n), std::move(edges));
  out.inst.s = s;
  out.inst.t = t;
  out.inst.k = k;
  out.inst.l = l;
  out.inst.kappa.assign(kappa.begin(), kappa.end());
  out.inst.lambda.assign(lambda.begin(), lambda.end());
  out.inst.eta.assign(eta.begin(), eta.end());
  out.weighted = weighted;
  out.inst.validate();
  return out;
}

ParsedInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

namespace {

void write_common(std::ostream& out, const Graph& g, int s, int t, int64_t k,
                  int64_t l) {
  out << "p ssp " << g.n << ' ' << g.m() << ' ' << k << ' ' << l << '\n';
  out << "s " << s + 1 << '\n';
  out << "t " << t + 1 << '\n';
  for (const auto& [u, v] : g.edges)
    out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace

void write_instance(std::ostream& out, const SspInstance& inst) {
  write_common(out, inst.graph, inst.s, inst.t, inst.k, inst.l);
}

void write_instance(std::ostream& out, const VwSspInstance& inst) {
  write_common(out, inst.graph, inst.s, inst.t, inst.k, inst.l);
  for (int v = 0; v < inst.graph.n; ++v)
    if (inst.kappa[v] != 1 || inst.lambda[v] != 1 || inst.eta[v] != 0)
      out << "w " << v + 1 << ' ' << inst.kappa[v] << ' ' << inst.lambda[v]
          << ' ' << inst.eta[v] << '\n';
}

nlohmann::ordered_json to_json(const RunResult& result) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["answer"] = result.answer;
  if (result.min_cost)
    doc["min_cost"] = *result.min_cost;
  else
    doc["min_cost"] = nullptr;
  if (result.witness) {
    auto arr = nlohmann::ordered_json::array();
    for (int v : *result.witness) arr.push_back(v + 1);
    doc["witness"] = std::move(arr);
  } else {
    doc["witness"] = nullptr;
  }
  auto& stats = doc["stats"];
  stats["n"] = result.n;
  stats["m"] = result.m;
  if (result.width)
    stats["width"] = *result.width;
  else
    stats["width"] = nullptr;
  if (result.max_table)
    stats["max_table"] = *result.max_table;
  else
    stats["max_table"] = nullptr;
  auto kernel = nlohmann::ordered_json::array();
  for (const auto& [stage, size] : result.kernel_sizes)
    kernel.push_back({{"stage", stage}, {"n", size}});
  stats["kernel_sizes"] = std::move(kernel);
  auto timings = nlohmann::ordered_json::array();
  for (const auto& [stage, ms] : result.timings_ms)
    timings.push_back({{"stage", stage}, {"ms", ms}});
  stats["timings_ms"] = std::move(timings);
  auto& prov = doc["provenance"];
  prov["seed"] = result.seed;
  prov["pipeline"] = result.pipeline;
  prov["versions"] = {{"schema", 1}, {"tool", "0.1.0"}};
  return doc;
}

}  // namespace ssp
