#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "secluded/generators.hpp"
#include "secluded/io.hpp"
#include "secluded/rng.hpp"

using namespace ssp;

namespace {

std::string serialize(const SspInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

std::string serialize(const VwSspInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

int clamp_extra(int n, int extra) {
  int room = n * (n - 1) / 2 - (n - 1);
  return extra < room ? extra : room;
}

void check_same(const VwSspInstance& a, const VwSspInstance& b) {
  CHECK(a.graph.n == b.graph.n);
  CHECK(a.graph.edges == b.graph.edges);
  CHECK(a.s == b.s);
  CHECK(a.t == b.t);
  CHECK(a.k == b.k);
  CHECK(a.l == b.l);
  CHECK(a.kappa == b.kappa);
  CHECK(a.lambda == b.lambda);
  CHECK(a.eta == b.eta);
}

}  // namespace

TEST_CASE("parses a minimal instance") {
  ParsedInstance p = parse_instance(
      "p ssp 3 2 3 1\n"
      "s 1\n"
      "t 3\n"
      "e 1 2\n"
      "e 2 3\n");
  CHECK(p.inst.graph.n == 3);
  CHECK(p.inst.graph.edges ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(p.inst.s == 0);
  CHECK(p.inst.t == 2);
  CHECK(p.inst.k == 3);
  CHECK(p.inst.l == 1);
  CHECK_FALSE(p.weighted);
  CHECK(p.inst.kappa == std::vector<int64_t>{1, 1, 1});
  CHECK(p.inst.lambda == std::vector<int64_t>{1, 1, 1});
  CHECK(p.inst.eta == std::vector<int64_t>{0, 0, 0});
}

TEST_CASE("comments and blank lines are ignored") {
  ParsedInstance p = parse_instance(
      "# a route query\n"
      "\n"
      "p ssp 2 1 2 0   # n m k l\n"
      "s 1\n"
      "   \n"
      "t 2\n"
      "e 1 2  # the only edge\n"
      "#done\n");
  CHECK(p.inst.graph.n == 2);
  CHECK(p.inst.graph.m() == 1);
  CHECK_FALSE(p.weighted);
}

TEST_CASE("w lines switch on weights and keep defaults elsewhere") {
  ParsedInstance p = parse_instance(
      "p ssp 3 2 5 4\n"
      "s 1\n"
      "t 3\n"
      "e 1 2\n"
      "e 2 3\n"
      "w 2 3 2 1\n");
  CHECK(p.weighted);
  CHECK(p.inst.kappa == std::vector<int64_t>{1, 3, 1});
  CHECK(p.inst.lambda == std::vector<int64_t>{1, 2, 1});
  CHECK(p.inst.eta == std::vector<int64_t>{0, 1, 0});
}

TEST_CASE("weights beyond the budgets are clamped on ingest") {
  ParsedInstance p = parse_instance(
      "p ssp 3 2 4 2\n"
      "s 1\n"
      "t 3\n"
      "e 1 2\n"
      "e 2 3\n"
      "w 2 100 50 7\n");
  CHECK(p.inst.kappa[1] == 5);   // k + 1
  CHECK(p.inst.lambda[1] == 3);  // l + 1
  CHECK(p.inst.eta[1] == 3);     // l + 1
}

TEST_CASE("parse errors carry line numbers") {
  auto bad = [](const std::string& text, const std::string& msg) {
    CHECK_THROWS_WITH_AS(parse_instance(text), msg.c_str(),
                         std::invalid_argument);
  };
  bad("s 1\n", "instance: line 1: content before the header");
  bad("p ssp 2 1 2 0\np ssp 2 1 2 0\n", "instance: line 2: repeated header");
  bad("p tsp 2 1 2 0\n", "instance: line 1: header is not \"p ssp\"");
  bad("p ssp 2 1\n",
      "instance: line 1: header needs vertex count, edge count, k and l");
  bad("p ssp 0 0 2 0\n", "instance: line 1: vertex count below 1");
  bad("p ssp 2 1 2 0\ns 1\nt 2\ne 1 3\n",
      "instance: line 4: edge vertex out of range");
  bad("p ssp 2 1 2 0\ns 1\nt 2\ne 1 1\n", "instance: line 4: self-loop");
  bad("p ssp 2 2 2 0\ns 1\nt 2\ne 1 2\ne 2 1\n",
      "instance: line 5: duplicate edge");
  bad("p ssp 2 1 2 0\ns 1\ns 2\n", "instance: line 3: repeated s line");
  bad("p ssp 2 1 2 0\ns 1\nt 2\nt 2\n", "instance: line 4: repeated t line");
  bad("p ssp 2 1 2 0\ns 1\nt 2\ne 1 2\nw 1 2 1 0\nw 1 1 1 0\n",
      "instance: line 6: repeated w line");
  bad("p ssp 2 1 2 0\ns 1\nt 2\ne 1 2\nw 1 0 1 0\n",
      "instance: line 5: kappa below 1");
  bad("p ssp 2 1 2 0\ns 1\nt 2\ne 1 2\nw 1 1 -1 0\n",
      "instance: line 5: negative weight");
  bad("p ssp 2 1 2 0\ns 1\nt 2\nq 1\n",
      "instance: line 4: unknown directive \"q\"");
  bad("p ssp 2 1 2 0\ns 1 9\n", "instance: line 2: trailing junk");
  bad("", "instance: missing header");
  bad("p ssp 2 2 2 0\ns 1\nt 2\ne 1 2\n",
      "instance: edge count does not match the header");
  bad("p ssp 2 1 2 0\nt 2\ne 1 2\n", "instance: missing s line");
  bad("p ssp 2 1 2 0\ns 1\ne 1 2\n", "instance: missing t line");
}

TEST_CASE("instance validation still applies after a clean parse") {
  // s == t trips validate(), not the line parser
  CHECK_THROWS_AS(parse_instance("p ssp 2 1 2 0\ns 1\nt 1\ne 1 2\n"),
                  std::invalid_argument);
}

TEST_CASE("round trip: unweighted instances survive serialization") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    int n = 2 + static_cast<int>(seed % 9);
    SspInstance inst = gen_tree_plus_edges(
        n, clamp_extra(n, static_cast<int>(seed % 2)), 4, 2, seed);
    std::string text = serialize(inst);
    ParsedInstance back = parse_instance(text);
    CHECK_FALSE(back.weighted);
    check_same(back.inst, lift(inst));
    // serialization is a fixed point
    CHECK(serialize(back.inst) == text);
  }
}

TEST_CASE("round trip: weighted instances survive serialization") {
  for (uint64_t seed = 100; seed < 125; ++seed) {
    int n = 2 + static_cast<int>(seed % 9);
    VwSspInstance inst = lift(gen_tree_plus_edges(
        n, clamp_extra(n, static_cast<int>(seed % 2)), 6, 4, seed));
    Rng rng(seed * 31 + 7);
    for (int v = 0; v < n; ++v) {
      inst.kappa[v] = rng.range(1, inst.k + 1);
      inst.lambda[v] = rng.range(0, inst.l + 1);
      inst.eta[v] = rng.range(0, inst.l + 1);
    }
    std::string text = serialize(inst);
    ParsedInstance back = parse_instance(text);
    check_same(back.inst, inst);
    CHECK(serialize(back.inst) == text);
  }
}

TEST_CASE("json report fills every field of the schema") {
  RunResult r;
  r.answer = true;
  r.min_cost = 7;
  r.witness = PathWitness{0, 2, 3};
  r.n = 5;
  r.m = 6;
  r.width = 2;
  r.max_table = 48;
  r.kernel_sizes = {{"input", 5}, {"fvs", 4}};
  r.timings_ms = {{"kernel", 0.5}, {"solve", 1.25}};
  r.seed = 42;
  r.pipeline = "fvs+dp";
  nlohmann::ordered_json doc = to_json(r);
  CHECK(doc["schema"] == 1);
  CHECK(doc["answer"] == true);
  CHECK(doc["min_cost"] == 7);
  CHECK(doc["witness"] == nlohmann::ordered_json::array({1, 3, 4}));
  CHECK(doc["stats"]["n"] == 5);
  CHECK(doc["stats"]["m"] == 6);
  CHECK(doc["stats"]["width"] == 2);
  CHECK(doc["stats"]["max_table"] == 48);
  CHECK(doc["stats"]["kernel_sizes"].size() == 2);
  CHECK(doc["stats"]["kernel_sizes"][1]["stage"] == "fvs");
  CHECK(doc["stats"]["kernel_sizes"][1]["n"] == 4);
  CHECK(doc["stats"]["timings_ms"][0]["stage"] == "kernel");
  CHECK(doc["stats"]["timings_ms"][0]["ms"] == 0.5);
  CHECK(doc["provenance"]["seed"] == 42);
  CHECK(doc["provenance"]["pipeline"] == "fvs+dp");
  CHECK(doc["provenance"]["versions"]["schema"] == 1);
}

TEST_CASE("json report uses null for values that never materialized") {
  RunResult r;
  r.answer = false;
  r.n = 3;
  r.m = 2;
  r.seed = 0;
  r.pipeline = "oracle";
  nlohmann::ordered_json doc = to_json(r);
  CHECK(doc["answer"] == false);
  CHECK(doc["min_cost"].is_null());
  CHECK(doc["witness"].is_null());
  CHECK(doc["stats"]["width"].is_null());
  CHECK(doc["stats"]["max_table"].is_null());
  CHECK(doc["stats"]["kernel_sizes"].empty());
}
