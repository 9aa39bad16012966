#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "secluded/oracle.hpp"

using namespace ssp;

namespace {

VwSspInstance make(int n, std::vector<std::pair<int, int>> edges, int s, int t,
                   int64_t k, int64_t l) {
  SspInstance inst;
  inst.graph = Graph::build(n, std::move(edges));
  inst.s = s;
  inst.t = t;
  inst.k = k;
  inst.l = l;
  return lift(inst);
}

}  // namespace

TEST_CASE("path instance s-a-t") {
  auto inst = make(3, {{0, 1}, {1, 2}}, 0, 2, 3, 0);
  auto res = brute_force_solve(inst);
  REQUIRE(res.answer);
  CHECK(*res.min_cost == 3);
  CHECK(*res.load_at_min == 0);
  CHECK(*res.witness == PathWitness{0, 1, 2});
}

TEST_CASE("triangle prefers the detour when the budget allows no exposure") {
  // prefix {s,a} sees t as a neighbor, yet the full path s-a-t has load 0;
  // this instance catches any oracle that prunes on exposure along the way
  auto inst = make(3, {{0, 1}, {0, 2}, {1, 2}}, 0, 2, 3, 0);
  auto res = brute_force_solve(inst);
  REQUIRE(res.answer);
  CHECK(*res.min_cost == 3);
  CHECK(*res.load_at_min == 0);
  CHECK(*res.witness == PathWitness{0, 1, 2});
}

TEST_CASE("triangle with k=2 l=0 is a no") {
  auto inst = make(3, {{0, 1}, {0, 2}, {1, 2}}, 0, 2, 2, 0);
  auto res = brute_force_solve(inst);
  CHECK(!res.answer);
  CHECK(!res.min_cost.has_value());
}

TEST_CASE("triangle with k=2 l=1 takes the direct edge") {
  auto inst = make(3, {{0, 1}, {0, 2}, {1, 2}}, 0, 2, 2, 1);
  auto res = brute_force_solve(inst);
  REQUIRE(res.answer);
  CHECK(*res.min_cost == 2);
  CHECK(*res.load_at_min == 1);
  CHECK(*res.witness == PathWitness{0, 2});
}

TEST_CASE("cost pruning respects kappa") {
  auto inst = make(3, {{0, 1}, {1, 2}}, 0, 2, 3, 5);
  inst.kappa[1] = 5;
  CHECK(!brute_force_solve(inst).answer);
  inst.k = 7;
  auto res = brute_force_solve(inst);
  REQUIRE(res.answer);
  CHECK(*res.min_cost == 7);
}

TEST_CASE("minimum load breaks cost ties") {
  // two parallel routes of equal cost; a pendant on route a adds exposure
  auto inst = make(5, {{0, 1}, {1, 2}, {0, 3}, {3, 2}, {1, 4}}, 0, 2, 3, 2);
  auto res = brute_force_solve(inst);
  REQUIRE(res.answer);
  CHECK(*res.min_cost == 3);
  CHECK(*res.load_at_min == 1);
  CHECK(*res.witness == PathWitness{0, 3, 2});
}

TEST_CASE("lexicographic witness among equal cost and load") {
  auto inst = make(4, {{0, 1}, {1, 2}, {0, 3}, {3, 2}}, 0, 2, 3, 1);
  auto res = brute_force_solve(inst);
  REQUIRE(res.answer);
  CHECK(*res.witness == PathWitness{0, 1, 2});
}

TEST_CASE("disconnected s and t") {
  auto inst = make(4, {{0, 1}, {2, 3}}, 0, 3, 4, 4);
  CHECK(!brute_force_solve(inst).answer);
}

TEST_CASE("size cap is enforced") {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < 25; ++v) edges.emplace_back(v, v + 1);
  auto inst = make(25, edges, 0, 24, 25, 0);
  CHECK_THROWS_AS(brute_force_solve(inst), std::invalid_argument);
  CHECK(brute_force_solve(inst, 30).answer);
}

TEST_CASE("multicolored clique on a triangle") {
  MccInstance mcc;
  mcc.graph = Graph::build(3, {{0, 1}, {0, 2}, {1, 2}});
  mcc.classes = {{0}, {1}, {2}};
  mcc.k = 3;
  auto res = brute_force_mcc(mcc);
  REQUIRE(res.answer);
  CHECK(*res.witness == std::vector<int>{0, 1, 2});
}

TEST_CASE("multicolored clique needs every cross pair") {
  MccInstance mcc;
  mcc.graph = Graph::build(4, {{0, 2}, {1, 3}, {2, 3}});
  mcc.classes = {{0, 1}, {2}, {3}};
  mcc.k = 3;
  CHECK(!brute_force_mcc(mcc).answer);
  MccInstance ok = mcc;
  ok.graph = Graph::build(4, {{0, 2}, {0, 3}, {1, 3}, {2, 3}});
  auto res = brute_force_mcc(ok);
  REQUIRE(res.answer);
  CHECK(*res.witness == std::vector<int>{0, 2, 3});
}

TEST_CASE("mcc validation") {
  MccInstance mcc;
  mcc.graph = Graph::build(2, {{0, 1}});
  mcc.classes = {{0}, {0}};
  mcc.k = 2;
  CHECK_THROWS_AS(brute_force_mcc(mcc), std::invalid_argument);
  mcc.classes = {{0}, {1}};
  mcc.k = 1;
  CHECK_THROWS_AS(brute_force_mcc(mcc), std::invalid_argument);
}
