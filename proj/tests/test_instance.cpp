#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "secluded/instance.hpp"
#include "secluded/oracle.hpp"

using namespace ssp;

namespace {

SspInstance triangle(int64_t k, int64_t l) {
  SspInstance inst;
  inst.graph = Graph::build(3, {{0, 1}, {0, 2}, {1, 2}});
  inst.s = 0;
  inst.t = 2;
  inst.k = k;
  inst.l = l;
  return inst;
}

}  // namespace

TEST_CASE("validate rejects broken instances") {
  SspInstance inst = triangle(3, 0);
  inst.t = 0;
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst = triangle(1, 0);
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst = triangle(3, -1);
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  VwSspInstance vw = lift(triangle(3, 0));
  vw.kappa[1] = 0;
  CHECK_THROWS_AS(vw.validate(), std::invalid_argument);
}

TEST_CASE("lift uses unit weights") {
  VwSspInstance vw = lift(triangle(3, 1));
  CHECK(vw.kappa == std::vector<int64_t>{1, 1, 1});
  CHECK(vw.lambda == std::vector<int64_t>{1, 1, 1});
  CHECK(vw.eta == std::vector<int64_t>{0, 0, 0});
}

TEST_CASE("evaluate_path prices the direct triangle edge") {
  VwSspInstance vw = lift(triangle(2, 1));
  PathCost pc = evaluate_path(vw, {0, 2});
  CHECK(pc.cost == 2);
  CHECK(pc.load == 1);  // the third corner stays a neighbor
}

TEST_CASE("evaluate_path adds inner kappa on a 4-path") {
  SspInstance inst;
  inst.graph = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}});
  inst.s = 0;
  inst.t = 3;
  inst.k = 6;
  inst.l = 0;
  VwSspInstance vw = lift(inst);
  vw.kappa[1] = 3;
  PathCost pc = evaluate_path(vw, {0, 1, 2, 3});
  CHECK(pc.cost == 6);
  CHECK(pc.load == 0);
}

TEST_CASE("evaluate_path rejects invalid witnesses") {
  VwSspInstance vw = lift(triangle(3, 1));
  CHECK_THROWS_AS(evaluate_path(vw, {}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_path(vw, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_path(vw, {2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_path(vw, {0, 1, 0, 2}), std::invalid_argument);
  SspInstance pp;
  pp.graph = Graph::build(4, {{0, 1}, {2, 3}});
  pp.s = 0;
  pp.t = 3;
  pp.k = 4;
  pp.l = 0;
  CHECK_THROWS_AS(evaluate_path(lift(pp), {0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("lifted instances are expandable as-is") {
  VwSspInstance vw = lift(triangle(3, 0));
  CHECK(is_simple_instance(vw, VertexSet(3)));
  auto expanded = expand_to_ssp(vw, VertexSet(3));
  CHECK(expanded.graph.n == 3);
  CHECK(expanded.graph.m() == 3);
}

TEST_CASE("expansion turns kappa into path length and eta into pendants") {
  // path s-u-a-w-t, kappa(a)=3, eta(u)=2: expansion has 5-1+3+2 = 9 vertices
  SspInstance base;
  base.graph = Graph::build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  base.s = 0;
  base.t = 4;
  base.k = 7;
  base.l = 2;
  VwSspInstance vw = lift(base);
  vw.kappa[2] = 3;
  vw.eta[1] = 2;
  VertexSet none(5);
  REQUIRE(is_simple_instance(vw, none));
  CHECK(expansion_size(vw, none) == 9);

  std::vector<int> origin;
  SspInstance expanded = expand_to_ssp(vw, none, &origin);
  CHECK(expanded.graph.n == 9);
  CHECK(origin.size() == 9);

  auto before = brute_force_solve(vw);
  auto after = brute_force_solve(lift(expanded));
  REQUIRE(before.answer);
  REQUIRE(after.answer);
  CHECK(*before.min_cost == 7);
  CHECK(*after.min_cost == 7);
  CHECK(*before.load_at_min == 2);
  CHECK(*after.load_at_min == 2);

  // tightening the exposure budget kills both sides alike
  vw.l = 1;
  SspInstance expanded2 = expand_to_ssp(vw, none);
  expanded2.l = 1;
  CHECK(!brute_force_solve(vw).answer);
  CHECK(!brute_force_solve(lift(expanded2)).answer);
}

TEST_CASE("normalize splits heavy-lambda markers into unit twins") {
  // star around 1 with lambda(3) = 3 but kappa(3) > k: 3 becomes three twins
  SspInstance base;
  base.graph = Graph::build(4, {{0, 1}, {1, 2}, {1, 3}});
  base.s = 0;
  base.t = 2;
  base.k = 3;
  base.l = 4;
  VwSspInstance vw = lift(base);
  vw.lambda[3] = 3;
  vw.kappa[3] = 4;  // above k, never on a path
  auto [norm, marks] = normalize_for_expansion(vw, VertexSet(4));
  CHECK(norm.graph.n == 6);
  CHECK(marks.size() == 3);
  CHECK(is_simple_instance(norm, marks));

  auto before = brute_force_solve(vw);
  auto after = brute_force_solve(norm);
  REQUIRE(before.answer == after.answer);
  CHECK(*before.min_cost == *after.min_cost);
  CHECK(*before.load_at_min == *after.load_at_min);

  // usable vertices with lambda != 1 cannot be rewritten
  vw.kappa[3] = 2;
  CHECK_THROWS_AS(normalize_for_expansion(vw, VertexSet(4)),
                  std::invalid_argument);
}

TEST_CASE("marker vertices survive expansion with a pendant shield") {
  // path s-a-t with marker m adjacent to a; eta(m) = l+1 keeps m off every path
  SspInstance base;
  base.graph = Graph::build(4, {{0, 1}, {1, 2}, {1, 3}});
  base.s = 0;
  base.t = 2;
  base.k = 3;
  base.l = 2;
  VwSspInstance vw = lift(base);
  vw.eta[3] = 3;
  VertexSet marks(4);
  marks.insert(3);
  REQUIRE(is_simple_instance(vw, marks));
  SspInstance expanded = expand_to_ssp(vw, marks);
  CHECK(expanded.graph.n == 4 + 3);  // three pendants on the marker

  auto before = brute_force_solve(vw);
  auto after = brute_force_solve(lift(expanded));
  CHECK(before.answer == after.answer);
  CHECK(*before.min_cost == *after.min_cost);
  CHECK(*before.load_at_min == *after.load_at_min);
}
