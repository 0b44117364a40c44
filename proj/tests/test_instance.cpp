#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "steinergap/instance.hpp"
#include "steinergap/io.hpp"

using namespace steinergap;

TEST_CASE("one-two costs always satisfy the triangle inequality") {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 3 + iter % 6;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 2) edges.emplace_back(i, j);
      }
    }
    SteinerInstance inst = one_two_cost_instance(n, 2, edges);
    CHECK(validate_metric(inst).empty());
    for (auto [i, j] : edges) CHECK(inst.cost(i, j) == 1);
  }
}

TEST_CASE("validate_metric reports a violated triangle") {
  CostMatrix c = {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
  SteinerInstance inst(3, 2, c);
  auto v = validate_metric(inst);
  REQUIRE_FALSE(v.empty());
  CHECK(((v[0].i == 0 && v[0].j == 2) || (v[0].i == 2 && v[0].j == 0)));
  CHECK(v[0].k == 1);
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(SteinerInstance(2, 2, CostMatrix{{0, 1}, {2, 0}}), InstanceError);
  CHECK_THROWS_AS(SteinerInstance(2, 2, CostMatrix{{0, -1}, {-1, 0}}), InstanceError);
  CHECK_THROWS_AS(SteinerInstance(2, 2, CostMatrix{{1, 1}, {1, 0}}), InstanceError);
  CHECK_THROWS_AS(SteinerInstance(2, 3, CostMatrix{{0, 1}, {1, 0}}), InstanceError);
}

TEST_CASE("metric closure equals Bellman-Ford distances") {
  std::mt19937 rng(5);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 7;
    auto w = oracle::random_sparse(n, iter % 8, rng);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (w[i][j] >= 0) edges.push_back({i, j, Rational(static_cast<long long>(w[i][j]))});
      }
    }
    SteinerInstance c = metric_closure(n, 3, edges);
    auto d = oracle::bellman_ford(w);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) CHECK(c.cost(i, j) == Rational(static_cast<long long>(d[i][j])));
    }
    CHECK(validate_metric(c).empty());
    SteinerInstance again = metric_closure(c);
    CHECK(again.matrix() == c.matrix());
  }
}

TEST_CASE("metric closure of a disconnected graph names a separated pair") {
  std::vector<WeightedEdge> edges = {{0, 1, 1}, {2, 3, 1}};
  CHECK_THROWS_AS(metric_closure(4, 2, edges), InstanceError);
}

TEST_CASE("instance json uses one-based ids and relabels the root first") {
  json j = json::parse(R"({"n":4,"terminals":[2,4],"root":4,
    "costs":[[0,1,2,2],[1,0,1,2],[2,1,0,1],[2,2,1,0]]})");
  SteinerInstance inst = instance_from_json(j);
  CHECK(inst.n() == 4);
  CHECK(inst.t() == 2);
  // old node 4 is the root, old node 2 the terminal
  CHECK(inst.cost(0, 1) == 2);
  SteinerInstance back = instance_from_json(instance_to_json(inst));
  CHECK(back.matrix() == inst.matrix());
}

TEST_CASE("point json round trip") {
  ArcVector x(4);
  x.set(0, 3, Rational(1, 2));
  x.set(3, 1, 1);
  PointFile p = point_from_json(point_to_json(x, 3));
  CHECK(p.t == 3);
  CHECK(p.x == x);
}
