#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "steinergap/builtins.hpp"
#include "steinergap/formulations.hpp"
#include "steinergap/io.hpp"
#include "steinergap/simplex.hpp"
#include "steinergap/steiner.hpp"
#include "steinergap/vertex.hpp"

using namespace steinergap;

namespace {

std::vector<std::pair<int, int>> support_edges(const ArcVector& x) {
  std::vector<std::pair<int, int>> e;
  for (int a : x.support()) e.push_back(arc_ends(x.n(), a));
  return e;
}

Rational cost_of(const ArcVector& x, const std::vector<Rational>& c) {
  Rational s;
  for (int a : x.support()) s += x[a] * c[static_cast<std::size_t>(a)];
  return s;
}

}  // namespace

TEST_CASE("Dreyfus-Wagner agrees with subset MST brute force") {
  std::mt19937 rng(53);
  for (int iter = 0; iter < 100; ++iter) {
    int n = 3 + iter % 6;
    int t = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    auto w = oracle::random_complete(n, rng);
    SteinerInstance inst(n, t, oracle::to_costs(w));
    SteinerTree tree = stp_exact(inst);
    CHECK(tree.cost == Rational(static_cast<long long>(*oracle::stp_subset_mst(w, t))));
    CHECK(stp_bruteforce(inst) == tree.cost);
    Rational sum;
    for (auto [i, j] : tree.arcs) sum += inst.cost(i, j);
    CHECK(sum == tree.cost);
    ArcVector x = tree.point(n);
    CHECK(!separate_cut(x, t));
  }
}

TEST_CASE("one-two costs of an integer CM solution price it at its arc count") {
  for (const ArcVector& x : integer_solutions(Kind::CM, 5, 4)) {
    auto edges = support_edges(x);
    SteinerInstance inst = one_two_cost_instance(5, 4, edges);
    oracle::Weights w(5, std::vector<long>(5));
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) w[i][j] = inst.cost(i, j).small_num();
    }
    CHECK(*oracle::stp_subset_mst(w, 4) == static_cast<long>(edges.size()));
    CHECK(stp_exact(inst).cost == static_cast<long>(edges.size()));
  }
}

TEST_CASE("path construction uses 2t-3 cost-1 edges") {
  for (int t = 3; t <= 7; ++t) {
    ArcVector x = path_2t3(t);
    CHECK(x.n() == 2 * t - 2);
    CHECK(static_cast<int>(x.support().size()) == 2 * t - 3);
    CHECK(x.is_integral());
    CHECK(build_polytope(Kind::CM, x.n(), t, CutMode::None).feasible(x.values()));
    CHECK(!separate_cut(x, t));
    SteinerInstance inst = one_two_cost_instance(x.n(), t, support_edges(x));
    CHECK(stp_exact(inst).cost == 2 * t - 3);
  }
  CHECK(path_2t3(5).support().size() == 7);
}

TEST_CASE("integer CM solutions are the unique optimum of their one-two costs") {
  long cases = 0;
  for (int n = 3; n <= 6; ++n) {
    for (int t = 2; t <= n; ++t) {
      auto sols = integer_solutions(Kind::CM, n, t);
      for (const ArcVector& x : sols) {
        SteinerInstance inst = one_two_cost_instance(n, t, support_edges(x));
        auto c = arc_costs(inst);
        Rational value = cost_of(x, c);
        CHECK(value == static_cast<long>(x.support().size()));
        CHECK(stp_exact(inst).cost == value);
        int attaining = 0;
        for (const ArcVector& y : sols) {
          Rational v = cost_of(y, c);
          CHECK(v >= value);
          if (v == value) ++attaining;
        }
        CHECK(attaining == 1);
        ++cases;
      }
    }
  }
  CHECK(cases >= 50);
}

TEST_CASE("the LP of a one-two instance built from a CM solution returns that solution") {
  long cases = 0;
  for (int n = 4; n <= 6; ++n) {
    for (int t = 2; t <= n; ++t) {
      for (const ArcVector& x : integer_solutions(Kind::CM, n, t)) {
        SteinerInstance inst = one_two_cost_instance(n, t, support_edges(x));
        PolytopeLp lp = solve_polytope_lp(Kind::CM, n, t, arc_costs(inst));
        REQUIRE(lp.solution.status == LpStatus::Optimal);
        CHECK(lp.x == x);
        if (++cases >= 400) return;
      }
    }
  }
}

TEST_CASE("the odd wheel one-two instance has a strict LP gap") {
  Builtin b = builtin("oddwheel-7-4-a");
  std::vector<std::pair<int, int>> edges;
  for (int a : b.x.support()) edges.push_back(arc_ends(7, a));
  SteinerInstance inst = one_two_cost_instance(7, 4, edges);
  CHECK(lp_optimum(Kind::CM, inst) < stp_exact(inst).cost);
}

TEST_CASE("fig5-d is not optimal for its own one-two costs") {
  Builtin b = builtin("fig5-d");
  SteinerInstance inst = one_two_cost_instance(8, 5, support_edges(b.x));
  CHECK(cost_of(b.x, arc_costs(inst)) == Rational(11, 2));
  CHECK(lp_optimum(Kind::CM, inst) == 5);
  CHECK(stp_exact(inst).cost == 5);
  // raising the two root edges to cost 2 makes it optimal
  auto edges = support_edges(b.x);
  std::vector<std::pair<int, int>> kept;
  for (auto e : edges) {
    if (e.first != 0 && e.second != 0) kept.push_back(e);
  }
  CHECK(kept.size() == edges.size() - 2);
  SteinerInstance raised = one_two_cost_instance(8, 5, kept);
  CHECK(lp_optimum(Kind::CM, raised) == cost_of(b.x, arc_costs(raised)));
}

TEST_CASE("Steiner and BCR optima are unchanged by metric closure") {
  std::mt19937 rng(59);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 4 + iter % 4;
    int t = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 2));
    auto w = oracle::random_sparse(n, static_cast<int>(rng() % 5), rng);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (w[i][j] >= 0) edges.push_back({i, j, Rational(static_cast<long long>(w[i][j]))});
      }
    }
    SteinerInstance closure = metric_closure(n, t, edges);
    CHECK(stp_exact(closure).cost == Rational(static_cast<long long>(*oracle::stp_subset_mst(w, t))));

    // BCR on the sparse graph: absent arcs fixed at zero
    ConstraintSystem sparse = build_polytope(Kind::BCR, n, t, CutMode::Full);
    std::vector<Rational> c(static_cast<std::size_t>(num_arcs(n)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int a = arc_index(n, i, j);
        if (w[i][j] < 0) {
          Row r;
          r.coef.emplace_back(a, 1);
          r.rel = Relation::LessEq;
          r.rhs = 0;
          sparse.add(r);
        } else {
          c[static_cast<std::size_t>(a)] = Rational(static_cast<long long>(w[i][j]));
        }
      }
    }
    LpSolution s = solve_lp(LinearProgram{sparse, c, {}});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(lp_optimum(Kind::BCR, closure) == s.value);
  }
}

TEST_CASE("BCR optimum does not depend on the root") {
  std::mt19937 rng(61);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 4 + iter % 3;
    int t = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    auto w = oracle::bellman_ford(oracle::random_complete(n, rng));
    CostMatrix c = oracle::to_costs(w);
    std::vector<int> terminals(static_cast<std::size_t>(t));
    for (int v = 0; v < t; ++v) terminals[static_cast<std::size_t>(v)] = v;
    Rational first = lp_optimum(Kind::BCR, SteinerInstance::with_roles(c, terminals, 0));
    for (int r = 1; r < t; ++r) CHECK(lp_optimum(Kind::BCR, SteinerInstance::with_roles(c, terminals, r)) == first);
  }
}

TEST_CASE("BCR optimum equals the best enumerated vertex") {
  auto verts = enumerate_vertices(build_polytope(Kind::BCR, 4, 3, CutMode::Full));
  REQUIRE(verts.size() >= 256);
  std::mt19937 rng(67);
  for (int iter = 0; iter < 20; ++iter) {
    auto w = oracle::bellman_ford(oracle::random_complete(4, rng));
    SteinerInstance inst(4, 3, oracle::to_costs(w));
    auto c = arc_costs(inst);
    std::optional<Rational> best;
    for (const auto& v : verts) {
      Rational s;
      for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * v[k];
      if (!best || s < *best) best = s;
    }
    CHECK(lp_optimum(Kind::BCR, inst) == *best);
  }
}
