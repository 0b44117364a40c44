#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "steinergap/formulations.hpp"
#include "steinergap/simplex.hpp"
#include "steinergap/steiner.hpp"
#include "steinergap/support.hpp"

using namespace steinergap;

namespace {

std::map<RowKind, int> row_counts(const ConstraintSystem& s) {
  std::map<RowKind, int> m;
  for (const auto& r : s.rows()) ++m[r.tag.kind];
  return m;
}

std::vector<Rational> random_costs(int n, std::mt19937& rng, int lo = 1, int hi = 20) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Rational> e(static_cast<std::size_t>(num_edges(n)));
  for (auto& c : e) c = d(rng);
  std::vector<Rational> a(static_cast<std::size_t>(num_arcs(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) a[static_cast<std::size_t>(arc_index(n, i, j))] = e[static_cast<std::size_t>(edge_index(n, i, j))];
    }
  }
  return a;
}

Rational lp_value(const ConstraintSystem& sys, const std::vector<Rational>& c) {
  LinearProgram lp{sys, c, {}};
  LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  return s.value;
}

}  // namespace

TEST_CASE("row counts of CM(4,3)") {
  ConstraintSystem s = build_polytope(Kind::CM, 4, 3, CutMode::Full);
  auto m = row_counts(s);
  CHECK(s.num_vars() == 12);
  CHECK(m[RowKind::BoxLower] + m[RowKind::BoxUpper] == 24);
  CHECK(m[RowKind::Cut] == 6);
  CHECK(m[RowKind::RootInflow] == 1);
  CHECK(m[RowKind::Inflow] == 3);
  CHECK(m[RowKind::Balance] == 1);
  CHECK(s.size() == 35);
}

TEST_CASE("cut family sizes") {
  CHECK(enumerate_cuts(20, 5, false).sets.size() == 491520);
  CHECK(enumerate_cuts(20, 5, true).sets.size() == 8640);
  // full family by formula: subsets of V - r minus those without a terminal
  for (int n = 3; n <= 9; ++n) {
    for (int t = 2; t <= n; ++t) {
      std::size_t expected = (std::size_t{1} << (n - 1)) - (std::size_t{1} << (n - t));
      CHECK(enumerate_cuts(n, t, false).sets.size() == expected);
    }
  }
  CHECK(reduced_cuts_valid(20, 5));
  CHECK_FALSE(reduced_cuts_valid(7, 5));
}

TEST_CASE("three-cycle example separates SJ from CM") {
  ArcVector x(5);
  x.set(0, 1, 1);
  x.set(2, 3, 1);
  x.set(3, 4, 1);
  x.set(4, 2, 1);
  CHECK(build_polytope(Kind::SJ, 5, 2).feasible(x.values()));
  CHECK_FALSE(build_polytope(Kind::CM, 5, 2).feasible(x.values()));
  CHECK_FALSE(weakly_connected(support_graph(x, 2)));
}

TEST_CASE("min-cut separation agrees with checking every cut") {
  std::mt19937 rng(31);
  int violated = 0;
  int held = 0;
  for (int iter = 0; iter < 120; ++iter) {
    int n = 4 + iter % 4;
    int t = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    auto sols = integer_solutions(Kind::CM, n, t);
    ArcVector x(n);
    const ArcVector& a = sols[rng() % sols.size()];
    const ArcVector& b = sols[rng() % sols.size()];
    for (int k = 0; k < x.size(); ++k) x[k] = (a[k] + b[k]) * Rational(1, 2);
    if (iter % 2) {
      auto sup = x.support();
      int k = sup[rng() % sup.size()];
      x[k] = x[k] * Rational(1, 3);
    }
    bool ok = oracle::all_cuts_hold(x, t);
    auto w = separate_cut(x, t);
    CHECK(ok == !w.has_value());
    if (w) {
      CHECK(ConstraintSystem::satisfied(cut_row(n, *w), x.values()) == false);
      ++violated;
    } else {
      ++held;
    }
  }
  CHECK(violated >= 20);
  CHECK(held >= 20);
}

TEST_CASE("integer solutions match a scan of all 0/1 vectors") {
  for (Kind kind : {Kind::BCR, Kind::SJ, Kind::CM}) {
    for (int t = 2; t <= 4; ++t) {
      const int n = 4;
      ConstraintSystem sys = build_polytope(kind, n, t, CutMode::Full);
      std::set<std::vector<Rational>> brute;
      for (std::uint32_t m = 0; m < (1U << 12); ++m) {
        std::vector<Rational> x(12);
        for (int k = 0; k < 12; ++k) x[static_cast<std::size_t>(k)] = (m >> k) & 1U ? 1 : 0;
        if (sys.feasible(x)) brute.insert(x);
      }
      std::set<std::vector<Rational>> listed;
      long emitted = 0;
      for_each_integer_solution(kind, n, t, [&](const ArcVector& x) {
        ++emitted;
        listed.insert(x.values());
      });
      CHECK(emitted == static_cast<long>(listed.size()));
      CHECK(listed == brute);
    }
  }
  CHECK(integer_solutions(Kind::CM, 4, 3).size() == 4);
}

TEST_CASE("CM integer solutions are trees within the arc bound") {
  for (int n = 3; n <= 6; ++n) {
    for (int t = 2; t <= n; ++t) {
      long count = 0;
      for_each_integer_solution(Kind::CM, n, t, [&](const ArcVector& x) {
        ++count;
        int arcs = static_cast<int>(x.support().size());
        CHECK(arcs <= std::min(n - 1, 2 * t - 3));
        SupportGraph g = support_graph(x, t);
        CHECK(weakly_connected(g));
        CHECK(arcs == static_cast<int>(g.nodes.size()) - 1);
        for (int v = 1; v < t; ++v) CHECK(x.inflow(v) == 1);
        for (int v = t; v < n; ++v) {
          if (x.inflow(v) == 1) CHECK(x.outflow(v) >= 2);
        }
      });
      CHECK(count > 0);
    }
  }
}

TEST_CASE("every feasible CM point has connected support") {
  std::mt19937 rng(37);
  int cases = 0;
  for (int iter = 0; iter < 30; ++iter) {
    int n = 5 + iter % 2;
    int t = 3 + static_cast<int>(rng() % static_cast<unsigned>(n - 3));
    auto c1 = random_costs(n, rng);
    auto c2 = random_costs(n, rng);
    PolytopeLp a = solve_polytope_lp(Kind::CM, n, t, c1);
    PolytopeLp b = solve_polytope_lp(Kind::CM, n, t, c2);
    REQUIRE(a.solution.status == LpStatus::Optimal);
    REQUIRE(b.solution.status == LpStatus::Optimal);
    ArcVector mid(n);
    for (int k = 0; k < mid.size(); ++k) mid[k] = (a.x[k] * 3 + b.x[k]) * Rational(1, 4);
    for (const ArcVector* p : {&a.x, &b.x, &mid}) {
      CHECK(!separate_cut(*p, t));
      CHECK(build_polytope(Kind::CM, n, t, CutMode::None).feasible(p->values()));
      CHECK(weakly_connected(support_graph(*p, t)));
      ++cases;
    }
  }
  CHECK(cases >= 50);
}

TEST_CASE("no-flow-generation rows do not change the BCR optimum for positive costs") {
  std::mt19937 rng(41);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 4 + iter % 3;
    int t = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 2));
    ConstraintSystem bcr = build_polytope(Kind::BCR, n, t, CutMode::Full);
    ConstraintSystem extended = bcr;
    ConstraintSystem sj = build_polytope(Kind::SJ, n, t, CutMode::None);
    for (const auto& r : sj.rows()) {
      if (r.tag.kind == RowKind::InOutArc) extended.add(r);
    }
    REQUIRE(extended.size() > bcr.size());
    auto c = random_costs(n, rng);
    CHECK(lp_value(bcr, c) == lp_value(extended, c));
  }
}

TEST_CASE("multi-commodity flow and BCR have the same LP optimum") {
  std::mt19937 rng(43);
  for (int iter = 0; iter < 50; ++iter) {
    const int n = 5;
    const int t = 3;
    auto c = random_costs(n, rng);
    ConstraintSystem mcf = build_mcf(n, t);
    std::vector<Rational> obj(static_cast<std::size_t>(mcf.num_vars()));
    std::copy(c.begin(), c.end(), obj.begin());
    Rational bcr = lp_value(build_polytope(Kind::BCR, n, t, CutMode::Full), c);
    CHECK(lp_value(mcf, obj) == bcr);
  }
}

TEST_CASE("SJ and CM integer optima coincide under strict triangle costs") {
  std::mt19937 rng(47);
  for (int iter = 0; iter < 50; ++iter) {
    const int n = 5;
    int t = 2 + iter % 3;
    auto c = random_costs(n, rng, 10, 19);  // any two edges outweigh a third
    auto best = [&](Kind k) {
      std::optional<Rational> v;
      for_each_integer_solution(k, n, t, [&](const ArcVector& x) {
        Rational s;
        for (int a : x.support()) s += c[static_cast<std::size_t>(a)];
        if (!v || s < *v) v = s;
      });
      return *v;
    };
    CHECK(best(Kind::SJ) == best(Kind::CM));
  }
}
