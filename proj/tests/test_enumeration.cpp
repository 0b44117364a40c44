#include <doctest.h>

#include <set>

#include "oracles.hpp"

#include "steinergap/builtins.hpp"
#include "steinergap/canonical.hpp"
#include "steinergap/enumeration.hpp"
#include "steinergap/formulations.hpp"

using namespace steinergap;

TEST_CASE("PHI on (7,4) finds the two odd wheel classes") {
  EnumOptions o;
  o.with_gap = true;
  EnumResult r = run_phi(7, 4, o);
  REQUIRE(r.records.size() == 2);
  std::set<std::string> keys;
  for (const auto& rec : r.records) {
    CHECK(rec.gap == Rational(10, 9));
    CHECK(rec.spanning);
    CHECK(rec.has_source(Source::PHI));
    keys.insert(rec.key);
  }
  std::set<std::string> expected = {canonical_key(builtin("oddwheel-7-4-a").x, 4),
                                    canonical_key(builtin("oddwheel-7-4-b").x, 4)};
  CHECK(keys == expected);
}

TEST_CASE("PHI small rows") {
  CHECK(run_phi(6, 4).records.size() == 1);
  CHECK(run_phi(6, 5).records.size() == 7);
}

TEST_CASE("PHI rejects parameters without half-integer vertices before generating graphs") {
  CHECK_FALSE(phi_feasible(9, 4));
  CHECK(phi_feasible(8, 4));
  CHECK(phi_feasible(7, 4));
  EnumResult r = run_phi(9, 4);
  CHECK(r.records.empty());
  CHECK(r.stats.graphs == 0);
}

TEST_CASE("worker count does not change the result") {
  EnumOptions one;
  one.with_gap = true;
  EnumOptions four = one;
  four.jobs = 4;
  EnumResult a = run_phi(7, 5, one);
  EnumResult b = run_phi(7, 5, four);
  REQUIRE(a.records.size() == 46);
  REQUIRE(b.records.size() == a.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].key == b.records[i].key);
    CHECK(a.records[i].x == b.records[i].x);
    CHECK(a.records[i].gap == b.records[i].gap);
  }
}

TEST_CASE("checkpointed graphs are skipped") {
  EnumOptions o;
  std::set<std::string> done;
  o.on_graph_done = [&](const std::string& k) { done.insert(k); };
  EnumResult first = run_phi(7, 4, o);
  CHECK(static_cast<long>(done.size()) == first.stats.graphs);
  EnumOptions resume;
  resume.skip_graphs = done;
  EnumResult second = run_phi(7, 4, resume);
  CHECK(second.records.empty());
  CHECK(second.stats.skipped == first.stats.graphs);
}

TEST_CASE("records are streamed as they are found") {
  EnumOptions o;
  long streamed = 0;
  o.on_record = [&](const VertexRecord&) { ++streamed; };
  EnumResult r = run_phi(6, 5, o);
  CHECK(streamed >= static_cast<long>(r.records.size()));
  CHECK(r.stats.vertices == streamed);
}

TEST_CASE("quarter-integer filter accepts the 15-node point") {
  Builtin s = builtin("skutella");
  CHECK(pure_filter_failure(s.x, 8, 4).empty());
  CHECK(s.x.support().size() == 35);
  int indeg4 = 0;
  int indeg1 = 0;
  for (int v = 1; v < 15; ++v) {
    int arcs = 0;
    for (int u = 0; u < 15; ++u) {
      if (u != v && !s.x.at(u, v).is_zero()) ++arcs;
    }
    if (v < 8) {
      CHECK(s.x.inflow(v) == 1);
      indeg4 += arcs == 4;
    } else {
      indeg1 += arcs == 1;
    }
  }
  CHECK(indeg4 == 7);
  CHECK(indeg1 == 7);
  // a half-integer vertex fails the quarter filter
  CHECK_FALSE(pure_filter_failure(builtin("oddwheel-7-4-a").x, 4, 4).empty());
  CHECK(pure_filter_failure(builtin("oddwheel-7-4-a").x, 4, 2).empty());
}

TEST_CASE("POQ parameter checks") {
  CHECK(poq_feasible(15, 8));
  CHECK_FALSE(poq_feasible(5, 4));
  CHECK_THROWS_AS(run_poq(5, 4), std::invalid_argument);
  CHECK(run_poq(7, 5).records.empty());
}

TEST_CASE("make_record refuses points that are not vertices") {
  ConstraintSystem sys = build_polytope(Kind::CM, 7, 4, CutMode::Full);
  Builtin b = builtin("oddwheel-7-4-a");
  CHECK(make_record(b.x, 4, Kind::CM, Source::BUILTIN, sys, false).has_value());
  auto sols = integer_solutions(Kind::CM, 7, 4);
  ArcVector mid(7);
  for (int k = 0; k < mid.size(); ++k) mid[k] = (sols[0][k] + sols[1][k]) * Rational(1, 2);
  CHECK_FALSE(make_record(mid, 4, Kind::CM, Source::BUILTIN, sys, false).has_value());
}

TEST_CASE("exact enumeration of P_CM(4,3)") {
  EnumOptions o;
  o.with_gap = true;
  EnumResult r = run_exact(Kind::CM, 4, 3, o);
  CHECK(r.records.size() == 4);
  for (const auto& rec : r.records) {
    CHECK(rec.gap == 1);
    CHECK(rec.x.is_integral());
    CHECK(rec.key.rfind("L4:", 0) == 0);
  }
}

TEST_CASE("exact enumeration of P_BCR(4,3) returns its 257 integer points") {
  const int n = 4;
  const int t = 3;
  std::set<std::vector<Rational>> brute;
  for (int mask = 0; mask < (1 << num_arcs(n)); ++mask) {
    ArcVector x(n);
    for (int a = 0; a < num_arcs(n); ++a) x[a] = Rational((mask >> a) & 1);
    bool paired = true;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (x.at(i, j) + x.at(j, i) > 1) paired = false;
      }
    }
    if (paired && oracle::all_cuts_hold(x, t)) brute.insert(x.values());
  }
  CHECK(brute.size() == 257);
  EnumResult r = run_exact(Kind::BCR, n, t);
  std::set<std::vector<Rational>> found;
  for (const auto& rec : r.records) {
    CHECK(rec.x.is_integral());
    found.insert(rec.x.values());
  }
  CHECK(found == brute);
}
