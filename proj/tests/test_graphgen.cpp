#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "steinergap/builtins.hpp"
#include "steinergap/canonical.hpp"
#include "steinergap/graphgen.hpp"

using namespace steinergap;

namespace {

long count(const GenSpec& s) {
  long c = 0;
  gen_graphs(s, [&](const SimpleGraph&) { ++c; });
  return c;
}

std::string undirected_key(const SimpleGraph& g) {
  std::vector<std::pair<int, int>> e = g.edges();
  return canonical_form(labeled_from_edges(g.n, e)).certificate;
}

}  // namespace

TEST_CASE("number of unlabeled graphs on up to 7 nodes") {
  std::vector<long> all = {1, 2, 4, 11, 34, 156, 1044};
  std::vector<long> connected = {1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 7; ++n) {
    GenSpec s;
    s.n = n;
    s.min_edges = 0;
    s.max_edges = n * (n - 1) / 2;
    s.connected = false;
    CHECK(count(s) == all[n - 1]);
    s.connected = true;
    CHECK(count(s) == connected[n - 1]);
  }
}

TEST_CASE("generator matches labeled brute force on 6 nodes and 8 edges") {
  const int n = 6;
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  std::set<std::string> brute;
  for (std::uint32_t m = 0; m < (1U << slots.size()); ++m) {
    if (__builtin_popcount(m) != 8) continue;
    SimpleGraph g(n);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if ((m >> k) & 1U) g.add(slots[k].first, slots[k].second);
    }
    if (!g.connected()) continue;
    bool ok = true;
    for (int v = 0; v < n; ++v) ok = ok && g.degree(v) >= 2;
    if (ok) brute.insert(undirected_key(g));
  }
  GenSpec s;
  s.n = n;
  s.min_edges = 8;
  s.max_edges = 8;
  s.min_degree = 2;
  std::set<std::string> generated;
  long emitted = 0;
  gen_graphs(s, [&](const SimpleGraph& g) {
    ++emitted;
    generated.insert(undirected_key(g));
  });
  CHECK(emitted == static_cast<long>(generated.size()));
  CHECK(generated == brute);
}

TEST_CASE("odd wheel support appears among the 9-edge graphs on 7 nodes") {
  Builtin b = builtin("oddwheel-7-4-a");
  SimpleGraph w(7);
  for (int a : b.x.support()) {
    auto [i, j] = arc_ends(7, a);
    w.add(i, j);
  }
  std::string target = undirected_key(w);
  GenSpec s;
  s.n = 7;
  s.min_edges = 9;
  s.max_edges = 9;
  s.min_degree = 2;
  s.max_degree2 = 4;
  bool found = false;
  gen_graphs(s, [&](const SimpleGraph& g) { found = found || undirected_key(g) == target; });
  CHECK(found);
}

namespace {

std::string digraph_key(int n, const ArcList& arcs) {
  LabeledGraph g(n);
  for (auto [a, b] : arcs) g.set(a, b, 1);
  return canonical_form(g).certificate;
}

// Orientation classes by brute force over all 2^m single-direction choices.
std::set<std::string> brute_orientations(const SimpleGraph& g, int max_indegree) {
  std::set<std::string> out;
  auto e = g.edges();
  for (std::uint32_t m = 0; m < (1U << e.size()); ++m) {
    std::vector<int> indeg(static_cast<std::size_t>(g.n), 0);
    ArcList arcs;
    for (std::size_t k = 0; k < e.size(); ++k) {
      auto [a, b] = e[k];
      if ((m >> k) & 1U) std::swap(a, b);
      arcs.emplace_back(a, b);
      ++indeg[static_cast<std::size_t>(b)];
    }
    bool ok = true;
    for (int d : indeg) ok = ok && d <= max_indegree;
    if (ok) out.insert(digraph_key(g.n, arcs));
  }
  return out;
}

std::set<std::string> generated_orientations(const SimpleGraph& g, int max_indegree) {
  OrientSpec s;
  s.max_indegree = max_indegree;
  std::set<std::string> out;
  long emitted = 0;
  gen_orientations(g, s, [&](const ArcList& arcs) {
    ++emitted;
    out.insert(digraph_key(g.n, arcs));
  });
  CHECK(emitted == static_cast<long>(out.size()));
  return out;
}

}  // namespace

TEST_CASE("triangle orientations with indegree at most 2") {
  SimpleGraph g(3);
  g.add(0, 1);
  g.add(1, 2);
  g.add(0, 2);
  auto brute = brute_orientations(g, 2);
  CHECK(brute.size() == 2);
  CHECK(generated_orientations(g, 2) == brute);
}

TEST_CASE("star orientations with indegree at most 1") {
  SimpleGraph g(4);
  g.add(0, 1);
  g.add(0, 2);
  g.add(0, 3);
  auto brute = brute_orientations(g, 1);
  CHECK(brute.size() == 2);
  CHECK(generated_orientations(g, 1) == brute);
}

TEST_CASE("orientation classes match brute force on random small graphs") {
  std::mt19937 rng(29);
  int cases = 0;
  while (cases < 50) {
    int n = 4 + static_cast<int>(rng() % 3);
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 2) g.add(i, j);
      }
    }
    if (g.num_edges() == 0 || g.num_edges() > 11) continue;
    int d = 1 + static_cast<int>(rng() % 2);
    CHECK(generated_orientations(g, d) == brute_orientations(g, d));
    ++cases;
  }
}
