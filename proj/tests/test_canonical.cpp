#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "steinergap/builtins.hpp"
#include "steinergap/canonical.hpp"
#include "steinergap/support.hpp"

using namespace steinergap;

TEST_CASE("odd wheel support graph") {
  Builtin b = builtin("oddwheel-7-4-a");
  SupportGraph g = support_graph(b.x, b.t);
  CHECK(g.arcs.size() == 9);
  CHECK(g.spanning());
  for (const auto& a : g.arcs) CHECK(a.weight == Rational(1, 2));
  CHECK(weakly_connected(g));
  std::string dot = to_dot(g, "w");
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("1/2") != std::string::npos);
}

TEST_CASE("the (7,4) vertices fall into two isomorphism classes") {
  std::string a = canonical_key(builtin("oddwheel-7-4-a").x, 4);
  std::string b = canonical_key(builtin("oddwheel-7-4-b").x, 4);
  std::string c = canonical_key(builtin("oddwheel-7-4-c").x, 4);
  std::string d = canonical_key(builtin("oddwheel-7-4-d").x, 4);
  CHECK(b == c);
  CHECK(b == d);
  CHECK(a != b);
}

TEST_CASE("canonical key is invariant under role-preserving relabeling") {
  std::mt19937 rng(17);
  std::vector<std::string> names = {"oddwheel-7-4-a", "oddwheel-7-4-b", "fig3-a", "fig3-c", "fig5-a",
                                    "fig5-d", "fig5-f", "fig5-i"};
  int cases = 0;
  for (const auto& name : names) {
    Builtin b = builtin(name);
    std::string key = canonical_key(b.x, b.t);
    for (int k = 0; k < 10; ++k) {
      CHECK(canonical_key(oracle::relabel(b.x, b.t, rng), b.t) == key);
      ++cases;
    }
  }
  CHECK(cases >= 50);
}

TEST_CASE("canonical key equality matches brute-force isomorphism") {
  std::mt19937 rng(23);
  const int n = 5;
  const int t = 3;
  std::vector<ArcVector> pts;
  for (int k = 0; k < 30; ++k) {
    ArcVector x(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && j != 0 && rng() % 4 == 0) x.set(i, j, Rational(1 + static_cast<int>(rng() % 2), 2));
      }
    }
    for (int i = 1; i < n; ++i) x.set(0, i, 1);  // every node active
    pts.push_back(x);
    pts.push_back(oracle::relabel(x, t, rng));
  }
  int pairs = 0;
  for (std::size_t i = 0; i < pts.size(); i += 3) {
    for (std::size_t j = i + 1; j < pts.size(); j += 2) {
      bool iso = oracle::isomorphic(pts[i], pts[j], t);
      CHECK((canonical_key(pts[i], t) == canonical_key(pts[j], t)) == iso);
      ++pairs;
    }
  }
  CHECK(pairs >= 50);
}

TEST_CASE("canonical form handles regular graphs") {
  // Petersen graph against a relabeled copy and against the 5-prism
  std::vector<std::pair<int, int>> pet = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                          {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  std::vector<std::pair<int, int>> prism = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                            {3, 8}, {4, 9}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 5}};
  std::vector<int> p = {3, 7, 1, 9, 0, 4, 8, 2, 6, 5};
  std::vector<std::pair<int, int>> pet2;
  for (auto [a, b] : pet) pet2.emplace_back(p[a], p[b]);
  auto c1 = canonical_form(labeled_from_edges(10, pet)).certificate;
  auto c2 = canonical_form(labeled_from_edges(10, pet2)).certificate;
  auto c3 = canonical_form(labeled_from_edges(10, prism)).certificate;
  CHECK(c1 == c2);
  CHECK(c1 != c3);
}
