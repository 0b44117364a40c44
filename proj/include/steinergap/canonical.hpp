#pragma once

#include <string>
#include <vector>

#include "steinergap/point.hpp"

namespace steinergap {

// Vertex-colored directed graph with integer arc labels (0 = no arc).
struct LabeledGraph {
  int n = 0;
  std::vector<int> color;
  std::vector<int> label;  // row-major n*n

  LabeledGraph() = default;
  explicit LabeledGraph(int nodes)
      : n(nodes),
        color(static_cast<std::size_t>(nodes), 0),
        label(static_cast<std::size_t>(nodes * nodes), 0) {}

  int at(int i, int j) const { return label[static_cast<std::size_t>(i * n + j)]; }
  void set(int i, int j, int l) { label[static_cast<std::size_t>(i * n + j)] = l; }
};

struct CanonicalForm {
  std::vector<int> order;   // order[p] = vertex placed at canonical position p
  std::string certificate;  // equal iff the graphs are isomorphic
  std::vector<std::vector<int>> automorphisms;  // generators found on the way
};

CanonicalForm canonical_form(const LabeledGraph& g);

// Isomorphism-invariant key of the support graph of x: active nodes only,
// node roles as colors, arc weights as labels.
std::string canonical_key(const ArcVector& x, int t);

// Undirected view of an edge list, single color unless colors are given.
LabeledGraph labeled_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<int>& colors = {});

}  // namespace steinergap
