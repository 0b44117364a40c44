#pragma once

#include <string>
#include <vector>

#include "steinergap/point.hpp"

namespace steinergap {

struct SupportArc {
  int from;
  int to;
  Rational weight;
};

// Digraph induced by the nonzero coordinates of a point. Node ids are the
// original 0-based ids; isolated nodes are dropped.
struct SupportGraph {
  int n = 0;
  int t = 0;
  std::vector<int> nodes;
  std::vector<SupportArc> arcs;

  NodeRole role(int v) const {
    return v == 0 ? NodeRole::Root : (v < t ? NodeRole::Terminal : NodeRole::Steiner);
  }
  bool spanning() const { return static_cast<int>(nodes.size()) == n; }
};

SupportGraph support_graph(const ArcVector& x, int t);

// Connected after forgetting arc directions.
bool weakly_connected(const SupportGraph& g);

// Graphviz rendering: roots and terminals as circles, Steiner nodes as
// boxes, arc weights as edge labels. Nodes are printed 1-based.
std::string to_dot(const SupportGraph& g, const std::string& name = "vertex");

}  // namespace steinergap
