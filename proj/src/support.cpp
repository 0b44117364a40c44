#include "steinergap/support.hpp"

#include <numeric>
#include <sstream>

namespace steinergap {

SupportGraph support_graph(const ArcVector& x, int t) {
  SupportGraph g;
  g.n = x.n();
  g.t = t;
  auto active = x.active_nodes();
  for (int v = 0; v < g.n; ++v) {
    if (active[static_cast<std::size_t>(v)]) g.nodes.push_back(v);
  }
  for (int a : x.support()) {
    auto [i, j] = arc_ends(g.n, a);
    g.arcs.push_back({i, j, x[a]});
  }
  return g;
}

bool weakly_connected(const SupportGraph& g) {
  if (g.nodes.empty()) return true;
  std::vector<int> parent(static_cast<std::size_t>(g.n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  for (const auto& a : g.arcs) parent[static_cast<std::size_t>(find(a.from))] = find(a.to);
  int r = find(g.nodes.front());
  for (int v : g.nodes) {
    if (find(v) != r) return false;
  }
  return true;
}

std::string to_dot(const SupportGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (int v : g.nodes) {
    os << "  " << v + 1 << " [";
    switch (g.role(v)) {
      case NodeRole::Root:
        os << "shape=doublecircle";
        break;
      case NodeRole::Terminal:
        os << "shape=circle";
        break;
      case NodeRole::Steiner:
        os << "shape=box";
        break;
    }
    os << ", role=" << role_name(g.role(v)) << "];\n";
  }
  for (const auto& a : g.arcs) {
    os << "  " << a.from + 1 << " -> " << a.to + 1 << " [label=\"" << a.weight
       << "\"";
    if (a.weight != Rational(1)) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace steinergap
