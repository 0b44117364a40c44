#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace steinergap {

// Simple undirected graph on at most 32 nodes, adjacency as bit rows.
struct SimpleGraph {
  int n = 0;
  std::vector<std::uint32_t> adj;

  SimpleGraph() = default;
  explicit SimpleGraph(int nodes) : n(nodes), adj(static_cast<std::size_t>(nodes), 0) {}

  bool has(int u, int v) const { return (adj[static_cast<std::size_t>(u)] >> v) & 1U; }
  void add(int u, int v);
  void remove(int u, int v);
  int degree(int v) const;
  int num_edges() const;
  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted
  bool connected() const;
  int components() const;
};

struct GenSpec {
  int n = 0;
  int min_edges = 0;
  int max_edges = 0;
  int min_degree = 0;
  bool connected = true;
  int max_degree2 = -1;  // at most this many nodes of degree 2 (-1: no limit)
  int max_degree3 = -1;  // same for degree 3
};

// One graph per isomorphism class satisfying the spec, by canonical
// augmentation: a child G + e is kept only when e is the last edge of G + e
// in its canonical order, up to automorphism.
void gen_graphs(const GenSpec& spec, const std::function<void(const SimpleGraph&)>& fn);
std::vector<SimpleGraph> graphs(const GenSpec& spec);

// Canonical certificate of an undirected graph.
std::string graph_certificate(const SimpleGraph& g);

struct OrientSpec {
  int max_indegree = 2;
  bool single_direction = true;     // false also allows both arcs on an edge
  std::vector<int> indegree_counts;  // if set, exact number of nodes per indegree
};

using ArcList = std::vector<std::pair<int, int>>;

// One orientation per digraph isomorphism class.
void gen_orientations(const SimpleGraph& g, const OrientSpec& spec,
                      const std::function<void(const ArcList&)>& fn);

}  // namespace steinergap
