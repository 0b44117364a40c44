#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "steinergap/rational.hpp"

namespace steinergap {

// Nodes are 0-based internally: node 0 is the root, nodes 1..t-1 are the
// remaining terminals and nodes t..n-1 are Steiner nodes.
enum class NodeRole { Root, Terminal, Steiner };

const char* role_name(NodeRole r);

inline int num_arcs(int n) { return n * (n - 1); }
inline int num_edges(int n) { return n * (n - 1) / 2; }

inline int arc_index(int n, int i, int j) {
  return i * (n - 1) + (j < i ? j : j - 1);
}

inline std::pair<int, int> arc_ends(int n, int a) {
  int i = a / (n - 1);
  int j = a % (n - 1);
  return {i, j < i ? j : j + 1};
}

// Edge {i,j} with i < j.
inline int edge_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> edge_ends(int n, int e);

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using CostMatrix = std::vector<std::vector<Rational>>;

// Problems with shape, symmetry, diagonal or sign. Empty when well formed.
std::vector<std::string> structural_errors(const CostMatrix& costs);

class SteinerInstance {
 public:
  // Roles are positional: node 0 root, 1..t-1 terminals. Throws
  // InstanceError when the matrix is malformed or t is out of range.
  SteinerInstance(int n, int t, const CostMatrix& costs);

  // Relabels an arbitrary matrix so that `root` becomes node 0 and the other
  // terminals follow in increasing order. `old_of_new`, when given, receives
  // the original index of each new node.
  static SteinerInstance with_roles(const CostMatrix& costs,
                                    const std::vector<int>& terminals,
                                    int root,
                                    std::vector<int>* old_of_new = nullptr);

  int n() const { return n_; }
  int t() const { return t_; }
  int root() const { return 0; }
  bool is_terminal(int v) const { return v < t_; }
  NodeRole role(int v) const {
    return v == 0 ? NodeRole::Root
                  : (v < t_ ? NodeRole::Terminal : NodeRole::Steiner);
  }
  const Rational& cost(int i, int j) const {
    return costs_[static_cast<std::size_t>(i * n_ + j)];
  }
  CostMatrix matrix() const;
  // Edge costs in edge_index order.
  std::vector<Rational> edge_costs() const;

 private:
  int n_;
  int t_;
  std::vector<Rational> costs_;
};

struct TriangleViolation {
  int i;
  int j;
  int k;  // c(i,j) > c(i,k) + c(k,j)
};

std::vector<TriangleViolation> validate_metric(const SteinerInstance& inst);

// Shortest-path closure. Idempotent; the identity on metric instances.
SteinerInstance metric_closure(const SteinerInstance& inst);

// Cost 1 on the listed edges and 2 elsewhere.
SteinerInstance one_two_cost_instance(
    int n, int t, const std::vector<std::pair<int, int>>& edges);

SteinerInstance instance_from_edge_costs(int n, int t,
                                         const std::vector<Rational>& edge_costs);

}  // namespace steinergap
