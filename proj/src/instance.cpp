#include "steinergap/instance.hpp"

#include <algorithm>

namespace steinergap {

const char* role_name(NodeRole r) {
  switch (r) {
    case NodeRole::Root:
      return "root";
    case NodeRole::Terminal:
      return "terminal";
    case NodeRole::Steiner:
      return "steiner";
  }
  return "?";
}

std::pair<int, int> edge_ends(int n, int e) {
  int i = 0;
  while (e >= n - 1 - i) {
    e -= n - 1 - i;
    ++i;
  }
  return {i, i + 1 + e};
}

std::vector<std::string> structural_errors(const CostMatrix& costs) {
  std::vector<std::string> errs;
  std::size_t n = costs.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (costs[i].size() != n) {
      errs.push_back("row " + std::to_string(i + 1) + " has " +
                     std::to_string(costs[i].size()) + " entries, expected " +
                     std::to_string(n));
    }
  }
  if (!errs.empty()) return errs;
  for (std::size_t i = 0; i < n; ++i) {
    if (!costs[i][i].is_zero()) {
      errs.push_back("diagonal entry " + std::to_string(i + 1) + " is nonzero");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (costs[i][j].sign() < 0) {
        errs.push_back("negative cost at (" + std::to_string(i + 1) + "," +
                       std::to_string(j + 1) + ")");
      }
      if (j > i && costs[i][j] != costs[j][i]) {
        errs.push_back("asymmetric cost at (" + std::to_string(i + 1) + "," +
                       std::to_string(j + 1) + ")");
      }
    }
  }
  return errs;
}

SteinerInstance::SteinerInstance(int n, int t, const CostMatrix& costs)
    : n_(n), t_(t) {
  if (n < 2) throw InstanceError("need at least two nodes");
  if (t < 1 || t > n) throw InstanceError("terminal count out of range");
  if (costs.size() != static_cast<std::size_t>(n)) {
    throw InstanceError("cost matrix has " + std::to_string(costs.size()) +
                        " rows, expected " + std::to_string(n));
  }
  auto errs = structural_errors(costs);
  if (!errs.empty()) throw InstanceError(errs.front());
  costs_.reserve(static_cast<std::size_t>(n * n));
  for (const auto& row : costs) {
    for (const auto& c : row) costs_.push_back(c);
  }
}

SteinerInstance SteinerInstance::with_roles(const CostMatrix& costs,
                                            const std::vector<int>& terminals,
                                            int root,
                                            std::vector<int>* old_of_new) {
  int n = static_cast<int>(costs.size());
  std::vector<bool> is_term(static_cast<std::size_t>(n), false);
  for (int v : terminals) {
    if (v < 0 || v >= n) throw InstanceError("terminal index out of range");
    if (is_term[static_cast<std::size_t>(v)]) {
      throw InstanceError("duplicate terminal");
    }
    is_term[static_cast<std::size_t>(v)] = true;
  }
  if (root < 0 || root >= n || !is_term[static_cast<std::size_t>(root)]) {
    throw InstanceError("root must be a terminal");
  }
  std::vector<int> order{root};
  for (int v = 0; v < n; ++v) {
    if (v != root && is_term[static_cast<std::size_t>(v)]) order.push_back(v);
  }
  for (int v = 0; v < n; ++v) {
    if (!is_term[static_cast<std::size_t>(v)]) order.push_back(v);
  }
  auto errs = structural_errors(costs);
  if (!errs.empty()) throw InstanceError(errs.front());
  CostMatrix relabeled(static_cast<std::size_t>(n),
                       std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      relabeled[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          costs[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]
               [static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    }
  }
  if (old_of_new) *old_of_new = order;
  return SteinerInstance(n, static_cast<int>(terminals.size()), relabeled);
}

CostMatrix SteinerInstance::matrix() const {
  CostMatrix m(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m[static_cast<std::size_t>(i)].push_back(cost(i, j));
  }
  return m;
}

std::vector<Rational> SteinerInstance::edge_costs() const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(num_edges(n_)));
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) out.push_back(cost(i, j));
  }
  return out;
}

std::vector<TriangleViolation> validate_metric(const SteinerInstance& inst) {
  std::vector<TriangleViolation> out;
  int n = inst.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (inst.cost(i, j) > inst.cost(i, k) + inst.cost(k, j)) {
          out.push_back({i, j, k});
        }
      }
    }
  }
  return out;
}

SteinerInstance metric_closure(const SteinerInstance& inst) {
  CostMatrix d = inst.matrix();
  auto n = static_cast<std::size_t>(inst.n());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  }
  return SteinerInstance(inst.n(), inst.t(), d);
}

SteinerInstance one_two_cost_instance(
    int n, int t, const std::vector<std::pair<int, int>>& edges) {
  auto sn = static_cast<std::size_t>(n);
  CostMatrix c(sn, std::vector<Rational>(sn, Rational(2)));
  for (std::size_t i = 0; i < sn; ++i) c[i][i] = 0;
  for (auto [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n) {
      throw InstanceError("bad edge");
    }
    c[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    c[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  }
  return SteinerInstance(n, t, c);
}

SteinerInstance instance_from_edge_costs(int n, int t,
                                         const std::vector<Rational>& ec) {
  auto sn = static_cast<std::size_t>(n);
  CostMatrix c(sn, std::vector<Rational>(sn));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational& v = ec[static_cast<std::size_t>(edge_index(n, i, j))];
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  }
  return SteinerInstance(n, t, c);
}

}  // namespace steinergap
