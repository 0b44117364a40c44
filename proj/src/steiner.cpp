#include "steinergap/steiner.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>

#include "steinergap/guards.hpp"
#include "steinergap/simplex.hpp"

namespace steinergap {

ArcVector SteinerTree::point(int n) const {
  ArcVector x(n);
  for (auto [u, v] : arcs) x.set(u, v, 1);
  return x;
}

namespace {

using Mask = std::uint32_t;

SteinerTree orient(const SteinerInstance& inst, const std::set<std::pair<int, int>>& edges) {
  const int n = inst.n();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  // BFS spanning tree of the edge union, then strip non-terminal leaves.
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  parent[0] = -1;
  std::deque<int> queue{0};
  std::vector<int> order;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (parent[static_cast<std::size_t>(v)] != -2) continue;
      parent[static_cast<std::size_t>(v)] = u;
      queue.push_back(v);
    }
  }
  std::vector<int> children(static_cast<std::size_t>(n), 0);
  for (int v : order) {
    if (v != 0) ++children[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
  }
  std::vector<bool> keep(static_cast<std::size_t>(n), false);
  for (int v : order) keep[static_cast<std::size_t>(v)] = true;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (v != 0 && !inst.is_terminal(v) && children[static_cast<std::size_t>(v)] == 0) {
      keep[static_cast<std::size_t>(v)] = false;
      --children[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    }
  }
  SteinerTree tree;
  for (int v : order) {
    if (v == 0 || !keep[static_cast<std::size_t>(v)]) continue;
    int p = parent[static_cast<std::size_t>(v)];
    tree.arcs.emplace_back(p, v);
    tree.cost += inst.cost(p, v);
  }
  std::sort(tree.arcs.begin(), tree.arcs.end());
  return tree;
}

}  // namespace

SteinerTree stp_exact(const SteinerInstance& inst) {
  const int n = inst.n();
  const int k = inst.t() - 1;
  check_guard("dw_t", inst.t(), guards().dw_max_t, "Dreyfus-Wagner terminal count");
  auto sn = static_cast<std::size_t>(n);
  // Shortest paths with successor matrix.
  std::vector<std::vector<Rational>> d(sn, std::vector<Rational>(sn));
  std::vector<std::vector<int>> next(sn, std::vector<int>(sn));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = inst.cost(i, j);
      next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = j;
    }
  }
  for (std::size_t m = 0; m < sn; ++m) {
    for (std::size_t i = 0; i < sn; ++i) {
      for (std::size_t j = 0; j < sn; ++j) {
        Rational via = d[i][m] + d[m][j];
        if (via < d[i][j]) {
          d[i][j] = std::move(via);
          next[i][j] = next[i][m];
        }
      }
    }
  }
  std::set<std::pair<int, int>> edges;
  auto add_path = [&](int a, int b) {
    while (a != b) {
      int c = next[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      edges.insert({std::min(a, c), std::max(a, c)});
      a = c;
    }
  };
  if (k == 0) return SteinerTree{};

  const Mask full = (Mask{1} << k) - 1;
  const std::size_t subsets = std::size_t{1} << k;
  std::vector<std::vector<Rational>> dp(subsets, std::vector<Rational>(sn));
  std::vector<std::vector<int>> via(subsets, std::vector<int>(sn, -1));
  std::vector<std::vector<Rational>> merge(subsets, std::vector<Rational>(sn));
  std::vector<std::vector<Mask>> split(subsets, std::vector<Mask>(sn, 0));
  for (int i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < sn; ++v) dp[Mask{1} << i][v] = d[static_cast<std::size_t>(i + 1)][v];
  }
  std::vector<Mask> by_size;
  for (Mask s = 1; s <= full; ++s) by_size.push_back(s);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
  for (Mask s : by_size) {
    if (std::popcount(s) < 2) continue;
    const Mask low = s & (~s + 1);
    for (std::size_t u = 0; u < sn; ++u) {
      std::optional<Rational> best;
      Mask best_split = 0;
      for (Mask sub = (s - 1) & s; sub > 0; sub = (sub - 1) & s) {
        if (!(sub & low)) continue;
        Rational c = dp[sub][u] + dp[s ^ sub][u];
        if (!best || c < *best) {
          best = std::move(c);
          best_split = sub;
        }
      }
      merge[s][u] = *best;
      split[s][u] = best_split;
    }
    for (std::size_t v = 0; v < sn; ++v) {
      std::optional<Rational> best;
      int arg = -1;
      for (std::size_t u = 0; u < sn; ++u) {
        Rational c = merge[s][u] + d[u][v];
        if (!best || c < *best) {
          best = std::move(c);
          arg = static_cast<int>(u);
        }
      }
      dp[s][v] = *best;
      via[s][v] = arg;
    }
  }
  std::vector<std::pair<Mask, int>> stack{{full, 0}};
  while (!stack.empty()) {
    auto [s, v] = stack.back();
    stack.pop_back();
    if (std::popcount(s) == 1) {
      add_path(std::countr_zero(s) + 1, v);
      continue;
    }
    int u = via[s][static_cast<std::size_t>(v)];
    add_path(u, v);
    Mask sub = split[s][static_cast<std::size_t>(u)];
    stack.emplace_back(sub, u);
    stack.emplace_back(s ^ sub, u);
  }
  SteinerTree tree = orient(inst, edges);
  if (tree.cost != dp[full][0]) {
    throw std::logic_error("Dreyfus-Wagner reconstruction does not match its value");
  }
  return tree;
}

Rational stp_bruteforce(const SteinerInstance& inst) {
  const int n = inst.n();
  const int t = inst.t();
  check_guard("brute_n", n, guards().stp_brute_max_n, "brute-force STP node count");
  std::optional<Rational> best;
  for (Mask s = 0; s < (Mask{1} << (n - t)); ++s) {
    std::vector<int> nodes;
    for (int v = 0; v < t; ++v) nodes.push_back(v);
    for (int j = 0; j < n - t; ++j) {
      if (s & (Mask{1} << j)) nodes.push_back(t + j);
    }
    // Prim
    std::vector<bool> in(nodes.size(), false);
    std::vector<std::optional<Rational>> key(nodes.size());
    key[0] = Rational(0);
    Rational total;
    for (std::size_t it = 0; it < nodes.size(); ++it) {
      std::size_t pick = nodes.size();
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!in[i] && key[i] && (pick == nodes.size() || *key[i] < *key[pick])) pick = i;
      }
      in[pick] = true;
      total += *key[pick];
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (in[i]) continue;
        const Rational& c = inst.cost(nodes[pick], nodes[i]);
        if (!key[i] || c < *key[i]) key[i] = c;
      }
    }
    if (!best || total < *best) best = total;
  }
  return *best;
}

SteinerTree shortcut_tree(const SteinerInstance& inst, const SteinerTree& tree) {
  const int n = inst.n();
  std::set<std::pair<int, int>> edges;
  for (auto [u, v] : tree.arcs) edges.insert({std::min(u, v), std::max(u, v)});
  for (bool changed = true; changed;) {
    changed = false;
    for (int s = inst.t(); s < n && !changed; ++s) {
      std::vector<int> nb;
      for (auto [u, v] : edges) {
        if (u == s) nb.push_back(v);
        if (v == s) nb.push_back(u);
      }
      if (nb.size() == 1 || nb.size() == 2) {
        for (int w : nb) edges.erase({std::min(s, w), std::max(s, w)});
        if (nb.size() == 2) edges.insert({std::min(nb[0], nb[1]), std::max(nb[0], nb[1])});
        changed = true;
      }
    }
  }
  return orient(inst, edges);
}

std::vector<Rational> arc_costs(const SteinerInstance& inst) {
  const int n = inst.n();
  std::vector<Rational> c(static_cast<std::size_t>(num_arcs(n)));
  for (int a = 0; a < num_arcs(n); ++a) {
    auto [i, j] = arc_ends(n, a);
    c[static_cast<std::size_t>(a)] = inst.cost(i, j);
  }
  return c;
}

Rational lp_optimum(Kind kind, const SteinerInstance& inst) {
  PolytopeLp r = solve_polytope_lp(kind, inst.n(), inst.t(), arc_costs(inst), CutMode::None);
  if (r.solution.status != LpStatus::Optimal) {
    throw std::logic_error(std::string("LP relaxation is ") + status_name(r.solution.status));
  }
  return r.solution.value;
}

Rational instance_gap(Kind kind, const SteinerInstance& inst) {
  Rational lp = lp_optimum(kind, inst);
  if (lp.is_zero()) throw std::domain_error("LP optimum is zero");
  return stp_exact(inst).cost / lp;
}

}  // namespace steinergap
