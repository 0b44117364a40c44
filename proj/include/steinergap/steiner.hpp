#pragma once

#include <utility>
#include <vector>

#include "steinergap/formulations.hpp"
#include "steinergap/instance.hpp"

namespace steinergap {

struct SteinerTree {
  std::vector<std::pair<int, int>> arcs;  // oriented away from the root
  Rational cost;

  ArcVector point(int n) const;
};

// Dreyfus-Wagner over subsets of the non-root terminals. Ties go to the
// smallest node and subset indices, so the output is deterministic.
SteinerTree stp_exact(const SteinerInstance& inst);

// Minimum over Steiner subsets S of the MST on T + S.
Rational stp_bruteforce(const SteinerInstance& inst);

// Replaces Steiner nodes of degree 2 by a direct edge and drops Steiner
// leaves. Under metric costs the result is no more expensive.
SteinerTree shortcut_tree(const SteinerInstance& inst, const SteinerTree& tree);

std::vector<Rational> arc_costs(const SteinerInstance& inst);

// LP optimum of the formulation (lazy cuts).
Rational lp_optimum(Kind kind, const SteinerInstance& inst);

// STP / LP optimum. Throws std::domain_error when the LP optimum is zero.
Rational instance_gap(Kind kind, const SteinerInstance& inst);

}  // namespace steinergap
