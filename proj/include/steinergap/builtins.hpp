#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steinergap/point.hpp"

namespace steinergap {

struct Builtin {
  std::string name;
  std::string description;
  int n = 0;
  int t = 0;
  ArcVector x;
  std::optional<Rational> expected_gap;  // CM gap of the point, when known
};

std::vector<std::string> builtin_names();

// Throws std::invalid_argument on an unknown name. `t` is used by path-2t3
// only (n = 2t-2, t >= 3).
Builtin builtin(const std::string& name, int t = 5);

// Tree on 2t-2 nodes with 2t-3 arcs of value 1: root to the first Steiner
// node, a Steiner chain, one terminal per Steiner node plus one at the end.
ArcVector path_2t3(int t);

}  // namespace steinergap
