#include "steinergap/point.hpp"

namespace steinergap {

bool ArcVector::is_integral() const {
  for (const auto& v : x_) {
    if (!v.is_integer()) return false;
  }
  return true;
}

std::vector<int> ArcVector::support() const {
  std::vector<int> s;
  for (int a = 0; a < size(); ++a) {
    if (!(*this)[a].is_zero()) s.push_back(a);
  }
  return s;
}

Rational ArcVector::inflow(int v) const {
  Rational s;
  for (int u = 0; u < n_; ++u) {
    if (u != v) s += at(u, v);
  }
  return s;
}

Rational ArcVector::outflow(int v) const {
  Rational s;
  for (int u = 0; u < n_; ++u) {
    if (u != v) s += at(v, u);
  }
  return s;
}

std::vector<bool> ArcVector::active_nodes() const {
  std::vector<bool> act(static_cast<std::size_t>(n_), false);
  for (int a : support()) {
    auto [i, j] = arc_ends(n_, a);
    act[static_cast<std::size_t>(i)] = true;
    act[static_cast<std::size_t>(j)] = true;
  }
  return act;
}

}  // namespace steinergap
