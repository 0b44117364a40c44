#pragma once

#include <string>
#include <vector>

#include "steinergap/instance.hpp"
#include "steinergap/rational.hpp"

namespace steinergap {

// A point of R^{A}, one coordinate per ordered pair (i,j), i != j.
class ArcVector {
 public:
  ArcVector() = default;
  explicit ArcVector(int n) : n_(n), x_(static_cast<std::size_t>(num_arcs(n))) {}

  int n() const { return n_; }
  int size() const { return static_cast<int>(x_.size()); }

  const Rational& operator[](int a) const { return x_[static_cast<std::size_t>(a)]; }
  Rational& operator[](int a) { return x_[static_cast<std::size_t>(a)]; }
  const Rational& at(int i, int j) const { return (*this)[arc_index(n_, i, j)]; }
  void set(int i, int j, Rational v) { (*this)[arc_index(n_, i, j)] = std::move(v); }

  const std::vector<Rational>& values() const { return x_; }

  bool is_integral() const;
  std::vector<int> support() const;
  Rational inflow(int v) const;
  Rational outflow(int v) const;
  // Nodes touched by a nonzero arc.
  std::vector<bool> active_nodes() const;

  friend bool operator==(const ArcVector&, const ArcVector&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> x_;
};

}  // namespace steinergap
