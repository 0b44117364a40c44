#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steinergap/point.hpp"

namespace steinergap {

using NodeSet = std::uint64_t;

inline bool contains(NodeSet w, int v) { return (w >> v) & 1U; }

// Sets W with root 0 outside W and at least one terminal inside.
struct CutFamily {
  int n = 0;
  int t = 0;
  bool reduced = false;
  std::vector<NodeSet> sets;
};

// Reduced mode keeps at most t-2 Steiner nodes per set; it needs 2t <= n+2.
bool reduced_cuts_valid(int n, int t);
CutFamily enumerate_cuts(int n, int t, bool reduced);

enum class Relation { LessEq, Equal, GreaterEq };

enum class RowKind {
  BoxLower,
  BoxUpper,
  Pairing,
  Cut,
  RootInflow,
  Inflow,          // inflow <= 1
  TerminalInflow,  // inflow == 1
  InOut,           // inflow <= outflow
  InOutArc,        // inflow >= single out-arc
  Balance,         // 2 inflow <= outflow
  FlowConservation,
  Capacity,
  DualFeasibility,
  Triangle,
  Normalization,
  Other,
};

const char* row_kind_name(RowKind k);

struct RowTag {
  RowKind kind = RowKind::Other;
  int node = -1;
  int arc = -1;
  int commodity = -1;
  NodeSet cut = 0;
};

struct Row {
  std::vector<std::pair<int, Rational>> coef;
  Relation rel = Relation::LessEq;
  Rational rhs;
  RowTag tag;
};

class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  explicit ConstraintSystem(int vars) : num_vars_(vars) {}

  int num_vars() const { return num_vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  const Row& row(std::size_t i) const { return rows_[i]; }

  void add(Row r);

  static Rational activity(const Row& r, const std::vector<Rational>& x);
  // rhs - activity for <=, activity - rhs for >=, |activity - rhs| for =.
  static Rational slack(const Row& r, const std::vector<Rational>& x);
  static bool satisfied(const Row& r, const std::vector<Rational>& x);

  std::optional<std::size_t> first_violation(const std::vector<Rational>& x) const;
  bool feasible(const std::vector<Rational>& x) const { return !first_violation(x); }

  std::string describe(std::size_t i) const;
  // LP-format-like dump with "p/q" coefficients.
  std::string to_text(const std::vector<Rational>* objective = nullptr) const;

 private:
  int num_vars_ = 0;
  std::vector<Row> rows_;
};

enum class Kind { BCR, SJ, CM };

const char* kind_name(Kind k);
Kind parse_kind(const std::string& s);

enum class CutMode {
  Full,
  Reduced,
  Auto,  // reduced for CM when valid, full otherwise
  None,  // no cut rows; pair with separate_cut
};

ConstraintSystem build_polytope(Kind kind, int n, int t, CutMode mode = CutMode::Full);

// Variables: x (n(n-1)) followed by one block of n(n-1) flow variables per
// terminal 1..t-1.
ConstraintSystem build_mcf(int n, int t);

Row cut_row(int n, NodeSet w);

// Max-flow/min-cut from the root to each terminal. Returns a set W with
// x(in(W)) < 1, or nothing when every cut row holds.
std::optional<NodeSet> separate_cut(const ArcVector& x, int t);

// Every 0/1 point of the polytope, each once. CM uses rooted trees, SJ a
// parent choice per node, BCR scans the three states of every edge.
void for_each_integer_solution(Kind kind, int n, int t,
                               const std::function<void(const ArcVector&)>& fn);
std::vector<ArcVector> integer_solutions(Kind kind, int n, int t);

}  // namespace steinergap
