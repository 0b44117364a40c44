#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "steinergap/formulations.hpp"

namespace steinergap {

enum class VarSign { NonNeg, NonPos, Free };

// min objective . x subject to system; variables default to x >= 0.
struct LinearProgram {
  ConstraintSystem system;
  std::vector<Rational> objective;
  std::vector<VarSign> sign;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* status_name(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;
  std::vector<std::size_t> tight_rows;
  std::size_t pivots = 0;
};

// Two-phase primal simplex on a dense exact tableau. The entering variable is
// the most negative reduced cost while pivots make progress; during a run of
// degenerate pivots Bland's smallest-index rule takes over, so the method
// cannot cycle. The returned point is basic.
LpSolution solve_lp(const LinearProgram& lp);

// Keeps the final tableau so that inequality rows can be added and the
// optimum restored by dual simplex pivots.
class IncrementalLp {
 public:
  explicit IncrementalLp(LinearProgram lp);
  ~IncrementalLp();
  IncrementalLp(IncrementalLp&&) noexcept;
  IncrementalLp& operator=(IncrementalLp&&) noexcept;

  LpSolution solve();
  void add_row(const Row& r);
  // Keeps the current basis; the next solve() continues from it.
  void set_objective(std::vector<Rational> objective);
  IncrementalLp clone() const;
  const LinearProgram& program() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct PolytopeLp {
  LpSolution solution;
  ArcVector x;
  std::size_t separation_rounds = 0;
};

// Minimizes cost . x over a formulation. With CutMode::None the cut rows are
// added lazily through separate_cut until the optimum satisfies all of them.
PolytopeLp solve_polytope_lp(Kind kind, int n, int t, const std::vector<Rational>& arc_costs,
                             CutMode mode = CutMode::None);

}  // namespace steinergap
