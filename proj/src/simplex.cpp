#include "steinergap/simplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace steinergap {

const char* status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

class Tableau {
 public:
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> d;  // reduced costs
  Rational negz;            // minus the current objective value
  std::vector<int> basis;
  std::vector<bool> allowed;
  std::size_t pivots = 0;

  std::size_t cols() const { return d.size(); }

  void pivot(std::size_t p, std::size_t q) {
    ++pivots;
    std::vector<Rational>& prow = a[p];
    const Rational inv = prow[q].inverse();
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (prow[j].is_zero()) continue;
      if (j == q) {
        prow[j] = 1;
      } else {
        prow[j] *= inv;
      }
      nz.push_back(j);
    }
    b[p] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == p || a[i][q].is_zero()) continue;
      const Rational f = a[i][q];
      std::vector<Rational>& row = a[i];
      for (std::size_t j : nz) row[j].sub_mul(f, prow[j]);
      b[i].sub_mul(f, b[p]);
    }
    if (!d[q].is_zero()) {
      const Rational f = d[q];
      for (std::size_t j : nz) d[j].sub_mul(f, prow[j]);
      negz.sub_mul(f, b[p]);
    }
    basis[p] = static_cast<int>(q);
  }

  // Returns false when unbounded.
  bool optimize() {
    bool bland = false;
    for (;;) {
      std::size_t q = d.size();
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (!allowed[j] || d[j].sign() >= 0) continue;
        if (q == d.size()) {
          q = j;
          if (bland) break;
        } else if (d[j] < d[q]) {
          q = j;
        }
      }
      if (q == d.size()) return true;
      std::size_t p = a.size();
      Rational best;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][q].sign() <= 0) continue;
        Rational ratio = b[i] / a[i][q];
        if (p == a.size() || ratio < best || (ratio == best && basis[i] < basis[p])) {
          p = i;
          best = std::move(ratio);
        }
      }
      if (p == a.size()) return false;
      bland = best.is_zero();
      pivot(p, q);
    }
  }

  // Restores primal feasibility from a dual feasible basis. Bland's rule on
  // both choices. Returns false when the rows are infeasible.
  bool dual_optimize() {
    for (;;) {
      std::size_t p = a.size();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i].sign() < 0 && (p == a.size() || basis[i] < basis[p])) p = i;
      }
      if (p == a.size()) return true;
      std::size_t q = d.size();
      Rational best;
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (!allowed[j] || a[p][j].sign() >= 0) continue;
        Rational ratio = d[j] / -a[p][j];
        if (q == d.size() || ratio < best) {
          q = j;
          best = std::move(ratio);
        }
      }
      if (q == d.size()) return false;
      pivot(p, q);
    }
  }

  void remove_row(std::size_t i) {
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(i));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
  }
};

struct ColumnMap {
  // Standard column(s) carrying an original variable.
  int plus = -1;
  int minus = -1;
};

bool implied_bound(const Row& r, const std::vector<VarSign>& sign) {
  if (r.coef.size() != 1 || !r.rhs.is_zero()) return false;
  const auto& [v, c] = r.coef[0];
  VarSign s = sign.empty() ? VarSign::NonNeg : sign[static_cast<std::size_t>(v)];
  if (s == VarSign::NonNeg) {
    return (c.sign() > 0 && r.rel == Relation::GreaterEq) ||
           (c.sign() < 0 && r.rel == Relation::LessEq);
  }
  if (s == VarSign::NonPos) {
    return (c.sign() > 0 && r.rel == Relation::LessEq) ||
           (c.sign() < 0 && r.rel == Relation::GreaterEq);
  }
  return false;
}

}  // namespace

struct IncrementalLp::Impl {
  LinearProgram lp;
  std::vector<ColumnMap> map;
  int structural = 0;
  Tableau tab;
  bool solved = false;
  bool infeasible = false;
  bool unbounded = false;

  std::vector<std::pair<int, Rational>> standard(const Row& r) const {
    std::vector<std::pair<int, Rational>> out;
    for (const auto& [v, c] : r.coef) {
      const ColumnMap& cm = map[static_cast<std::size_t>(v)];
      if (cm.plus >= 0) out.emplace_back(cm.plus, c);
      if (cm.minus >= 0) out.emplace_back(cm.minus, -c);
    }
    return out;
  }

  void initial_solve();
  void price();
  void append_row(const Row& r);
  LpSolution extract() const;
};

void IncrementalLp::Impl::initial_solve() {
  const ConstraintSystem& sys = lp.system;
  const auto nv = static_cast<std::size_t>(sys.num_vars());
  map.assign(nv, ColumnMap{});
  int ncols = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    VarSign s = lp.sign.empty() ? VarSign::NonNeg : lp.sign[v];
    if (s == VarSign::NonNeg) {
      map[v].plus = ncols++;
    } else if (s == VarSign::NonPos) {
      map[v].minus = ncols++;
    } else {
      map[v].plus = ncols++;
      map[v].minus = ncols++;
    }
  }
  structural = ncols;

  struct StdRow {
    std::vector<std::pair<int, Rational>> coef;
    Relation rel;
    Rational rhs;
  };
  std::vector<StdRow> rows;
  for (const Row& r : sys.rows()) {
    if (implied_bound(r, lp.sign)) continue;
    StdRow s{standard(r), r.rel, r.rhs};
    bool flip = s.rhs.sign() < 0 || (s.rhs.is_zero() && s.rel == Relation::GreaterEq);
    if (flip) {
      s.rhs = -s.rhs;
      for (auto& [j, c] : s.coef) c = -c;
      if (s.rel == Relation::LessEq) {
        s.rel = Relation::GreaterEq;
      } else if (s.rel == Relation::GreaterEq) {
        s.rel = Relation::LessEq;
      }
    }
    rows.push_back(std::move(s));
  }

  int slack_start = ncols;
  for (const auto& r : rows) {
    if (r.rel != Relation::Equal) ++ncols;
  }
  const int art_start = ncols;
  for (const auto& r : rows) {
    if (r.rel != Relation::LessEq) ++ncols;
  }
  const auto total = static_cast<std::size_t>(ncols);

  tab.a.assign(rows.size(), std::vector<Rational>(total));
  tab.b.resize(rows.size());
  tab.basis.resize(rows.size());
  tab.d.assign(total, Rational(0));
  tab.allowed.assign(total, true);
  int slack = slack_start;
  int art = art_start;
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, c] : rows[i].coef) tab.a[i][static_cast<std::size_t>(j)] += c;
    tab.b[i] = rows[i].rhs;
    if (rows[i].rel == Relation::LessEq) {
      tab.a[i][static_cast<std::size_t>(slack)] = 1;
      tab.basis[i] = slack++;
      continue;
    }
    if (rows[i].rel == Relation::GreaterEq) tab.a[i][static_cast<std::size_t>(slack++)] = -1;
    tab.a[i][static_cast<std::size_t>(art)] = 1;
    tab.basis[i] = art++;
    art_rows.push_back(i);
  }

  if (!art_rows.empty()) {
    for (std::size_t i : art_rows) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(art_start); ++j) {
        if (!tab.a[i][j].is_zero()) tab.d[j] -= tab.a[i][j];
      }
      tab.negz -= tab.b[i];
    }
    tab.optimize();
    if (!tab.negz.is_zero()) {
      infeasible = true;
      return;
    }
    for (std::size_t i = tab.a.size(); i-- > 0;) {
      if (tab.basis[i] < art_start) continue;
      std::size_t q = 0;
      while (q < static_cast<std::size_t>(art_start) && tab.a[i][q].is_zero()) ++q;
      if (q == static_cast<std::size_t>(art_start)) {
        tab.remove_row(i);
      } else {
        tab.pivot(i, q);
      }
    }
    for (auto& row : tab.a) row.resize(static_cast<std::size_t>(art_start));
    tab.d.resize(static_cast<std::size_t>(art_start));
    tab.allowed.resize(static_cast<std::size_t>(art_start));
  }

  price();
  unbounded = !tab.optimize();
}

// Reduced costs of lp.objective for the current basis.
void IncrementalLp::Impl::price() {
  const auto nv = static_cast<std::size_t>(lp.system.num_vars());
  std::vector<Rational> cost(tab.d.size());
  for (std::size_t v = 0; v < nv; ++v) {
    if (map[v].plus >= 0) cost[static_cast<std::size_t>(map[v].plus)] = lp.objective[v];
    if (map[v].minus >= 0) cost[static_cast<std::size_t>(map[v].minus)] = -lp.objective[v];
  }
  tab.d = cost;
  tab.negz = 0;
  for (std::size_t i = 0; i < tab.a.size(); ++i) {
    const Rational& cb = cost[static_cast<std::size_t>(tab.basis[i])];
    if (cb.is_zero()) continue;
    for (std::size_t j = 0; j < tab.d.size(); ++j) {
      if (!tab.a[i][j].is_zero()) tab.d[j].sub_mul(cb, tab.a[i][j]);
    }
    tab.negz.sub_mul(cb, tab.b[i]);
  }
}

void IncrementalLp::Impl::append_row(const Row& r) {
  // Stored as coef . x + s = rhs with a fresh basic slack s >= 0.
  auto coef = standard(r);
  Rational rhs = r.rhs;
  if (r.rel == Relation::GreaterEq) {
    for (auto& [j, c] : coef) c = -c;
    rhs = -rhs;
  }
  const std::size_t q = tab.d.size();
  for (auto& row : tab.a) row.emplace_back();
  tab.d.emplace_back();
  tab.allowed.push_back(true);
  std::vector<Rational> row(q + 1);
  for (const auto& [j, c] : coef) row[static_cast<std::size_t>(j)] += c;
  row[q] = 1;
  for (std::size_t i = 0; i < tab.a.size(); ++i) {
    const auto bcol = static_cast<std::size_t>(tab.basis[i]);
    if (row[bcol].is_zero()) continue;
    const Rational f = row[bcol];
    const auto& src = tab.a[i];
    for (std::size_t j = 0; j <= q; ++j) {
      if (!src[j].is_zero()) row[j].sub_mul(f, src[j]);
    }
    rhs.sub_mul(f, tab.b[i]);
  }
  tab.a.push_back(std::move(row));
  tab.b.push_back(std::move(rhs));
  tab.basis.push_back(static_cast<int>(q));
}

LpSolution IncrementalLp::Impl::extract() const {
  LpSolution sol;
  sol.pivots = tab.pivots;
  if (infeasible) return sol;
  if (unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  const ConstraintSystem& sys = lp.system;
  const auto nv = static_cast<std::size_t>(sys.num_vars());
  std::vector<Rational> colval(static_cast<std::size_t>(structural));
  for (std::size_t i = 0; i < tab.a.size(); ++i) {
    if (tab.basis[i] < structural) colval[static_cast<std::size_t>(tab.basis[i])] = tab.b[i];
  }
  sol.status = LpStatus::Optimal;
  sol.point.assign(nv, Rational(0));
  for (std::size_t v = 0; v < nv; ++v) {
    if (map[v].plus >= 0) sol.point[v] += colval[static_cast<std::size_t>(map[v].plus)];
    if (map[v].minus >= 0) sol.point[v] -= colval[static_cast<std::size_t>(map[v].minus)];
    if (!lp.objective[v].is_zero()) sol.value += lp.objective[v] * sol.point[v];
  }
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (ConstraintSystem::slack(sys.row(i), sol.point).is_zero()) sol.tight_rows.push_back(i);
  }
  return sol;
}

IncrementalLp::IncrementalLp(LinearProgram lp) : impl_(std::make_unique<Impl>()) {
  const auto nv = static_cast<std::size_t>(lp.system.num_vars());
  if (lp.objective.size() != nv) throw std::invalid_argument("objective size mismatch");
  if (!lp.sign.empty() && lp.sign.size() != nv) throw std::invalid_argument("sign size mismatch");
  impl_->lp = std::move(lp);
}

IncrementalLp::~IncrementalLp() = default;
IncrementalLp::IncrementalLp(IncrementalLp&&) noexcept = default;
IncrementalLp& IncrementalLp::operator=(IncrementalLp&&) noexcept = default;

void IncrementalLp::add_row(const Row& r) {
  if (r.rel == Relation::Equal) throw std::invalid_argument("only inequality rows can be added");
  impl_->lp.system.add(r);
  if (impl_->solved && !impl_->infeasible && !impl_->unbounded) impl_->append_row(r);
}

const LinearProgram& IncrementalLp::program() const { return impl_->lp; }

IncrementalLp IncrementalLp::clone() const {
  IncrementalLp copy(impl_->lp);
  *copy.impl_ = *impl_;
  return copy;
}

void IncrementalLp::set_objective(std::vector<Rational> objective) {
  Impl& m = *impl_;
  if (objective.size() != m.lp.objective.size()) throw std::invalid_argument("objective size mismatch");
  m.lp.objective = std::move(objective);
  if (!m.solved || m.infeasible) return;
  m.unbounded = false;
  m.price();
}

LpSolution IncrementalLp::solve() {
  Impl& m = *impl_;
  if (!m.solved) {
    m.solved = true;
    m.initial_solve();
  } else if (!m.infeasible && !m.unbounded) {
    if (!m.tab.dual_optimize()) {
      m.infeasible = true;
    } else {
      m.unbounded = !m.tab.optimize();
    }
  }
  return m.extract();
}

LpSolution solve_lp(const LinearProgram& lp) { return IncrementalLp(lp).solve(); }

PolytopeLp solve_polytope_lp(Kind kind, int n, int t, const std::vector<Rational>& arc_costs,
                             CutMode mode) {
  LinearProgram lp;
  lp.system = build_polytope(kind, n, t, mode);
  lp.objective = arc_costs;
  if (lp.objective.size() != static_cast<std::size_t>(num_arcs(n))) {
    throw std::invalid_argument("arc cost vector has wrong size");
  }
  if (mode == CutMode::None) {
    for (int k = 1; k < t; ++k) lp.system.add(cut_row(n, NodeSet{1} << k));
  }
  PolytopeLp out;
  for (;;) {
    out.solution = solve_lp(lp);
    if (out.solution.status != LpStatus::Optimal) return out;
    out.x = ArcVector(n);
    for (int a = 0; a < num_arcs(n); ++a) out.x[a] = out.solution.point[static_cast<std::size_t>(a)];
    if (mode != CutMode::None) return out;
    auto w = separate_cut(out.x, t);
    if (!w) return out;
    lp.system.add(cut_row(n, *w));
    ++out.separation_rounds;
  }
}

}  // namespace steinergap
