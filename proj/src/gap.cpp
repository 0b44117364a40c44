#include "steinergap/gap.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <sstream>

#include "steinergap/guards.hpp"
#include "steinergap/io.hpp"
#include "steinergap/steiner.hpp"

namespace steinergap {

namespace {

std::string set_name(NodeSet w) {
  std::string s;
  for (int v = 0; v < 64; ++v) {
    if (contains(w, v)) s += (s.empty() ? "" : ",") + std::to_string(v + 1);
  }
  return s;
}

std::string dual_name(Kind kind, const RowTag& tag, int n) {
  auto arc = [n](int a) {
    auto [i, j] = arc_ends(n, a);
    return std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  switch (tag.kind) {
    case RowKind::BoxUpper: return (kind == Kind::BCR ? "d_" : "y_") + arc(tag.arc);
    case RowKind::Pairing: {
      auto [i, j] = edge_ends(n, tag.arc);
      return "y_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
    }
    case RowKind::Cut: return "z_{" + set_name(tag.cut) + "}";
    case RowKind::Inflow:
    case RowKind::TerminalInflow: return "v_" + std::to_string(tag.node + 1);
    case RowKind::Balance:
    case RowKind::InOut: return "u_" + std::to_string(tag.node + 1);
    case RowKind::RootInflow: return "w_" + std::to_string(tag.node + 1);
    default: return std::string("l_") + row_kind_name(tag.kind);
  }
}

Row normalization_row(int n, const SteinerTree& tree) {
  Row r;
  r.rel = Relation::GreaterEq;
  r.rhs = 1;
  r.tag.kind = RowKind::Normalization;
  std::map<int, Rational> coef;
  for (auto [u, v] : tree.arcs) coef[edge_index(n, u, v)] += 1;
  for (auto& [e, c] : coef) r.coef.emplace_back(e, c);
  return r;
}

}  // namespace

SteinerInstance GapResult::instance() const {
  if (status != GapStatus::Certified) throw GapError("no cost vector for an infeasible gap problem");
  return instance_from_edge_costs(n, t, edge_costs);
}

GapProblem build_gap(const ArcVector& xbar, int t, Kind kind, const GapOptions& opt) {
  const int n = xbar.n();
  const int ne = num_edges(n);
  GapProblem p;
  p.kind = kind;
  p.n = n;
  p.t = t;
  p.xbar = xbar;
  const ConstraintSystem sys = build_polytope(kind, n, t, kind == Kind::CM && opt.reduced_cuts ? CutMode::Reduced : CutMode::Full);
  if (auto bad = sys.first_violation(xbar.values())) {
    throw GapError("point violates row " + std::to_string(*bad) + " (" + sys.describe(*bad) + ")");
  }
  if (opt.reduced_cuts) {
    if (auto w = separate_cut(xbar, t)) {
      ConstraintSystem one(num_arcs(n));
      one.add(cut_row(n, *w));
      throw GapError("point violates " + one.describe(0));
    }
  }

  // One dual variable per tight row (or per edge for shared upper-bound duals).
  std::vector<VarSign> sign(static_cast<std::size_t>(ne), VarSign::NonNeg);
  for (int e = 0; e < ne; ++e) {
    auto [i, j] = edge_ends(n, e);
    p.var_names.push_back("c_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  }
  std::vector<std::vector<std::pair<int, Rational>>> column(static_cast<std::size_t>(num_arcs(n)));
  std::map<int, int> edge_y;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Row& r = sys.row(k);
    if (r.tag.kind == RowKind::BoxLower) continue;
    if (ConstraintSystem::activity(r, xbar.values()) != r.rhs) continue;
    int var = -1;
    if (opt.edge_y && kind == Kind::CM && r.tag.kind == RowKind::BoxUpper) {
      auto [i, j] = arc_ends(n, r.tag.arc);
      const int e = edge_index(n, i, j);
      auto it = edge_y.find(e);
      if (it != edge_y.end()) {
        var = it->second;
      } else {
        var = static_cast<int>(sign.size());
        edge_y[e] = var;
        sign.push_back(VarSign::NonPos);
        auto [a, b] = edge_ends(n, e);
        p.var_names.push_back("y_" + std::to_string(a + 1) + "_" + std::to_string(b + 1));
        p.dual_rows.emplace_back();
      }
      column[static_cast<std::size_t>(arc_index(n, i, j))].emplace_back(var, 1);
      column[static_cast<std::size_t>(arc_index(n, j, i))].emplace_back(var, 1);
      continue;
    }
    var = static_cast<int>(sign.size());
    sign.push_back(r.rel == Relation::LessEq ? VarSign::NonPos
                   : r.rel == Relation::GreaterEq ? VarSign::NonNeg
                                                  : VarSign::Free);
    p.var_names.push_back(dual_name(kind, r.tag, n));
    p.dual_rows.push_back(r.tag);
    if (r.tag.kind == RowKind::Cut) p.tight_cuts.push_back(r.tag.cut);
    for (const auto& [a, c] : r.coef) column[static_cast<std::size_t>(a)].emplace_back(var, c);
  }

  const int vars = static_cast<int>(sign.size());
  ConstraintSystem g(vars);
  // Dual feasibility, with equality on the support of xbar.
  for (int a = 0; a < num_arcs(n); ++a) {
    auto& col = column[static_cast<std::size_t>(a)];
    const bool positive = xbar[a].sign() > 0;
    if (col.empty() && !positive) continue;
    auto [i, j] = arc_ends(n, a);
    Row r;
    r.coef = col;
    r.coef.emplace_back(edge_index(n, i, j), -1);
    r.rel = positive ? Relation::Equal : Relation::LessEq;
    r.rhs = 0;
    r.tag.kind = RowKind::DualFeasibility;
    r.tag.arc = a;
    g.add(std::move(r));
  }
  for (int e = 0; e < ne; ++e) {
    auto [i, j] = edge_ends(n, e);
    for (int k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      Row r;
      r.coef = {{e, 1}, {edge_index(n, i, k), -1}, {edge_index(n, j, k), -1}};
      r.rel = Relation::LessEq;
      r.rhs = 0;
      r.tag.kind = RowKind::Triangle;
      r.tag.arc = e;
      r.tag.node = k;
      g.add(std::move(r));
    }
  }
  p.lp.system = std::move(g);
  p.lp.sign = std::move(sign);
  p.lp.objective.assign(static_cast<std::size_t>(vars), Rational(0));
  for (int e = 0; e < ne; ++e) {
    auto [i, j] = edge_ends(n, e);
    p.lp.objective[static_cast<std::size_t>(e)] = xbar.at(i, j) + xbar.at(j, i);
  }
  return p;
}

GapResult solve_gap(const GapProblem& p) {
  GapResult res;
  res.kind = p.kind;
  res.n = p.n;
  res.t = p.t;
  res.tight_cuts = p.tight_cuts;
  const int ne = num_edges(p.n);
  // Triangle rows enter lazily; the normalization family by row generation.
  LinearProgram base;
  base.objective = p.lp.objective;
  base.sign = p.lp.sign;
  base.system = ConstraintSystem(p.lp.system.num_vars());
  std::vector<const Row*> triangles;
  for (const Row& r : p.lp.system.rows()) {
    if (r.tag.kind == RowKind::Triangle) {
      triangles.push_back(&r);
    } else {
      base.system.add(r);
    }
  }
  std::vector<bool> added(triangles.size(), false);
  IncrementalLp lp(std::move(base));
  for (;;) {
    check_guard("gap_rounds", static_cast<long>(res.rounds), guards().gap_max_rounds,
                "gap row generation rounds");
    ++res.rounds;
    LpSolution sol = lp.solve();
    if (sol.status == LpStatus::Infeasible) {
      res.status = GapStatus::Infeasible;
      return res;
    }
    if (sol.status != LpStatus::Optimal) throw GapError("gap LP is unbounded");
    bool cut = false;
    for (std::size_t k = 0; k < triangles.size(); ++k) {
      if (added[k] || ConstraintSystem::satisfied(*triangles[k], sol.point)) continue;
      lp.add_row(*triangles[k]);
      added[k] = true;
      cut = true;
    }
    if (cut) continue;
    std::vector<Rational> c(sol.point.begin(), sol.point.begin() + ne);
    SteinerInstance inst = instance_from_edge_costs(p.n, p.t, c);
    SteinerTree tree = stp_exact(inst);
    if (tree.cost >= 1) {
      if (sol.value.is_zero()) throw GapError("gap LP optimum is zero");
      res.status = GapStatus::Certified;
      res.lp_value = sol.value;
      res.gap = sol.value.inverse();
      res.edge_costs = std::move(c);
      for (std::size_t k = 0; k < p.dual_rows.size(); ++k) {
        const Rational& v = sol.point[static_cast<std::size_t>(ne) + k];
        if (v.is_zero()) continue;
        if (p.dual_rows[k].kind == RowKind::Other) {
          res.duals.clear();
          break;
        }
        res.duals.push_back({p.dual_rows[k], v});
      }
      return res;
    }
    lp.add_row(normalization_row(p.n, shortcut_tree(inst, tree)));
    ++res.normalization_rows;
  }
}

GapResult gap_of(const ArcVector& xbar, int t, Kind kind, const GapOptions& opt) {
  return solve_gap(build_gap(xbar, t, kind, opt));
}

namespace {

using TagKey = std::tuple<int, int, int, int, NodeSet>;

TagKey tag_key(const RowTag& t) { return {static_cast<int>(t.kind), t.node, t.arc, t.commodity, t.cut}; }

// Weak duality: xbar feasible, sum_r y_r A_r <= c arcwise with y signed by
// the row relation, and sum_r y_r b_r equal to lp_value.
std::optional<std::string> check_duals(const GapResult& r, const ArcVector& xbar, const std::vector<Rational>& costs) {
  const ConstraintSystem sys = build_polytope(r.kind, r.n, r.t, CutMode::Full);
  if (auto bad = sys.first_violation(xbar.values())) return "point violates " + sys.describe(*bad);
  std::map<TagKey, std::size_t> index;
  for (std::size_t k = 0; k < sys.size(); ++k) index.emplace(tag_key(sys.row(k).tag), k);
  std::vector<Rational> reduced(costs);
  Rational bound;
  for (const RowDual& d : r.duals) {
    auto it = index.find(tag_key(d.row));
    if (it == index.end()) return std::string("multiplier on a row that is not in the polytope");
    const Row& row = sys.row(it->second);
    const int s = d.value.sign();
    if ((row.rel == Relation::LessEq && s > 0) || (row.rel == Relation::GreaterEq && s < 0)) {
      return "multiplier of the wrong sign on " + sys.describe(it->second);
    }
    for (const auto& [a, c] : row.coef) reduced[static_cast<std::size_t>(a)] -= d.value * c;
    bound += d.value * row.rhs;
  }
  for (int a = 0; a < num_arcs(r.n); ++a) {
    if (reduced[static_cast<std::size_t>(a)].sign() < 0) {
      auto [i, j] = arc_ends(r.n, a);
      return "multipliers are not dual feasible at arc " + std::to_string(i + 1) + "->" + std::to_string(j + 1);
    }
  }
  if (bound != r.lp_value) return "dual bound is " + bound.str() + ", certificate says " + r.lp_value.str();
  return std::nullopt;
}

json tag_json(const RowTag& t) {
  json j;
  j["row"] = row_kind_name(t.kind);
  if (t.node >= 0) j["node"] = t.node + 1;
  if (t.arc >= 0) j["var"] = t.arc;
  if (t.commodity >= 0) j["commodity"] = t.commodity + 1;
  if (t.kind == RowKind::Cut) {
    json s = json::array();
    for (int v = 0; v < 64; ++v) {
      if (contains(t.cut, v)) s.push_back(v + 1);
    }
    j["set"] = s;
  }
  return j;
}

RowTag tag_from_json(const json& j) {
  RowTag t;
  const std::string name = j.at("row").get<std::string>();
  t.kind = RowKind::Other;
  for (int k = 0; k <= static_cast<int>(RowKind::Other); ++k) {
    if (name == row_kind_name(static_cast<RowKind>(k))) t.kind = static_cast<RowKind>(k);
  }
  if (t.kind == RowKind::Other) throw GapError("unknown row kind in certificate: " + name);
  t.node = j.value("node", 0) - 1;
  t.arc = j.value("var", -1);
  t.commodity = j.value("commodity", 0) - 1;
  for (const auto& v : j.value("set", json::array())) t.cut |= NodeSet{1} << (v.get<int>() - 1);
  return t;
}

}  // namespace

GapCheck verify_gap_certificate(const GapResult& r, const ArcVector& xbar) {
  GapCheck chk;
  auto fail = [&chk](std::string msg) {
    chk.ok = false;
    chk.failure = std::move(msg);
    return chk;
  };
  if (r.status != GapStatus::Certified) return fail("certificate is not certified");
  if (xbar.n() != r.n) return fail("point has " + std::to_string(xbar.n()) + " nodes, certificate " + std::to_string(r.n));
  SteinerInstance inst = r.instance();
  for (int e = 0; e < num_edges(r.n); ++e) {
    if (r.edge_costs[static_cast<std::size_t>(e)].sign() < 0) return fail("negative edge cost");
  }
  auto bad = validate_metric(inst);
  if (!bad.empty()) {
    const auto& v = bad.front();
    return fail("triangle inequality fails: c(" + std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) +
                ") > c(" + std::to_string(v.i + 1) + "," + std::to_string(v.k + 1) + ") + c(" +
                std::to_string(v.k + 1) + "," + std::to_string(v.j + 1) + ")");
  }
  Rational stp = r.n <= guards().stp_brute_max_n ? stp_bruteforce(inst) : stp_exact(inst).cost;
  if (stp < 1) return fail("Steiner tree of cost " + stp.str() + " < 1");
  std::vector<Rational> costs = arc_costs(inst);
  Rational at_x;
  for (int a = 0; a < num_arcs(r.n); ++a) at_x += costs[static_cast<std::size_t>(a)] * xbar[a];
  if (at_x != r.lp_value) return fail("cost of the point is " + at_x.str() + ", certificate says " + r.lp_value.str());
  if (r.duals.empty()) {
    Rational opt = lp_optimum(r.kind, inst);
    if (opt != r.lp_value) return fail("LP optimum is " + opt.str() + ", certificate says " + r.lp_value.str());
  } else if (auto msg = check_duals(r, xbar, costs)) {
    return fail(*msg);
  }
  if (r.gap * r.lp_value != 1) return fail("gap is not the inverse of the LP value");
  return chk;
}

nlohmann::json gap_certificate_json(const GapResult& r, const ArcVector& xbar) {
  json j;
  j["vertex"] = point_to_json(xbar, r.t);
  j["kind"] = kind_name(r.kind);
  if (r.status != GapStatus::Certified) {
    j["status"] = "infeasible";
    return j;
  }
  j["status"] = "certified";
  j["gap"] = r.gap.str();
  j["lp_value"] = r.lp_value.str();
  j["costs"] = cost_matrix_to_json(r.instance());
  json cuts = json::array();
  for (NodeSet w : r.tight_cuts) {
    json s = json::array();
    for (int v = 0; v < r.n; ++v) {
      if (contains(w, v)) s.push_back(v + 1);
    }
    cuts.push_back(s);
  }
  j["tight_cuts"] = cuts;
  if (!r.duals.empty()) {
    json duals = json::array();
    for (const RowDual& d : r.duals) {
      json e = tag_json(d.row);
      e["value"] = d.value.str();
      duals.push_back(e);
    }
    j["duals"] = duals;
  }
  return j;
}

GapResult gap_certificate_from_json(const nlohmann::json& j, ArcVector* xbar) {
  PointFile pf = point_from_json(j.at("vertex"));
  GapResult r;
  r.kind = parse_kind(j.at("kind").get<std::string>());
  r.n = pf.x.n();
  r.t = pf.t;
  if (xbar) *xbar = pf.x;
  if (j.value("status", std::string("certified")) != "certified") return r;
  r.status = GapStatus::Certified;
  r.gap = rational_from_json(j.at("gap"));
  r.lp_value = j.contains("lp_value") ? rational_from_json(j.at("lp_value")) : r.gap.inverse();
  const json& m = j.at("costs");
  if (m.size() != static_cast<std::size_t>(r.n)) throw GapError("cost matrix size does not match the vertex");
  r.edge_costs.resize(static_cast<std::size_t>(num_edges(r.n)));
  for (int e = 0; e < num_edges(r.n); ++e) {
    auto [a, b] = edge_ends(r.n, e);
    r.edge_costs[static_cast<std::size_t>(e)] = rational_from_json(m.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b)));
  }
  for (const auto& s : j.value("tight_cuts", json::array())) {
    NodeSet w = 0;
    for (const auto& v : s) w |= NodeSet{1} << (v.get<int>() - 1);
    r.tight_cuts.push_back(w);
  }
  for (const auto& d : j.value("duals", json::array())) r.duals.push_back({tag_from_json(d), rational_from_json(d.at("value"))});
  return r;
}

}  // namespace steinergap
