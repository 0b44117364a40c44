#include "steinergap/formulations.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "steinergap/guards.hpp"

namespace steinergap {

bool reduced_cuts_valid(int n, int t) { return 2 * t <= n + 2; }

CutFamily enumerate_cuts(int n, int t, bool reduced) {
  if (t < 2 || t > n) throw std::invalid_argument("enumerate_cuts needs 2 <= t <= n");
  if (n > 63) throw std::invalid_argument("enumerate_cuts supports n <= 63");
  if (reduced && !reduced_cuts_valid(n, t)) {
    throw std::invalid_argument("reduced cut family needs t <= n/2 + 1");
  }
  CutFamily fam;
  fam.n = n;
  fam.t = t;
  fam.reduced = reduced;
  const NodeSet terminal_count = NodeSet{1} << (t - 1);
  const NodeSet steiner_count = NodeSet{1} << (n - t);
  for (NodeSet s = 0; s < steiner_count; ++s) {
    if (reduced && std::popcount(s) > t - 2) continue;
    for (NodeSet w1 = 1; w1 < terminal_count; ++w1) {
      fam.sets.push_back((w1 << 1) | (s << t));
    }
  }
  return fam;
}

const char* row_kind_name(RowKind k) {
  switch (k) {
    case RowKind::BoxLower: return "box-lower";
    case RowKind::BoxUpper: return "box-upper";
    case RowKind::Pairing: return "pairing";
    case RowKind::Cut: return "cut";
    case RowKind::RootInflow: return "root-inflow";
    case RowKind::Inflow: return "inflow";
    case RowKind::TerminalInflow: return "terminal-inflow";
    case RowKind::InOut: return "in-out";
    case RowKind::InOutArc: return "in-out-arc";
    case RowKind::Balance: return "balance";
    case RowKind::FlowConservation: return "flow-conservation";
    case RowKind::Capacity: return "capacity";
    case RowKind::DualFeasibility: return "dual-feasibility";
    case RowKind::Triangle: return "triangle";
    case RowKind::Normalization: return "normalization";
    case RowKind::Other: return "other";
  }
  return "?";
}

void ConstraintSystem::add(Row r) {
  for (const auto& [v, c] : r.coef) {
    if (v < 0 || v >= num_vars_) throw std::out_of_range("row references unknown variable");
  }
  rows_.push_back(std::move(r));
}

Rational ConstraintSystem::activity(const Row& r, const std::vector<Rational>& x) {
  Rational s;
  for (const auto& [v, c] : r.coef) {
    const Rational& xv = x[static_cast<std::size_t>(v)];
    if (xv.is_zero()) continue;
    if (c == Rational(1)) {
      s += xv;
    } else {
      s += c * xv;
    }
  }
  return s;
}

Rational ConstraintSystem::slack(const Row& r, const std::vector<Rational>& x) {
  Rational a = activity(r, x);
  switch (r.rel) {
    case Relation::LessEq: return r.rhs - a;
    case Relation::GreaterEq: return a - r.rhs;
    case Relation::Equal: return (a - r.rhs).abs();
  }
  return {};
}

bool ConstraintSystem::satisfied(const Row& r, const std::vector<Rational>& x) {
  Rational a = activity(r, x);
  switch (r.rel) {
    case Relation::LessEq: return a <= r.rhs;
    case Relation::GreaterEq: return a >= r.rhs;
    case Relation::Equal: return a == r.rhs;
  }
  return false;
}

std::optional<std::size_t> ConstraintSystem::first_violation(const std::vector<Rational>& x) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!satisfied(rows_[i], x)) return i;
  }
  return std::nullopt;
}

std::string ConstraintSystem::describe(std::size_t i) const {
  const Row& r = rows_[i];
  std::ostringstream os;
  os << row_kind_name(r.tag.kind);
  if (r.tag.node >= 0) os << " node=" << r.tag.node + 1;
  if (r.tag.commodity >= 0) os << " commodity=" << r.tag.commodity + 1;
  if (r.tag.arc >= 0) os << " var=" << r.tag.arc;
  if (r.tag.kind == RowKind::Cut) {
    os << " W={";
    bool first = true;
    for (int v = 0; v < 64; ++v) {
      if (contains(r.tag.cut, v)) {
        os << (first ? "" : ",") << v + 1;
        first = false;
      }
    }
    os << "}";
  }
  return os.str();
}

std::string ConstraintSystem::to_text(const std::vector<Rational>* objective) const {
  std::ostringstream os;
  auto term = [&os](const Rational& c, int v, bool first) {
    if (c.sign() < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    Rational a = c.abs();
    if (a != Rational(1)) os << a << " ";
    os << "x" << v;
  };
  if (objective) {
    os << "Minimize\n obj:";
    bool first = true;
    for (std::size_t v = 0; v < objective->size(); ++v) {
      if ((*objective)[v].is_zero()) continue;
      os << (first ? " " : "");
      term((*objective)[v], static_cast<int>(v), first);
      first = false;
    }
    if (first) os << " 0";
    os << "\n";
  }
  os << "Subject To\n";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    os << " r" << i << " [" << describe(i) << "]: ";
    bool first = true;
    for (const auto& [v, c] : r.coef) {
      term(c, v, first);
      first = false;
    }
    if (first) os << "0";
    os << (r.rel == Relation::LessEq ? " <= " : r.rel == Relation::GreaterEq ? " >= " : " = ");
    os << r.rhs << "\n";
  }
  os << "End\n";
  return os.str();
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::BCR: return "bcr";
    case Kind::SJ: return "sj";
    case Kind::CM: return "cm";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "bcr") return Kind::BCR;
  if (l == "sj") return Kind::SJ;
  if (l == "cm") return Kind::CM;
  throw std::invalid_argument("unknown formulation: " + s);
}

Row cut_row(int n, NodeSet w) {
  Row r;
  r.rel = Relation::GreaterEq;
  r.rhs = 1;
  r.tag.kind = RowKind::Cut;
  r.tag.cut = w;
  for (int i = 0; i < n; ++i) {
    if (contains(w, i)) continue;
    for (int j = 0; j < n; ++j) {
      if (contains(w, j)) r.coef.emplace_back(arc_index(n, i, j), 1);
    }
  }
  std::sort(r.coef.begin(), r.coef.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

namespace {

Row inflow_row(int n, int v, RowKind kind, Relation rel, Rational rhs) {
  Row r;
  r.rel = rel;
  r.rhs = std::move(rhs);
  r.tag.kind = kind;
  r.tag.node = v;
  for (int u = 0; u < n; ++u) {
    if (u != v) r.coef.emplace_back(arc_index(n, u, v), 1);
  }
  return r;
}

// coefficient `in` on inflow and `out` on outflow of v
Row in_out_row(int n, int v, const Rational& in, const Rational& out, RowKind kind) {
  Row r;
  r.rel = Relation::LessEq;
  r.rhs = 0;
  r.tag.kind = kind;
  r.tag.node = v;
  for (int u = 0; u < n; ++u) {
    if (u == v) continue;
    r.coef.emplace_back(arc_index(n, u, v), in);
    r.coef.emplace_back(arc_index(n, v, u), out);
  }
  std::sort(r.coef.begin(), r.coef.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

void add_box(ConstraintSystem& sys, int vars) {
  for (int a = 0; a < vars; ++a) {
    Row lo;
    lo.coef.emplace_back(a, 1);
    lo.rel = Relation::GreaterEq;
    lo.rhs = 0;
    lo.tag.kind = RowKind::BoxLower;
    lo.tag.arc = a;
    sys.add(std::move(lo));
    Row hi;
    hi.coef.emplace_back(a, 1);
    hi.rel = Relation::LessEq;
    hi.rhs = 1;
    hi.tag.kind = RowKind::BoxUpper;
    hi.tag.arc = a;
    sys.add(std::move(hi));
  }
}

void add_pairing(ConstraintSystem& sys, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Row r;
      int a = arc_index(n, i, j);
      int b = arc_index(n, j, i);
      r.coef.emplace_back(std::min(a, b), 1);
      r.coef.emplace_back(std::max(a, b), 1);
      r.rel = Relation::LessEq;
      r.rhs = 1;
      r.tag.kind = RowKind::Pairing;
      r.tag.arc = a;
      sys.add(std::move(r));
    }
  }
}

}  // namespace

ConstraintSystem build_polytope(Kind kind, int n, int t, CutMode mode) {
  if (t < 2 || t > n) throw std::invalid_argument("build_polytope needs 2 <= t <= n");
  const int m = num_arcs(n);
  ConstraintSystem sys(m);
  add_box(sys, m);
  if (kind == Kind::BCR) add_pairing(sys, n);
  bool reduced = false;
  if (mode == CutMode::Reduced) {
    if (kind != Kind::CM) throw std::invalid_argument("reduced cuts apply to CM only");
    reduced = true;
  } else if (mode == CutMode::Auto) {
    reduced = kind == Kind::CM && reduced_cuts_valid(n, t);
  }
  if (mode != CutMode::None) {
    for (NodeSet w : enumerate_cuts(n, t, reduced).sets) sys.add(cut_row(n, w));
  }
  if (kind == Kind::BCR) return sys;

  sys.add(inflow_row(n, 0, RowKind::RootInflow, Relation::Equal, 0));
  if (kind == Kind::SJ) {
    for (int v = 1; v < t; ++v) {
      sys.add(inflow_row(n, v, RowKind::TerminalInflow, Relation::Equal, 1));
    }
    for (int v = t; v < n; ++v) {
      sys.add(inflow_row(n, v, RowKind::Inflow, Relation::LessEq, 1));
      sys.add(in_out_row(n, v, 1, -1, RowKind::InOut));
      for (int w = 0; w < n; ++w) {
        if (w == v) continue;
        Row r = inflow_row(n, v, RowKind::InOutArc, Relation::GreaterEq, 0);
        r.coef.emplace_back(arc_index(n, v, w), -1);
        std::sort(r.coef.begin(), r.coef.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        r.tag.arc = arc_index(n, v, w);
        sys.add(std::move(r));
      }
    }
    return sys;
  }
  for (int v = 1; v < n; ++v) {
    sys.add(inflow_row(n, v, RowKind::Inflow, Relation::LessEq, 1));
  }
  for (int v = t; v < n; ++v) sys.add(in_out_row(n, v, 2, -1, RowKind::Balance));
  return sys;
}

ConstraintSystem build_mcf(int n, int t) {
  if (t < 2 || t > n) throw std::invalid_argument("build_mcf needs 2 <= t <= n");
  const int m = num_arcs(n);
  ConstraintSystem sys(m * t);
  add_box(sys, m * t);
  add_pairing(sys, n);
  for (int k = 1; k < t; ++k) {
    const int base = m * k;
    for (int v = 0; v < n; ++v) {
      Row r;
      r.rel = Relation::Equal;
      r.rhs = v == 0 ? -1 : (v == k ? 1 : 0);
      r.tag.kind = RowKind::FlowConservation;
      r.tag.node = v;
      r.tag.commodity = k;
      for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        r.coef.emplace_back(base + arc_index(n, u, v), 1);
        r.coef.emplace_back(base + arc_index(n, v, u), -1);
      }
      std::sort(r.coef.begin(), r.coef.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      sys.add(std::move(r));
    }
    for (int a = 0; a < m; ++a) {
      Row r;
      r.coef.emplace_back(a, -1);
      r.coef.emplace_back(base + a, 1);
      r.rel = Relation::LessEq;
      r.rhs = 0;
      r.tag.kind = RowKind::Capacity;
      r.tag.arc = a;
      r.tag.commodity = k;
      sys.add(std::move(r));
    }
  }
  return sys;
}

std::optional<NodeSet> separate_cut(const ArcVector& x, int t) {
  const int n = x.n();
  for (int k = 1; k < t; ++k) {
    std::vector<Rational> flow(static_cast<std::size_t>(num_arcs(n)));
    Rational total;
    auto residual = [&](int i, int j) {
      return x.at(i, j) - flow[static_cast<std::size_t>(arc_index(n, i, j))] +
             flow[static_cast<std::size_t>(arc_index(n, j, i))];
    };
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (;;) {
      std::fill(parent.begin(), parent.end(), -1);
      parent[0] = 0;
      std::deque<int> queue{0};
      while (!queue.empty() && parent[static_cast<std::size_t>(k)] < 0) {
        int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < n; ++v) {
          if (v == u || parent[static_cast<std::size_t>(v)] >= 0) continue;
          if (residual(u, v).sign() > 0) {
            parent[static_cast<std::size_t>(v)] = u;
            queue.push_back(v);
          }
        }
      }
      if (parent[static_cast<std::size_t>(k)] < 0) break;
      Rational bottleneck = Rational(1) - total;
      for (int v = k; v != 0; v = parent[static_cast<std::size_t>(v)]) {
        Rational r = residual(parent[static_cast<std::size_t>(v)], v);
        if (r < bottleneck) bottleneck = r;
      }
      for (int v = k; v != 0; v = parent[static_cast<std::size_t>(v)]) {
        int u = parent[static_cast<std::size_t>(v)];
        Rational& back = flow[static_cast<std::size_t>(arc_index(n, v, u))];
        if (back.sign() > 0) {
          Rational cancel = back < bottleneck ? back : bottleneck;
          back -= cancel;
          flow[static_cast<std::size_t>(arc_index(n, u, v))] += bottleneck - cancel;
        } else {
          flow[static_cast<std::size_t>(arc_index(n, u, v))] += bottleneck;
        }
      }
      total += bottleneck;
      if (total >= Rational(1)) break;
    }
    if (total < Rational(1)) {
      NodeSet w = 0;
      for (int v = 0; v < n; ++v) {
        if (parent[static_cast<std::size_t>(v)] < 0) w |= NodeSet{1} << v;
      }
      return w;
    }
  }
  return std::nullopt;
}

namespace {

void emit_tree(int n, const std::vector<std::pair<int, int>>& edges,
               const std::function<void(const ArcVector&)>& fn) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  ArcVector x(n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      x.set(u, v, 1);
      queue.push_back(v);
    }
  }
  fn(x);
}

void cm_solutions(int n, int t, const std::function<void(const ArcVector&)>& fn) {
  const int steiner = n - t;
  for (NodeSet s = 0; s < (NodeSet{1} << steiner); ++s) {
    if (std::popcount(s) > t - 2) continue;
    std::vector<int> nodes;
    for (int v = 0; v < t; ++v) nodes.push_back(v);
    for (int k = 0; k < steiner; ++k) {
      if (contains(s, k)) nodes.push_back(t + k);
    }
    const int size = static_cast<int>(nodes.size());
    if (size == 2) {
      emit_tree(n, {{nodes[0], nodes[1]}}, fn);
      continue;
    }
    // Pruefer sequences over positions 0..size-1.
    std::vector<int> seq(static_cast<std::size_t>(size - 2), 0);
    for (;;) {
      std::vector<int> degree(static_cast<std::size_t>(size), 1);
      for (int p : seq) ++degree[static_cast<std::size_t>(p)];
      bool ok = true;
      for (int p = t; p < size; ++p) {
        if (degree[static_cast<std::size_t>(p)] < 3) ok = false;
      }
      if (ok) {
        std::vector<std::pair<int, int>> edges;
        std::vector<int> deg = degree;
        for (int p : seq) {
          int leaf = 0;
          while (deg[static_cast<std::size_t>(leaf)] != 1) ++leaf;
          edges.emplace_back(nodes[static_cast<std::size_t>(leaf)], nodes[static_cast<std::size_t>(p)]);
          --deg[static_cast<std::size_t>(leaf)];
          --deg[static_cast<std::size_t>(p)];
        }
        int a = -1;
        int b = -1;
        for (int p = 0; p < size; ++p) {
          if (deg[static_cast<std::size_t>(p)] == 1) (a < 0 ? a : b) = p;
        }
        edges.emplace_back(nodes[static_cast<std::size_t>(a)], nodes[static_cast<std::size_t>(b)]);
        emit_tree(n, edges, fn);
      }
      int pos = size - 3;
      while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == size - 1) {
        seq[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++seq[static_cast<std::size_t>(pos)];
    }
  }
}

bool terminals_reachable(const ArcVector& x, int t) {
  const int n = x.n();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (v != u && !seen[static_cast<std::size_t>(v)] && !x.at(u, v).is_zero()) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  for (int v = 0; v < t; ++v) {
    if (!seen[static_cast<std::size_t>(v)]) return false;
  }
  return true;
}

void bcr_solutions(int n, int t, const std::function<void(const ArcVector&)>& fn) {
  const int e = num_edges(n);
  std::vector<int> state(static_cast<std::size_t>(e), 0);
  ArcVector x(n);
  for (;;) {
    if (terminals_reachable(x, t)) fn(x);
    int pos = e - 1;
    while (pos >= 0 && state[static_cast<std::size_t>(pos)] == 2) {
      state[static_cast<std::size_t>(pos)] = 0;
      auto [i, j] = edge_ends(n, pos);
      x.set(i, j, 0);
      x.set(j, i, 0);
      --pos;
    }
    if (pos < 0) break;
    auto [i, j] = edge_ends(n, pos);
    int s = ++state[static_cast<std::size_t>(pos)];
    x.set(i, j, s == 1 ? 1 : 0);
    x.set(j, i, s == 2 ? 1 : 0);
  }
}

// Every non-root node picks at most one parent; terminals must pick one.
// Steiner nodes with a parent need a child and those without need none.
void sj_solutions(int n, int t, const std::function<void(const ArcVector&)>& fn) {
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  ArcVector x(n);
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      std::vector<int> children(static_cast<std::size_t>(n), 0);
      for (int u = 1; u < n; ++u) {
        if (parent[static_cast<std::size_t>(u)] >= 0) ++children[static_cast<std::size_t>(parent[static_cast<std::size_t>(u)])];
      }
      for (int u = t; u < n; ++u) {
        bool in = parent[static_cast<std::size_t>(u)] >= 0;
        if (in != (children[static_cast<std::size_t>(u)] > 0)) return;
      }
      if (terminals_reachable(x, t)) fn(x);
      return;
    }
    if (v >= t) rec(v + 1);
    for (int p = 0; p < n; ++p) {
      if (p == v) continue;
      parent[static_cast<std::size_t>(v)] = p;
      x.set(p, v, 1);
      rec(v + 1);
      x.set(p, v, 0);
    }
    parent[static_cast<std::size_t>(v)] = -1;
  };
  rec(1);
}

}  // namespace

void for_each_integer_solution(Kind kind, int n, int t,
                               const std::function<void(const ArcVector&)>& fn) {
  if (t < 2 || t > n) throw std::invalid_argument("integer_solutions needs 2 <= t <= n");
  switch (kind) {
    case Kind::CM:
      check_guard("integer_n", n, guards().integer_solutions_max_n, "integer_solutions n");
      cm_solutions(n, t, fn);
      return;
    case Kind::BCR:
      check_guard("bcr_integer_n", n, guards().bcr_integer_max_n, "BCR integer_solutions n");
      bcr_solutions(n, t, fn);
      return;
    case Kind::SJ:
      check_guard("integer_n", n, guards().integer_solutions_max_n, "integer_solutions n");
      sj_solutions(n, t, fn);
      return;
  }
}

std::vector<ArcVector> integer_solutions(Kind kind, int n, int t) {
  std::vector<ArcVector> out;
  for_each_integer_solution(kind, n, t, [&](const ArcVector& x) { out.push_back(x); });
  return out;
}

}  // namespace steinergap
