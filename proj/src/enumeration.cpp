#include "steinergap/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "steinergap/canonical.hpp"
#include "steinergap/gap.hpp"
#include "steinergap/guards.hpp"
#include "steinergap/simplex.hpp"
#include "steinergap/steiner.hpp"
#include "steinergap/support.hpp"
#include "steinergap/vertex.hpp"

namespace steinergap {

std::optional<VertexRecord> make_record(const ArcVector& x, int t, Kind kind, Source src,
                                        const ConstraintSystem& sys, bool with_gap) {
  if (!certify_vertex(x, sys).vertex) return std::nullopt;
  VertexRecord r;
  r.n = x.n();
  r.t = t;
  r.kind = kind;
  r.x = x;
  r.key = src == Source::ENUM ? labeled_key(x) : canonical_key(x, t);
  r.sources = {src};
  r.spanning = support_graph(x, t).spanning();
  if (with_gap) {
    GapResult g = gap_of(x, t, kind);
    if (g.status == GapStatus::Certified) {
      r.gap = g.gap;
      r.certificate = gap_certificate_json(g, x);
    } else {
      r.gap_infeasible = true;
    }
  }
  return r;
}

namespace {

using Task = std::function<std::vector<VertexRecord>()>;

// Runs tasks on a small pool and merges results in submission order, so the
// output does not depend on the number of workers.
class Pipeline {
 public:
  explicit Pipeline(const EnumOptions& opt) : opt_(opt) {}

  void push(Task task) { tasks_.push_back(std::move(task)); }

  void graph_done(std::string key) {
    ++stats.graphs;
    pending_graphs_.push_back(std::move(key));
    if (tasks_.size() >= kBatch) flush();
  }

  void flush() {
    std::vector<std::vector<VertexRecord>> out(tasks_.size());
    int jobs = std::max(1, opt_.jobs);
    if (jobs == 1 || tasks_.size() < 2) {
      for (std::size_t k = 0; k < tasks_.size(); ++k) out[k] = tasks_[k]();
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      std::exception_ptr failure;
      std::mutex failure_mutex;
      for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
          for (std::size_t k = next++; k < tasks_.size(); k = next++) {
            try {
              out[k] = tasks_[k]();
            } catch (...) {
              std::lock_guard<std::mutex> lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
      for (auto& th : pool) th.join();
      if (failure) std::rethrow_exception(failure);
    }
    stats.candidates += static_cast<long>(tasks_.size());
    tasks_.clear();
    for (auto& batch : out) {
      for (auto& r : batch) {
        ++stats.vertices;
        if (opt_.on_record) opt_.on_record(r);
        auto [it, inserted] = merged_.try_emplace(r.key, r);
        if (!inserted) {
          for (Source s : r.sources) it->second.add_source(s);
        }
      }
    }
    if (opt_.on_graph_done) {
      for (const auto& g : pending_graphs_) opt_.on_graph_done(g);
    }
    pending_graphs_.clear();
    if (opt_.on_progress) opt_.on_progress(stats);
  }

  EnumResult finish() {
    flush();
    EnumResult res;
    res.stats = stats;
    for (auto& [key, r] : merged_) res.records.push_back(std::move(r));
    return res;
  }

  EnumStats stats;

 private:
  static constexpr std::size_t kBatch = 256;
  const EnumOptions& opt_;
  std::vector<Task> tasks_;
  std::vector<std::string> pending_graphs_;
  std::map<std::string, VertexRecord> merged_;
};

// Node relabeling: root first, then terminals, then Steiner nodes, each
// group in increasing original index.
std::vector<int> role_order(int n, int root, const std::vector<bool>& terminal) {
  std::vector<int> new_of_old(static_cast<std::size_t>(n), -1);
  int next = 0;
  new_of_old[static_cast<std::size_t>(root)] = next++;
  for (int v = 0; v < n; ++v) {
    if (v != root && terminal[static_cast<std::size_t>(v)]) new_of_old[static_cast<std::size_t>(v)] = next++;
  }
  for (int v = 0; v < n; ++v) {
    if (new_of_old[static_cast<std::size_t>(v)] < 0) new_of_old[static_cast<std::size_t>(v)] = next++;
  }
  return new_of_old;
}

}  // namespace

bool phi_feasible(int n, int t) { return 3 * t - n - 4 >= 0; }

bool poq_feasible(int n, int t) { return n + 3 * t - 4 <= n * (n - 1) / 2; }

GenSpec pure_graph_spec(int n, int t, int m) {
  GenSpec s;
  s.n = n;
  s.min_edges = s.max_edges = n + (m - 1) * t - m;
  s.min_degree = std::min(3, m);
  s.connected = true;
  if (m == 2) s.max_degree2 = t;
  if (m > 3) s.max_degree3 = n - t;
  return s;
}

OrientSpec pure_orient_spec(int n, int t, int m) {
  OrientSpec o;
  o.max_indegree = m;
  o.single_direction = true;
  o.indegree_counts.assign(static_cast<std::size_t>(m) + 1, 0);
  o.indegree_counts[0] = 1;
  o.indegree_counts[1] = n - t;
  o.indegree_counts[static_cast<std::size_t>(m)] += t - 1;
  return o;
}

std::string pure_filter_failure(const ArcVector& x, int t, int m) {
  int n = x.n();
  Rational value(1, m);
  int arcs = 0;
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (int a : x.support()) {
    auto [i, j] = arc_ends(n, a);
    if (x[a] != value) return "arc value " + x[a].str() + " differs from " + value.str();
    if (x.at(j, i) != 0) return "both directions carry value on {" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + "}";
    ++arcs;
    ++indeg[static_cast<std::size_t>(j)];
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
  }
  GenSpec g = pure_graph_spec(n, t, m);
  if (arcs != g.min_edges) return "arc count " + std::to_string(arcs) + " != " + std::to_string(g.min_edges);
  int low = 0;
  for (int v = 0; v < n; ++v) {
    int d = deg[static_cast<std::size_t>(v)];
    if (d < g.min_degree) return "node " + std::to_string(v + 1) + " has degree " + std::to_string(d);
    if (d == g.min_degree) ++low;
    int want = v == 0 ? 0 : (v < t ? m : 1);
    if (indeg[static_cast<std::size_t>(v)] != want) {
      return "node " + std::to_string(v + 1) + " has indegree " +
             std::to_string(indeg[static_cast<std::size_t>(v)]) + ", expected " + std::to_string(want);
    }
  }
  int cap = g.min_degree == 2 ? g.max_degree2 : g.max_degree3;
  if (cap >= 0 && low > cap) {
    return std::to_string(low) + " nodes of degree " + std::to_string(g.min_degree) + " exceed " +
           std::to_string(cap);
  }
  return {};
}

EnumResult run_pure(int n, int t, int m, const EnumOptions& opt) {
  if (t < 3 || t >= n) throw std::invalid_argument("pure search needs 3 <= t < n");
  if (m != 2 && m != 4) throw std::invalid_argument("pure search supports m = 2 and m = 4 only");
  Source src = m == 2 ? Source::PHI : Source::POQ;
  Pipeline pipe(opt);
  if (m == 2 && !phi_feasible(n, t)) return pipe.finish();
  if (m == 4 && !poq_feasible(n, t)) {
    throw std::invalid_argument("POQ needs n + 3t - 4 <= n(n-1)/2, got " +
                                std::to_string(n + 3 * t - 4) + " > " + std::to_string(n * (n - 1) / 2));
  }
  auto sys = std::make_shared<ConstraintSystem>(build_polytope(Kind::CM, n, t, CutMode::Full));
  GenSpec gs = pure_graph_spec(n, t, m);
  OrientSpec os = pure_orient_spec(n, t, m);
  Rational value(1, m);
  bool with_gap = opt.with_gap;
  gen_graphs(gs, [&](const SimpleGraph& g) {
    std::string gkey = graph_certificate(g);
    if (opt.skip_graphs.count(gkey)) {
      ++pipe.stats.skipped;
      return;
    }
    gen_orientations(g, os, [&](const ArcList& arcs) {
      std::vector<int> indeg(static_cast<std::size_t>(n), 0);
      for (auto [a, b] : arcs) ++indeg[static_cast<std::size_t>(b)];
      int root = static_cast<int>(std::find(indeg.begin(), indeg.end(), 0) - indeg.begin());
      std::vector<bool> terminal(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) terminal[static_cast<std::size_t>(v)] = indeg[static_cast<std::size_t>(v)] == m;
      auto map = role_order(n, root, terminal);
      ArcVector x(n);
      for (auto [a, b] : arcs) x.set(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)], value);
      pipe.push([x, t, src, sys, with_gap]() {
        std::vector<VertexRecord> out;
        if (auto r = make_record(x, t, Kind::CM, src, *sys, with_gap)) out.push_back(std::move(*r));
        return out;
      });
    });
    pipe.graph_done(gkey);
  });
  return pipe.finish();
}

EnumResult run_phi(int n, int t, const EnumOptions& opt) { return run_pure(n, t, 2, opt); }

EnumResult run_poq(int n, int t, const EnumOptions& opt) { return run_pure(n, t, 4, opt); }

namespace {

// Every OTC LP starts from the same feasible basis, so results do not depend
// on the order in which workers pick them up.
std::vector<VertexRecord> otc_solve(int n, int t, const std::vector<std::pair<int, int>>& edges,
                                    const ConstraintSystem& sys, const IncrementalLp& start, bool hunt,
                                    bool with_gap) {
  std::vector<VertexRecord> out;
  SteinerInstance inst = one_two_cost_instance(n, t, edges);
  LinearProgram lp;
  lp.system = sys;
  lp.objective = arc_costs(inst);
  lp.sign.assign(static_cast<std::size_t>(sys.num_vars()), VarSign::NonNeg);
  IncrementalLp solver = start.clone();
  solver.set_objective(lp.objective);
  LpSolution sol = solver.solve();
  if (sol.status != LpStatus::Optimal) return out;
  ArcVector x(n);
  for (int a = 0; a < x.size(); ++a) x[a] = sol.point[static_cast<std::size_t>(a)];
  if (!x.is_integral()) {
    if (auto r = make_record(x, t, Kind::CM, Source::OTC, sys, with_gap)) out.push_back(std::move(*r));
    return out;
  }
  if (!hunt) return out;
  // Optimal face: c.x <= optimum, then maximize each coordinate from the
  // optimal basis.
  Row face;
  for (int a = 0; a < x.size(); ++a) {
    const Rational& c = lp.objective[static_cast<std::size_t>(a)];
    if (!c.is_zero()) face.coef.emplace_back(a, c);
  }
  face.rel = Relation::LessEq;
  face.rhs = sol.value;
  solver.add_row(face);
  std::set<std::string> seen;
  for (int a = 0; a < x.size(); ++a) {
    IncrementalLp sub = solver.clone();
    std::vector<Rational> obj(lp.objective.size());
    obj[static_cast<std::size_t>(a)] = -1;
    sub.set_objective(std::move(obj));
    LpSolution s = sub.solve();
    if (s.status != LpStatus::Optimal) continue;
    ArcVector y(n);
    for (int b = 0; b < y.size(); ++b) y[b] = s.point[static_cast<std::size_t>(b)];
    if (y.is_integral()) continue;
    auto r = make_record(y, t, Kind::CM, Source::OTC, sys, with_gap);
    if (r && seen.insert(r->key).second) out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace

EnumResult run_otc(int n, int t, const OtcOptions& otc, const EnumOptions& opt) {
  if (t < 3 || t >= n) throw std::invalid_argument("OTC needs 3 <= t < n");
  check_guard("otc_n", n, guards().otc_max_n, "OTC with n=" + std::to_string(n));
  Pipeline pipe(opt);
  auto sys = std::make_shared<ConstraintSystem>(build_polytope(Kind::CM, n, t, CutMode::Full));
  LinearProgram base;
  base.system = *sys;
  base.objective.assign(static_cast<std::size_t>(sys->num_vars()), Rational(0));
  auto start = std::make_shared<IncrementalLp>(base);
  start->solve();
  GenSpec gs;
  gs.n = n;
  gs.connected = otc.connected;
  gs.min_edges = otc.connected ? n : 1;
  gs.max_edges = otc.edge_bound ? std::min(n * t - t * t, n * (n - 1) / 2) : n * (n - 1) / 2;
  bool hunt = otc.hunt;
  bool with_gap = opt.with_gap;
  if (gs.min_edges <= gs.max_edges) {
    gen_graphs(gs, [&](const SimpleGraph& g) {
      std::string gkey = graph_certificate(g);
      if (opt.skip_graphs.count(gkey)) {
        ++pipe.stats.skipped;
        return;
      }
      auto edges = g.edges();
      std::set<std::string> colored;
      for (std::uint32_t tm = 0; tm < (1U << n); ++tm) {
        if (std::popcount(tm) != t) continue;
        for (int r = 0; r < n; ++r) {
          if (!((tm >> r) & 1U)) continue;
          std::vector<int> color(static_cast<std::size_t>(n), 2);
          std::vector<bool> terminal(static_cast<std::size_t>(n), false);
          for (int v = 0; v < n; ++v) {
            if ((tm >> v) & 1U) {
              color[static_cast<std::size_t>(v)] = 1;
              terminal[static_cast<std::size_t>(v)] = true;
            }
          }
          color[static_cast<std::size_t>(r)] = 0;
          if (!colored.insert(canonical_form(labeled_from_edges(n, edges, color)).certificate).second) continue;
          auto map = role_order(n, r, terminal);
          std::vector<std::pair<int, int>> relabeled;
          for (auto [a, b] : edges) relabeled.emplace_back(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]);
          pipe.push([n, t, relabeled, sys, start, hunt, with_gap]() {
            return otc_solve(n, t, relabeled, *sys, *start, hunt, with_gap);
          });
        }
      }
      pipe.graph_done(gkey);
    });
  }
  return pipe.finish();
}

EnumResult run_exact(Kind kind, int n, int t, const EnumOptions& opt) {
  Pipeline pipe(opt);
  auto sys = std::make_shared<ConstraintSystem>(build_polytope(kind, n, t, CutMode::Full));
  auto verts = enumerate_vertices(*sys);
  bool with_gap = opt.with_gap;
  for (auto& v : verts) {
    ArcVector x(n);
    for (int a = 0; a < x.size(); ++a) x[a] = v[static_cast<std::size_t>(a)];
    pipe.push([x, t, kind, sys, with_gap]() {
      std::vector<VertexRecord> out;
      if (auto r = make_record(x, t, kind, Source::ENUM, *sys, with_gap)) out.push_back(std::move(*r));
      return out;
    });
  }
  return pipe.finish();
}

}  // namespace steinergap
