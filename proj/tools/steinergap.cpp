#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "steinergap/builtins.hpp"
#include "steinergap/catalog.hpp"
#include "steinergap/enumeration.hpp"
#include "steinergap/gap.hpp"
#include "steinergap/guards.hpp"
#include "steinergap/io.hpp"
#include "steinergap/simplex.hpp"
#include "steinergap/steiner.hpp"
#include "steinergap/support.hpp"
#include "steinergap/vertex.hpp"

using namespace steinergap;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_params(int n, int t, int min_t, bool allow_t_eq_n) {
  if (n < 2 || n > 20) throw UsageError("n must be in [2, 20], got " + std::to_string(n));
  if (t < min_t || t > n || (!allow_t_eq_n && t == n)) {
    throw UsageError("t must satisfy " + std::to_string(min_t) + " <= t " + (allow_t_eq_n ? "<=" : "<") +
                     " n, got (n,t) = (" + std::to_string(n) + "," + std::to_string(t) + ")");
  }
}

std::string render(const Rational& r) { return r.str() + " (" + r.decimal(6) + ")"; }

// "builtin:NAME" or a JSON point file.
PointFile load_point(const std::string& arg, int path_t) {
  if (arg.rfind("builtin:", 0) == 0) {
    Builtin b = builtin(arg.substr(8), path_t);
    return {b.t, b.x};
  }
  return point_from_json(json::parse(read_text_file(arg)));
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

struct Summary {
  long vertices = 0;
  std::optional<Rational> max_gap;
  long at_max = 0;
  long infeasible = 0;
};

Summary summarize(const std::vector<VertexRecord>& recs) {
  Summary s;
  for (const auto& r : recs) {
    ++s.vertices;
    if (r.gap_infeasible) ++s.infeasible;
    if (!r.gap) continue;
    if (!s.max_gap || *r.gap > *s.max_gap) {
      s.max_gap = r.gap;
      s.at_max = 0;
    }
    if (*r.gap == *s.max_gap) ++s.at_max;
  }
  return s;
}

std::string summary_line(const std::string& what, int n, int t, const Summary& s) {
  std::ostringstream os;
  os << what << " (" << n << "," << t << "): " << s.vertices << " vertices";
  if (s.max_gap) os << ", max gap " << s.max_gap->str() << " x" << s.at_max;
  if (s.infeasible) os << ", " << s.infeasible << " not optimal for any metric cost";
  return os.str();
}

// ---- enumerate -------------------------------------------------------------

struct EnumerateArgs {
  std::string heuristic;
  int n = 0;
  int t = 0;
  std::string out = ".";
  std::string kind = "cm";
  bool no_gap = false;
  int jobs = 1;
  std::string checkpoint;
  bool otc_disconnected = false;
  bool no_edge_bound = false;
  bool hunt = false;
  bool quiet = false;
};

int cmd_enumerate(const EnumerateArgs& a) {
  Kind kind = parse_kind(a.kind);
  if (a.heuristic == "exact") {
    check_params(a.n, a.t, 2, true);
  } else {
    check_params(a.n, a.t, 3, false);
    if (kind != Kind::CM) throw UsageError("heuristics produce CM vertices only");
  }
  EnumOptions opt;
  opt.jobs = a.jobs;
  opt.with_gap = !a.no_gap;
  Catalog cat(a.out);
  cat.load_dir();
  opt.on_record = [&](const VertexRecord& r) { cat.add(r); };
  std::ofstream ck;
  if (!a.checkpoint.empty()) {
    if (fs::exists(a.checkpoint)) {
      std::ifstream in(a.checkpoint);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty()) opt.skip_graphs.insert(line);
      }
    }
    ck.open(a.checkpoint, std::ios::app);
    opt.on_graph_done = [&](const std::string& key) { ck << key << '\n' << std::flush; };
  }
  const bool progress = !a.quiet && isatty(2);
  if (progress) {
    opt.on_progress = [](const EnumStats& s) {
      std::cerr << "\rgraphs " << s.graphs << "  candidates " << s.candidates << "  vertices " << s.vertices
                << std::flush;
    };
  }
  EnumResult res;
  if (a.heuristic == "phi") {
    res = run_phi(a.n, a.t, opt);
  } else if (a.heuristic == "poq") {
    res = run_poq(a.n, a.t, opt);
  } else if (a.heuristic == "otc") {
    OtcOptions o;
    o.connected = !a.otc_disconnected;
    o.edge_bound = !a.no_edge_bound;
    o.hunt = a.hunt;
    res = run_otc(a.n, a.t, o, opt);
  } else if (a.heuristic == "exact") {
    res = run_exact(kind, a.n, a.t, opt);
  } else {
    throw UsageError("unknown heuristic: " + a.heuristic);
  }
  if (progress) std::cerr << '\n';
  cat.compact();
  std::string file = (fs::path(a.out) / Catalog::file_name(a.n, a.t, kind, a.heuristic == "exact")).string();
  if (!fs::exists(file)) write_text_file(file, "");
  std::string what = a.heuristic == "exact" ? std::string("exact ") + kind_name(kind) : a.heuristic;
  std::cout << summary_line(what, a.n, a.t, summarize(res.records));
  if (res.stats.skipped) std::cout << " (" << res.stats.skipped << " graphs skipped from checkpoint)";
  std::cout << "\n" << file << '\n';
  return 0;
}

// ---- gap / verify ----------------------------------------------------------

int cmd_gap(const std::string& input, const std::string& kind_s, const std::string& out, bool reduced,
            bool edge_y, int path_t) {
  PointFile p = load_point(input, path_t);
  Kind kind = parse_kind(kind_s);
  GapOptions opt;
  opt.reduced_cuts = reduced;
  opt.edge_y = edge_y;
  if (reduced && !reduced_cuts_valid(p.x.n(), p.t)) {
    throw UsageError("--reduced-cuts needs 2t <= n+2");
  }
  ConstraintSystem sys = build_polytope(kind, p.x.n(), p.t, reduced && kind == Kind::CM ? CutMode::Reduced : CutMode::Full);
  VertexCertificate vc = certify_vertex(p.x, sys);
  if (!vc.vertex) {
    std::cerr << "not a vertex: " << vc.explain(sys) << '\n';
    return 2;
  }
  GapResult r = gap_of(p.x, p.t, kind, opt);
  if (r.status != GapStatus::Certified) {
    std::cout << "not optimal for any metric cost\n";
    return 2;
  }
  GapCheck check = verify_gap_certificate(r, p.x);
  if (!check) {
    std::cerr << "certificate check failed: " << check.failure << '\n';
    return 1;
  }
  std::cout << render(r.gap) << '\n';
  if (!out.empty()) write_text_file(out, gap_certificate_json(r, p.x).dump(2) + "\n");
  return 0;
}

int verify_records(const std::string& path) {
  Catalog scratch;
  std::ifstream in(path);
  std::string line;
  long ok = 0;
  long bad = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    VertexRecord r = record_from_json(json::parse(line));
    std::string failure;
    try {
      scratch.add(r);
      if (!r.certificate.is_null()) {
        ArcVector x;
        GapResult g = gap_certificate_from_json(r.certificate, &x);
        if (!(x == r.x)) failure = "certificate belongs to another point";
        if (failure.empty()) {
          GapCheck c = verify_gap_certificate(g, x);
          if (!c) failure = c.failure;
          if (r.gap && g.gap != *r.gap) failure = "recorded gap differs from certificate";
        }
      }
    } catch (const std::exception& e) {
      failure = e.what();
    }
    if (failure.empty()) {
      ++ok;
    } else {
      ++bad;
      std::cout << path << ":" << lineno << ": " << failure << '\n';
    }
  }
  std::cout << ok << " records verified, " << bad << " failed\n";
  return bad ? 1 : 0;
}

int cmd_verify(const std::string& path, const std::string& kind_s) {
  if (fs::path(path).extension() == ".ndjson") return verify_records(path);
  json j = json::parse(read_text_file(path));
  if (j.contains("costs") && j.contains("vertex")) {
    ArcVector x;
    GapResult r = gap_certificate_from_json(j, &x);
    GapCheck c = verify_gap_certificate(r, x);
    if (!c) {
      std::cout << "certificate rejected: " << c.failure << '\n';
      return 1;
    }
    std::cout << "certificate valid, gap " << render(r.gap) << '\n';
    return 0;
  }
  PointFile p = point_from_json(j);
  Kind kind = parse_kind(kind_s);
  ConstraintSystem sys = build_polytope(kind, p.x.n(), p.t, CutMode::Full);
  VertexCertificate vc = certify_vertex(p.x, sys);
  std::cout << (vc.vertex ? "vertex" : "not a vertex") << " of P_" << kind_name(kind) << "(" << p.x.n() << ","
            << p.t << "): " << vc.explain(sys) << '\n';
  return vc.vertex ? 0 : 1;
}

// ---- closure / solve -------------------------------------------------------

int cmd_closure(const std::string& path, const std::string& out) {
  json j = json::parse(read_text_file(path));
  int n = j.at("n").get<int>();
  int t = j.at("t").get<int>();
  std::vector<WeightedEdge> edges;
  for (const auto& e : j.at("edges")) {
    if (e.is_array()) {
      edges.push_back({e.at(0).get<int>() - 1, e.at(1).get<int>() - 1, rational_from_json(e.at(2))});
    } else {
      edges.push_back({e.at("u").get<int>() - 1, e.at("v").get<int>() - 1, rational_from_json(e.at("w"))});
    }
  }
  write_or_print(out, instance_to_json(metric_closure(n, t, edges)).dump(2) + "\n");
  return 0;
}

int cmd_solve(const std::string& path, const std::string& kind_s, bool show_point) {
  SteinerInstance inst = instance_from_json(json::parse(read_text_file(path)));
  Kind kind = parse_kind(kind_s);
  PolytopeLp lp = solve_polytope_lp(kind, inst.n(), inst.t(), arc_costs(inst), CutMode::None);
  if (lp.solution.status != LpStatus::Optimal) {
    std::cout << "LP " << status_name(lp.solution.status) << '\n';
    return 1;
  }
  SteinerTree tree = stp_exact(inst);
  std::cout << "lp " << kind_name(kind) << " " << render(lp.solution.value) << '\n';
  std::cout << "stp " << render(tree.cost) << '\n';
  if (!lp.solution.value.is_zero()) std::cout << "ratio " << render(tree.cost / lp.solution.value) << '\n';
  if (show_point) std::cout << point_to_json(lp.x, inst.t()).dump() << '\n';
  return 0;
}

// ---- builtin ---------------------------------------------------------------

int cmd_builtin(const std::string& name, int t, const std::string& out, const std::string& instance_out,
                const std::string& dot_out, bool list) {
  if (list) {
    for (const auto& nm : builtin_names()) std::cout << nm << '\n';
    return 0;
  }
  Builtin b = builtin(name, t);
  write_or_print(out, point_to_json(b.x, b.t).dump(2) + "\n");
  if (!dot_out.empty()) write_text_file(dot_out, to_dot(support_graph(b.x, b.t), b.name));
  if (!instance_out.empty()) {
    GapResult r = gap_of(b.x, b.t, Kind::CM);
    if (r.status != GapStatus::Certified) {
      std::cerr << "no metric cost makes this point optimal\n";
      return 2;
    }
    write_text_file(instance_out, instance_to_json(r.instance()).dump(2) + "\n");
  }
  if (!out.empty() && out != "-") {
    std::cout << b.name << ": (n,t) = (" << b.n << "," << b.t << "), " << b.x.support().size() << " arcs\n";
  }
  return 0;
}

// ---- reproduce -------------------------------------------------------------

struct Expect {
  std::string label;
  int n;
  int t;
  long count;
  std::string max_gap;  // empty: no vertex
  long at_max;
};

class Reproducer {
 public:
  Reproducer(double budget, int jobs) : budget_(budget), jobs_(jobs), start_(std::chrono::steady_clock::now()) {}

  bool out_of_budget() const {
    return budget_ > 0 && std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > budget_;
  }

  // Returns false when the budget ran out before this row.
  bool row(const Expect& e, const std::function<std::vector<VertexRecord>()>& run) {
    if (out_of_budget()) {
      incomplete_ = true;
      std::cout << e.label << " (" << e.n << "," << e.t << "): skipped, budget exhausted\n";
      return false;
    }
    auto t0 = std::chrono::steady_clock::now();
    Summary s = summarize(run());
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = s.vertices == e.count;
    if (!e.max_gap.empty()) {
      ok = ok && s.max_gap && *s.max_gap == Rational::parse(e.max_gap) && s.at_max == e.at_max;
    }
    mismatch_ = mismatch_ || !ok;
    std::ostringstream want;
    want << e.count;
    if (!e.max_gap.empty()) want << ", max gap " << e.max_gap << " x" << e.at_max;
    std::cout << (ok ? "match    " : "MISMATCH ") << summary_line(e.label, e.n, e.t, s) << "  [expected " << want.str()
              << "]  " << std::fixed << std::setprecision(1) << dt << "s\n";
    return true;
  }

  void flag(bool ok, const std::string& line) {
    mismatch_ = mismatch_ || !ok;
    std::cout << (ok ? "match    " : "MISMATCH ") << line << '\n';
  }

  int finish() const {
    if (incomplete_) std::cout << "report incomplete: budget exhausted\n";
    if (mismatch_) return 1;
    return incomplete_ ? 3 : 0;
  }

  EnumOptions options() const {
    EnumOptions o;
    o.jobs = jobs_;
    o.with_gap = true;
    return o;
  }

 private:
  double budget_;
  int jobs_;
  std::chrono::steady_clock::time_point start_;
  bool mismatch_ = false;
  bool incomplete_ = false;
};

int cmd_reproduce(const std::string& target, int max_n, double budget, int jobs, bool no_edge_bound) {
  Reproducer rep(budget, jobs);
  if (target == "table1") {
    struct Row {
      Kind kind;
      int n, t;
      long feasible, optimal;
    };
    std::vector<Row> rows = {{Kind::CM, 4, 3, 4, 4}, {Kind::CM, 5, 3, 5, 5}, {Kind::CM, 5, 4, 44, 44},
                             {Kind::BCR, 4, 3, 256, 70}};
    if (max_n >= 5) {
      rows.push_back({Kind::BCR, 5, 3, 28345, 3655});
      rows.push_back({Kind::BCR, 5, 4, 24297, 3645});
    }
    for (const auto& r : rows) {
      if (rep.out_of_budget()) {
        rep.row({std::string("exact ") + kind_name(r.kind), r.n, r.t, r.feasible, "", 0}, {});
        continue;
      }
      EnumResult res = run_exact(r.kind, r.n, r.t, rep.options());
      Summary s = summarize(res.records);
      long optimal = s.vertices - s.infeasible;
      bool gaps_one = true;
      for (const auto& v : res.records) {
        if (v.gap && *v.gap != 1) gaps_one = false;
      }
      std::ostringstream line;
      line << "exact " << kind_name(r.kind) << " (" << r.n << "," << r.t << "): " << s.vertices << " feasible, "
           << optimal << " optimal, max gap " << (s.max_gap ? s.max_gap->str() : "-") << "  [expected "
           << r.feasible << ", " << r.optimal << ", 1]";
      rep.flag(s.vertices == r.feasible && optimal == r.optimal && gaps_one, line.str());
    }
    return rep.finish();
  }
  if (target == "table2" || target == "table3") {
    std::vector<Expect> phi;
    std::vector<Expect> otc;
    if (target == "table2") {
      phi = {{"phi", 6, 4, 1, "1", 1},     {"phi", 6, 5, 7, "1", 7},       {"phi", 7, 4, 2, "10/9", 2},
             {"phi", 7, 5, 46, "1", 46},   {"phi", 7, 6, 71, "1", 71},     {"phi", 8, 4, 0, "", 0},
             {"phi", 8, 5, 89, "12/11", 15}, {"phi", 8, 6, 1070, "1", 1070}, {"phi", 8, 7, 758, "1", 758}};
      otc = {{"otc", 6, 4, 0, "", 0},      {"otc", 6, 5, 0, "", 0},         {"otc", 7, 4, 11, "10/9", 2},
             {"otc", 7, 5, 19, "1", 19},   {"otc", 7, 6, 8, "1", 8},        {"otc", 8, 4, 19, "10/9", 2},
             {"otc", 8, 5, 195, "10/9", 14}, {"otc", 8, 6, 239, "1", 239},  {"otc", 8, 7, 0, "", 0}};
    } else {
      phi = {{"phi", 9, 5, 64, "10/9", 12},       {"phi", 9, 6, 4389, "14/13", 200},
             {"phi", 9, 7, 21121, "1", 21121},    {"phi", 9, 8, 8987, "1", 8987},
             {"phi", 10, 5, 15, "10/9", 7},       {"phi", 10, 6, 7386, "10/9", 73},
             {"phi", 10, 7, 155120, "16/15", 2653}};
    }
    for (const auto& e : phi) {
      if (e.n > max_n) continue;
      rep.row(e, [&] { return run_phi(e.n, e.t, rep.options()).records; });
    }
    OtcOptions o;
    o.edge_bound = !no_edge_bound;
    for (const auto& e : otc) {
      if (e.n > max_n) continue;
      rep.row(e, [&] { return run_otc(e.n, e.t, o, rep.options()).records; });
    }
    return rep.finish();
  }
  if (target == "skutella") {
    Builtin b = builtin("skutella");
    ConstraintSystem sys = build_polytope(Kind::CM, b.n, b.t, CutMode::Reduced);
    VertexCertificate vc = certify_vertex(b.x, sys);
    bool feasible = !separate_cut(b.x, b.t);
    rep.flag(vc.vertex && feasible, std::string("skutella vertex of P_CM(15,8): ") + vc.explain(sys));
    GapOptions go;
    go.reduced_cuts = true;
    GapResult r = gap_of(b.x, b.t, Kind::CM, go);
    bool ok = r.status == GapStatus::Certified && r.gap == Rational(8, 7) && verify_gap_certificate(r, b.x);
    rep.flag(ok, "skutella gap " + (r.status == GapStatus::Certified ? render(r.gap) : std::string("none")) +
                     "  [expected 8/7]");
    return rep.finish();
  }
  throw UsageError("unknown target: " + target + " (table1, table2, table3, skutella)");
}

// ---- report ----------------------------------------------------------------

int cmd_report(const std::string& dir, bool csv, const std::string& source) {
  Catalog cat(dir);
  cat.load_dir();
  std::optional<Source> src;
  if (!source.empty()) {
    std::string up;
    for (char c : source) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    src = parse_source(up);
  }
  auto rows = report(cat.all(), src);
  std::cout << (csv ? report_csv(rows) : report_text(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds on the integrality gap of Steiner tree LP relaxations"};
  app.require_subcommand(1);

  EnumerateArgs ea;
  auto* en = app.add_subcommand("enumerate", "generate, certify and store vertices");
  en->add_option("heuristic", ea.heuristic, "phi, otc, poq or exact")->required()->check(CLI::IsMember({"phi", "otc", "poq", "exact"}));
  en->add_option("n", ea.n)->required();
  en->add_option("t", ea.t)->required();
  en->add_option("--out", ea.out, "catalog directory");
  en->add_option("--kind", ea.kind, "bcr, sj or cm (exact only)");
  en->add_flag("--no-gap", ea.no_gap, "skip the gap LP");
  en->add_option("--jobs", ea.jobs, "certification workers");
  en->add_option("--checkpoint", ea.checkpoint, "file of processed graph keys");
  en->add_flag("--otc-allow-disconnected", ea.otc_disconnected);
  en->add_flag("--no-edge-bound", ea.no_edge_bound, "drop |E| <= n*t - t^2 in OTC");
  en->add_flag("--hunt", ea.hunt, "OTC: also search optimal faces for fractional vertices");
  en->add_flag("--quiet", ea.quiet);

  std::string input;
  std::string kind = "cm";
  std::string out;
  bool reduced = false;
  bool edge_y = false;
  int path_t = 5;
  auto* gap = app.add_subcommand("gap", "solve the gap LP of a vertex");
  gap->add_option("point", input, "point JSON or builtin:NAME")->required();
  gap->add_option("--kind", kind);
  gap->add_option("--out", out, "certificate file");
  gap->add_flag("--reduced-cuts", reduced);
  gap->add_flag("--edge-y", edge_y, "one upper-bound dual per edge");
  gap->add_option("--t", path_t, "t for builtin:path-2t3");

  auto* verify = app.add_subcommand("verify", "check a point, a gap certificate or a catalog file");
  verify->add_option("file", input)->required();
  verify->add_option("--kind", kind);

  auto* closure = app.add_subcommand("closure", "metric closure of a sparse graph");
  closure->add_option("graph", input)->required();
  closure->add_option("--out", out);

  bool show_point = false;
  auto* solve = app.add_subcommand("solve", "LP and integer optimum of an instance");
  solve->add_option("instance", input)->required();
  solve->add_option("--kind", kind);
  solve->add_flag("--point", show_point);

  std::string name;
  std::string instance_out;
  std::string dot_out;
  bool list = false;
  auto* bi = app.add_subcommand("builtin", "emit a built-in point");
  bi->add_option("name", name);
  bi->add_option("--t", path_t, "t for path-2t3");
  bi->add_option("--out", out);
  bi->add_option("--instance", instance_out, "write a metric instance for which the point is optimal");
  bi->add_option("--dot", dot_out);
  bi->add_flag("--list", list);

  std::string target;
  int max_n = 0;
  double budget = 0;
  int jobs = 1;
  bool no_edge_bound = false;
  auto* rp = app.add_subcommand("reproduce", "rerun a table and compare with reference values");
  rp->add_option("target", target, "table1, table2, table3 or skutella")->required();
  rp->add_option("--max-n", max_n, "largest n to run (default 8, 9 for table3)");
  rp->add_option("--budget", budget, "seconds");
  rp->add_option("--jobs", jobs);
  rp->add_flag("--no-edge-bound", no_edge_bound);

  std::string dir = ".";
  bool csv = false;
  std::string source;
  auto* rep = app.add_subcommand("report", "tabulate catalog files");
  rep->add_option("--dir", dir);
  rep->add_flag("--csv", csv);
  rep->add_option("--source", source, "phi, otc, poq, enum, lift");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*en) return cmd_enumerate(ea);
    if (*gap) return cmd_gap(input, kind, out, reduced, edge_y, path_t);
    if (*verify) return cmd_verify(input, kind);
    if (*closure) return cmd_closure(input, out);
    if (*solve) return cmd_solve(input, kind, show_point);
    if (*bi) {
      if (!list && name.empty()) throw UsageError("builtin needs a name (or --list)");
      return cmd_builtin(name, path_t, out, instance_out, dot_out, list);
    }
    if (*rp) {
      if (max_n == 0) max_n = target == "table3" ? 9 : 8;
      return cmd_reproduce(target, max_n, budget, jobs, no_edge_bound);
    }
    if (*rep) return cmd_report(dir, csv, source);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const GuardError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
