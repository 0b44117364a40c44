#include "steinergap/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "steinergap/canonical.hpp"
#include "steinergap/support.hpp"
#include "steinergap/vertex.hpp"

namespace steinergap {

namespace fs = std::filesystem;

namespace {

bool is_labeled(const VertexRecord& r) { return !r.key.empty() && r.key[0] == 'L'; }

}  // namespace

Catalog::Catalog(std::string dir) : dir_(std::move(dir)) {}

std::string Catalog::file_name(int n, int t, Kind kind, bool labeled) {
  std::string name = "catalog-" + std::to_string(n) + "-" + std::to_string(t);
  if (kind != Kind::CM || labeled) name += std::string("-") + kind_name(kind);
  if (labeled) name += "-labeled";
  return name + ".ndjson";
}

std::string Catalog::file_name(const VertexRecord& r) {
  return file_name(r.n, r.t, r.kind, is_labeled(r));
}

AddResult Catalog::add(VertexRecord r) {
  if (r.x.n() != r.n) throw CatalogError("record point has " + std::to_string(r.x.n()) + " nodes, expected " + std::to_string(r.n));
  auto sid = std::make_tuple(r.n, r.t, static_cast<int>(r.kind));
  auto it = systems_.find(sid);
  if (it == systems_.end()) it = systems_.emplace(sid, build_polytope(r.kind, r.n, r.t, CutMode::Full)).first;
  VertexCertificate cert = certify_vertex(r.x, it->second);
  if (!cert.vertex) throw CatalogError("rejected uncertified record: " + cert.explain(it->second));
  std::string key = is_labeled(r) ? labeled_key(r.x) : canonical_key(r.x, r.t);
  if (key != r.key) throw CatalogError("record key does not match its point");
  r.spanning = support_graph(r.x, r.t).spanning();
  AddResult res = merge(r);
  if (!dir_.empty()) append(res == AddResult::Inserted ? r : records_.at({r.n, r.t, static_cast<int>(r.kind), r.key}));
  return res;
}

AddResult Catalog::merge(VertexRecord r) {
  Id id{r.n, r.t, static_cast<int>(r.kind), r.key};
  auto [it, inserted] = records_.try_emplace(id, r);
  if (inserted) return AddResult::Inserted;
  VertexRecord& old = it->second;
  for (Source s : r.sources) old.add_source(s);
  if (!old.gap && r.gap) {
    // the certificate refers to the labeling of r
    old.x = r.x;
    old.gap = r.gap;
    old.certificate = r.certificate;
    old.gap_infeasible = false;
  }
  if (!old.gap && r.gap_infeasible) old.gap_infeasible = true;
  return AddResult::Duplicate;
}

void Catalog::append(const VertexRecord& r) const {
  fs::create_directories(dir_);
  std::ofstream out(fs::path(dir_) / file_name(r), std::ios::app);
  if (!out) throw CatalogError("cannot write to " + dir_);
  out << record_to_json(r).dump() << '\n';
}

void Catalog::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot read " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      merge(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw CatalogError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void Catalog::load_dir() {
  if (dir_.empty() || !fs::exists(dir_)) return;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir_)) {
    auto name = e.path().filename().string();
    if (name.rfind("catalog-", 0) == 0 && e.path().extension() == ".ndjson") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) load_file(f.string());
}

void Catalog::write_file(const std::string& path, int n, int t, Kind kind, bool labeled) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CatalogError("cannot write " + path);
  for (const auto& [id, r] : records_) {
    if (r.n == n && r.t == t && r.kind == kind && is_labeled(r) == labeled) {
      out << record_to_json(r).dump() << '\n';
    }
  }
}

void Catalog::compact() const {
  if (dir_.empty()) return;
  fs::create_directories(dir_);
  std::set<std::tuple<int, int, int, bool>> groups;
  for (const auto& [id, r] : records_) groups.emplace(r.n, r.t, static_cast<int>(r.kind), is_labeled(r));
  for (auto [n, t, k, labeled] : groups) {
    auto kind = static_cast<Kind>(k);
    write_file((fs::path(dir_) / file_name(n, t, kind, labeled)).string(), n, t, kind, labeled);
  }
}

std::vector<const VertexRecord*> Catalog::records(int n, int t, Kind kind) const {
  std::vector<const VertexRecord*> out;
  for (const auto& [id, r] : records_) {
    if (r.n == n && r.t == t && r.kind == kind) out.push_back(&r);
  }
  return out;
}

std::vector<const VertexRecord*> Catalog::all() const {
  std::vector<const VertexRecord*> out;
  for (const auto& [id, r] : records_) out.push_back(&r);
  return out;
}

const VertexRecord* Catalog::find(int n, int t, Kind kind, const std::string& key) const {
  auto it = records_.find({n, t, static_cast<int>(kind), key});
  return it == records_.end() ? nullptr : &it->second;
}

ArcVector lift_add_zero(const ArcVector& x, int /*t*/) {
  int n = x.n();
  ArcVector y(n + 1);
  for (int a : x.support()) {
    auto [i, j] = arc_ends(n, a);
    y.set(i, j, x[a]);
  }
  return y;
}

ArcVector project_remove_zero(const ArcVector& y, int t, int k) {
  int n = y.n();
  if (t >= n) throw std::invalid_argument("projection needs a Steiner node (t < n)");
  auto active = y.active_nodes();
  if (k < 0) {
    for (int v = n - 1; v >= t; --v) {
      if (!active[static_cast<std::size_t>(v)]) {
        k = v;
        break;
      }
    }
    if (k < 0) throw std::invalid_argument("no isolated Steiner node: the point is spanning");
  } else if (k < t || k >= n || active[static_cast<std::size_t>(k)]) {
    throw std::invalid_argument("node " + std::to_string(k + 1) + " is not an isolated Steiner node");
  }
  ArcVector x(n - 1);
  for (int a : y.support()) {
    auto [i, j] = arc_ends(n, a);
    x.set(i > k ? i - 1 : i, j > k ? j - 1 : j, y[a]);
  }
  return x;
}

LiftVariant parse_lift_variant(const std::string& s) {
  if (s == "a") return LiftVariant::A;
  if (s == "b") return LiftVariant::B;
  if (s == "c") return LiftVariant::C;
  throw std::invalid_argument("lift variant must be a, b or c: " + s);
}

ArcVector lift_add_one(const ArcVector& x, int t, LiftVariant variant, int v) {
  int n = x.n();
  ArcVector y(n + 1);
  if (variant == LiftVariant::C) {
    // new root 0, old root 0 -> 1, terminal i -> i+1, Steiner s -> s+1
    for (int a : x.support()) {
      auto [i, j] = arc_ends(n, a);
      y.set(i + 1, j + 1, x[a]);
    }
    y.set(0, 1, 1);
    return y;
  }
  if (v <= 0 || v >= n) throw std::invalid_argument("lift needs a non-root node v");
  if (x.inflow(v) != 1) {
    throw std::invalid_argument("node " + std::to_string(v + 1) + " has inflow " + x.inflow(v).str() +
                                ", the lift needs inflow 1");
  }
  // new terminal at index t; Steiner nodes shift up by one
  auto shift = [t](int u) { return u >= t ? u + 1 : u; };
  for (int a : x.support()) {
    auto [i, j] = arc_ends(n, a);
    int from = (variant == LiftVariant::B && i == v) ? t : shift(i);
    y.set(from, shift(j), x[a]);
  }
  y.set(shift(v), t, 1);
  return y;
}

namespace {

void require_vertex(const ArcVector& y, int t, const char* what) {
  ConstraintSystem sys = build_polytope(Kind::CM, y.n(), t, CutMode::Full);
  VertexCertificate c = certify_vertex(y, sys);
  if (!c.vertex) {
    throw std::logic_error(std::string("internal error: ") + what + " is not a vertex of P_CM(" +
                           std::to_string(y.n()) + "," + std::to_string(t) + "): " + c.explain(sys));
  }
}

}  // namespace

ArcVector certified_lift_add_zero(const ArcVector& x, int t) {
  ArcVector y = lift_add_zero(x, t);
  require_vertex(y, t, "zero lift");
  return y;
}

ArcVector certified_lift_add_one(const ArcVector& x, int t, LiftVariant variant, int v) {
  ArcVector y = lift_add_one(x, t, variant, v);
  require_vertex(y, t + 1, "one lift");
  return y;
}

std::vector<ReportRow> report(const std::vector<const VertexRecord*>& recs, std::optional<Source> source) {
  std::map<std::tuple<int, int, int>, ReportRow> rows;
  for (const VertexRecord* r : recs) {
    if (source && !r->has_source(*source)) continue;
    auto& row = rows[{static_cast<int>(r->kind), r->n, r->t}];
    row.kind = r->kind;
    row.n = r->n;
    row.t = r->t;
    ++row.vertices;
    if (r->gap_infeasible) ++row.infeasible;
    if (!r->gap) continue;
    ++row.with_gap;
    if (!row.max_gap || *r->gap > *row.max_gap) {
      row.max_gap = r->gap;
      row.at_max = 0;
    }
    if (*r->gap == *row.max_gap) ++row.at_max;
  }
  std::vector<ReportRow> out;
  for (auto& [k, row] : rows) out.push_back(row);
  return out;
}

std::string report_text(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(5) << "kind" << std::right << std::setw(4) << "n" << std::setw(4) << "t"
     << std::setw(10) << "vertices" << std::setw(10) << "max gap" << std::setw(12) << "# at max"
     << std::setw(12) << "no metric" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(5) << kind_name(r.kind) << std::right << std::setw(4) << r.n << std::setw(4)
       << r.t << std::setw(10) << r.vertices << std::setw(10) << (r.max_gap ? r.max_gap->str() : "-")
       << std::setw(12) << (r.max_gap ? std::to_string(r.at_max) : "-") << std::setw(12) << r.infeasible
       << '\n';
  }
  return os.str();
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "kind,n,t,vertices,max_gap,at_max,no_metric\n";
  for (const auto& r : rows) {
    os << kind_name(r.kind) << ',' << r.n << ',' << r.t << ',' << r.vertices << ','
       << (r.max_gap ? r.max_gap->str() : "") << ',' << (r.max_gap ? std::to_string(r.at_max) : "") << ','
       << r.infeasible << '\n';
  }
  return os.str();
}

}  // namespace steinergap
