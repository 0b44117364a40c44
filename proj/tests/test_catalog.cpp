#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>

#include <unistd.h>

#include "oracles.hpp"
#include "steinergap/builtins.hpp"
#include "steinergap/canonical.hpp"
#include "steinergap/catalog.hpp"
#include "steinergap/enumeration.hpp"
#include "steinergap/gap.hpp"
#include "steinergap/io.hpp"
#include "steinergap/vertex.hpp"

using namespace steinergap;
namespace fs = std::filesystem;

namespace {

VertexRecord record_of(const std::string& name, bool with_gap = false) {
  Builtin b = builtin(name);
  ConstraintSystem sys = build_polytope(Kind::CM, b.n, b.t, CutMode::Full);
  auto r = make_record(b.x, b.t, Kind::CM, Source::BUILTIN, sys, with_gap);
  REQUIRE(r.has_value());
  return *r;
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("steinergap-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

bool is_vertex(const ArcVector& x, int t) {
  return certify_vertex(x, build_polytope(Kind::CM, x.n(), t, CutMode::Full)).vertex;
}

}  // namespace

TEST_CASE("isomorphic vertices are stored once") {
  Catalog c;
  CHECK(c.add(record_of("oddwheel-7-4-b")) == AddResult::Inserted);
  CHECK(c.add(record_of("oddwheel-7-4-c")) == AddResult::Duplicate);
  CHECK(c.add(record_of("oddwheel-7-4-a")) == AddResult::Inserted);
  CHECK(c.size() == 2);
  CHECK(c.records(7, 4).size() == 2);
}

TEST_CASE("merging fills in sources and gaps") {
  Catalog c;
  c.add(record_of("oddwheel-7-4-b"));
  VertexRecord again = record_of("oddwheel-7-4-d", true);
  again.sources = {Source::PHI};
  CHECK(c.add(again) == AddResult::Duplicate);
  const VertexRecord* r = c.find(7, 4, Kind::CM, again.key);
  REQUIRE(r != nullptr);
  CHECK(r->has_source(Source::PHI));
  CHECK(r->has_source(Source::BUILTIN));
  CHECK(r->gap == Rational(10, 9));
}

TEST_CASE("records that do not certify are refused") {
  Catalog c;
  VertexRecord r = record_of("oddwheel-7-4-a");
  r.x.set(0, 4, 0);
  CHECK_THROWS_AS(c.add(r), CatalogError);
  VertexRecord k = record_of("oddwheel-7-4-a");
  k.key = "forged";
  CHECK_THROWS_AS(c.add(k), CatalogError);
}

TEST_CASE("catalog files survive a reload") {
  fs::path dir = scratch_dir("reload");
  {
    Catalog c(dir.string());
    c.add(record_of("oddwheel-7-4-a", true));
    c.add(record_of("oddwheel-7-4-b"));
    c.add(record_of("oddwheel-7-4-c", true));  // duplicate that adds a gap
    c.add(record_of("fig5-d", true));
    c.compact();
  }
  CHECK(fs::exists(dir / Catalog::file_name(7, 4)));
  CHECK(fs::exists(dir / Catalog::file_name(8, 5)));
  Catalog d(dir.string());
  d.load_dir();
  CHECK(d.size() == 3);
  for (const VertexRecord* r : d.all()) {
    CHECK(r->gap.has_value());
    ArcVector x;
    GapResult g = gap_certificate_from_json(r->certificate, &x);
    CHECK(x == r->x);
    CHECK(verify_gap_certificate(g, x).ok);
  }
  auto rows = report(d.all());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 7);
  CHECK(rows[0].vertices == 2);
  CHECK(rows[0].max_gap == Rational(10, 9));
  CHECK(rows[0].at_max == 2);
  CHECK(report_csv(rows).find("7,4,2") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("record json round trip") {
  VertexRecord r = record_of("fig3-b", true);
  VertexRecord back = record_from_json(json::parse(record_to_json(r).dump()));
  CHECK(back.x == r.x);
  CHECK(back.key == r.key);
  CHECK(back.gap == r.gap);
  CHECK(back.sources == r.sources);
  CHECK(back.spanning == r.spanning);
}

TEST_CASE("zero lifts and projections are inverse and keep vertices") {
  std::mt19937 rng(71);
  std::vector<std::string> names = {"oddwheel-7-4-a", "oddwheel-7-4-b", "fig3-a", "fig3-c", "fig5-a", "fig5-d"};
  int cases = 0;
  for (const auto& name : names) {
    Builtin b = builtin(name);
    for (int k = 0; k < 9; ++k) {
      ArcVector x = oracle::relabel(b.x, b.t, rng);
      ArcVector y = lift_add_zero(x, b.t);
      CHECK(y.n() == x.n() + 1);
      CHECK(is_vertex(y, b.t));
      CHECK(canonical_key(y, b.t) == canonical_key(x, b.t));
      CHECK(project_remove_zero(y, b.t) == x);
      ++cases;
    }
    CHECK_THROWS(project_remove_zero(b.x, b.t));
  }
  CHECK(cases >= 50);
}

TEST_CASE("the (7,4) vertex lifts to an (8,4) vertex") {
  ArcVector y = certified_lift_add_zero(builtin("oddwheel-7-4-a").x, 4);
  CHECK(y.n() == 8);
  GapResult r = gap_of(y, 4);
  REQUIRE(r.status == GapStatus::Certified);
  CHECK(r.gap == Rational(10, 9));
}

TEST_CASE("lifts by a unit arc reproduce the (8,5) vertices with the same gap") {
  struct Case {
    const char* from;
    LiftVariant variant;
    int v;
    const char* to;
  };
  std::vector<Case> cases = {{"oddwheel-7-4-a", LiftVariant::A, 1, "fig3-a"},
                             {"oddwheel-7-4-b", LiftVariant::A, 1, "fig3-b"},
                             {"oddwheel-7-4-b", LiftVariant::B, 1, "fig3-c"},
                             {"oddwheel-7-4-a", LiftVariant::C, -1, "fig3-d"}};
  for (const auto& c : cases) {
    Builtin parent = builtin(c.from);
    Builtin target = builtin(c.to);
    ArcVector y = certified_lift_add_one(parent.x, parent.t, c.variant, c.v);
    CHECK(y.n() == 8);
    CHECK(canonical_key(y, 5) == canonical_key(target.x, 5));
    GapResult r = gap_of(y, 5);
    REQUIRE(r.status == GapStatus::Certified);
    CHECK(r.gap == *parent.expected_gap);
  }
}

TEST_CASE("unit lifts of random relabelings stay vertices") {
  std::mt19937 rng(73);
  int cases = 0;
  for (const char* name : {"oddwheel-7-4-a", "oddwheel-7-4-b"}) {
    Builtin b = builtin(name);
    for (int k = 0; k < 10; ++k) {
      std::vector<int> p;
      ArcVector x = oracle::relabel(b.x, b.t, rng, &p);
      for (LiftVariant var : {LiftVariant::A, LiftVariant::B, LiftVariant::C}) {
        int v = var == LiftVariant::C ? -1 : p[1];
        ArcVector y = lift_add_one(x, b.t, var, v);
        CHECK(is_vertex(y, b.t + 1));
        ++cases;
      }
    }
  }
  CHECK(cases >= 50);
  CHECK_THROWS(lift_add_one(builtin("oddwheel-7-4-a").x, 4, LiftVariant::A, 0));
}

TEST_CASE("vertices of P_CM(5,4) are spanning or zero lifts from P_CM(4,4)") {
  EnumResult big = run_exact(Kind::CM, 5, 4);
  EnumResult small = run_exact(Kind::CM, 4, 4);
  REQUIRE(big.records.size() == 44);
  std::set<std::vector<Rational>> all;
  std::set<std::vector<Rational>> spanning;
  for (const auto& r : big.records) {
    all.insert(r.x.values());
    if (r.spanning) spanning.insert(r.x.values());
  }
  std::set<std::vector<Rational>> lifted;
  for (const auto& r : small.records) {
    CHECK(r.spanning);
    lifted.insert(lift_add_zero(r.x, 4).values());
  }
  std::set<std::vector<Rational>> both = spanning;
  both.insert(lifted.begin(), lifted.end());
  CHECK(both.size() == spanning.size() + lifted.size());
  CHECK(both == all);

  int projected = 0;
  for (const auto& r : big.records) {
    if (r.spanning) continue;
    ArcVector p = project_remove_zero(r.x, 4);
    CHECK(is_vertex(p, 4));
    ++projected;
  }
  CHECK(projected > 0);
}
