#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "steinergap/record.hpp"

namespace steinergap {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AddResult { Inserted, Duplicate };

// Vertex store keyed by (kind, n, t, key). With a directory attached every
// add is appended to catalog-{n}-{t}.ndjson (other formulations and labeled
// records get a suffix); load merges repeated keys.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::string dir);

  static std::string file_name(const VertexRecord& r);
  static std::string file_name(int n, int t, Kind kind = Kind::CM, bool labeled = false);

  // Re-certifies the point and recomputes the key; throws CatalogError when
  // either check fails.
  AddResult add(VertexRecord r);
  // Same without certification, for records read back from disk.
  AddResult merge(VertexRecord r);

  void load_file(const std::string& path);
  void load_dir();
  // Rewrites every file sorted by key, one line per record.
  void compact() const;
  void write_file(const std::string& path, int n, int t, Kind kind, bool labeled) const;

  std::vector<const VertexRecord*> records(int n, int t, Kind kind = Kind::CM) const;
  std::vector<const VertexRecord*> all() const;
  std::size_t size() const { return records_.size(); }
  const VertexRecord* find(int n, int t, Kind kind, const std::string& key) const;

 private:
  using Id = std::tuple<int, int, int, std::string>;  // n, t, kind, key
  void append(const VertexRecord& r) const;

  std::string dir_;
  std::map<Id, VertexRecord> records_;
  std::map<std::tuple<int, int, int>, ConstraintSystem> systems_;
};

// Zero-padded point with a new isolated Steiner node n.
ArcVector lift_add_zero(const ArcVector& x, int t);
// Removes an isolated Steiner node (the last one when k < 0).
ArcVector project_remove_zero(const ArcVector& y, int t, int k = -1);

enum class LiftVariant { A, B, C };
LiftVariant parse_lift_variant(const std::string& s);

// New terminal tied to the point by one arc of value 1. For A and B, v is a
// non-root node with inflow 1; the new terminal becomes node t and B also
// moves the out-arcs of v to it. For C the new node becomes the root and the
// old root turns into terminal 1. The result has parameters (n+1, t+1).
ArcVector lift_add_one(const ArcVector& x, int t, LiftVariant variant, int v = -1);

// Throws std::logic_error when the lifted point is not a vertex of
// P_CM(n+1, t) or P_CM(n+1, t+1). Lifts of vertices are vertices, so this
// signals a bug.
ArcVector certified_lift_add_zero(const ArcVector& x, int t);
ArcVector certified_lift_add_one(const ArcVector& x, int t, LiftVariant variant, int v = -1);

struct ReportRow {
  Kind kind = Kind::CM;
  int n = 0;
  int t = 0;
  long vertices = 0;
  long with_gap = 0;
  long infeasible = 0;  // gap LP without a metric solution
  std::optional<Rational> max_gap;
  long at_max = 0;
};

// One row per (kind, n, t) present, optionally limited to records carrying
// `source`, sorted by kind, n, t.
std::vector<ReportRow> report(const std::vector<const VertexRecord*>& recs,
                              std::optional<Source> source = std::nullopt);
std::string report_text(const std::vector<ReportRow>& rows);
std::string report_csv(const std::vector<ReportRow>& rows);

}  // namespace steinergap
