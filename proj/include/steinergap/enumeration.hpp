#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "steinergap/formulations.hpp"
#include "steinergap/graphgen.hpp"
#include "steinergap/record.hpp"

namespace steinergap {

struct EnumStats {
  long graphs = 0;        // undirected graphs produced by the generator
  long skipped = 0;       // graphs found in the checkpoint
  long candidates = 0;    // points (or LPs) handed to certification
  long vertices = 0;      // certified records before key dedup
};

struct EnumOptions {
  int jobs = 1;
  bool with_gap = false;
  // Graph keys (graph_certificate) already processed in an earlier run.
  std::set<std::string> skip_graphs;
  std::function<void(const std::string&)> on_graph_done;
  std::function<void(const VertexRecord&)> on_record;
  std::function<void(const EnumStats&)> on_progress;
};

struct OtcOptions {
  bool connected = true;   // cost-1 subgraph connected and spanning
  bool edge_bound = true;  // |E| <= n*t - t^2
  bool hunt = false;       // search the optimal face when the LP returns an integer point
};

struct EnumResult {
  std::vector<VertexRecord> records;  // sorted by key, one per key
  EnumStats stats;
};

// Pure 1/m search (m = 2 is PHI, m = 4 is POQ): graphs with n + (m-1)t - m
// edges, orientations with indegree in {0, 1, m}, x = 1/m on every arc.
EnumResult run_pure(int n, int t, int m, const EnumOptions& opt = {});
EnumResult run_phi(int n, int t, const EnumOptions& opt = {});
EnumResult run_poq(int n, int t, const EnumOptions& opt = {});
EnumResult run_otc(int n, int t, const OtcOptions& otc = {}, const EnumOptions& opt = {});
// Every vertex of the formulation, keyed by the labeled point.
EnumResult run_exact(Kind kind, int n, int t, const EnumOptions& opt = {});

// Necessary count 3t - n - 4 >= 0 for pure half-integer spanning vertices.
bool phi_feasible(int n, int t);
bool poq_feasible(int n, int t);

GenSpec pure_graph_spec(int n, int t, int m);
OrientSpec pure_orient_spec(int n, int t, int m);

// Empty when x passes the structural filters of the pure 1/m search,
// otherwise the first failed condition.
std::string pure_filter_failure(const ArcVector& x, int t, int m);

// Certifies x as a vertex of the formulation and fills a record; nothing
// when x is not a vertex.
std::optional<VertexRecord> make_record(const ArcVector& x, int t, Kind kind, Source src,
                                        const ConstraintSystem& sys, bool with_gap);

}  // namespace steinergap
