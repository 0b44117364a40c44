#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "steinergap/formulations.hpp"
#include "steinergap/instance.hpp"
#include "steinergap/simplex.hpp"

namespace steinergap {

class GapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GapOptions {
  // CM only: share one upper-bound dual between (i,j) and (j,i).
  bool edge_y = false;
  // CM only: cut rows limited to the reduced family. Needs 2t <= n+2.
  bool reduced_cuts = false;
};

// Dual of the formulation restricted to rows tight at xbar, plus costs c_e.
// Variables 0..num_edges(n)-1 are the edge costs.
struct GapProblem {
  Kind kind = Kind::CM;
  int n = 0;
  int t = 0;
  ArcVector xbar;
  std::vector<NodeSet> tight_cuts;
  LinearProgram lp;
  std::vector<std::string> var_names;
  // Polytope row behind each variable after the edge costs; kind Other for
  // shared edge duals.
  std::vector<RowTag> dual_rows;
};

struct RowDual {
  RowTag row;
  Rational value;
};

enum class GapStatus { Certified, Infeasible };

struct GapResult {
  GapStatus status = GapStatus::Infeasible;
  Kind kind = Kind::CM;
  int n = 0;
  int t = 0;
  Rational lp_value;
  Rational gap;
  std::vector<Rational> edge_costs;
  std::vector<NodeSet> tight_cuts;
  // Nonzero multipliers on polytope rows proving lp_value is the LP optimum.
  // Empty when the gap LP used shared edge duals.
  std::vector<RowDual> duals;
  std::size_t rounds = 0;
  std::size_t normalization_rows = 0;

  SteinerInstance instance() const;
};

// Throws GapError naming the violated row when xbar is not in the polytope.
GapProblem build_gap(const ArcVector& xbar, int t, Kind kind, const GapOptions& opt = {});

// Row generation on the normalization family with stp_exact as oracle.
GapResult solve_gap(const GapProblem& p);

GapResult gap_of(const ArcVector& xbar, int t, Kind kind = Kind::CM, const GapOptions& opt = {});

struct GapCheck {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
};

// Independent re-check: metric cost, every Steiner tree costs at least 1,
// and xbar attains the LP optimum lp_value. Optimality is checked by weak
// duality against the stored multipliers, or by re-solving the LP without them.
GapCheck verify_gap_certificate(const GapResult& r, const ArcVector& xbar);

nlohmann::json gap_certificate_json(const GapResult& r, const ArcVector& xbar);
GapResult gap_certificate_from_json(const nlohmann::json& j, ArcVector* xbar);

}  // namespace steinergap
