#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "steinergap/formulations.hpp"

namespace steinergap {

struct VertexCertificate {
  bool vertex = false;
  std::optional<std::size_t> violated_row;
  std::size_t tight_count = 0;
  std::size_t rank = 0;
  std::vector<std::size_t> basis_rows;  // m independent tight rows
  std::vector<Rational> direction;      // kernel direction of the tight rows

  std::string explain(const ConstraintSystem& sys) const;
};

// `sys` must hold the complete row set. The direction is computed only when
// requested because it needs a full exact elimination.
VertexCertificate certify_vertex(const std::vector<Rational>& x, const ConstraintSystem& sys,
                                 bool want_direction = false);
VertexCertificate certify_vertex(const ArcVector& x, const ConstraintSystem& sys,
                                 bool want_direction = false);

// Vertices of a bounded polytope by the double description method, sorted
// lexicographically. Subject to the enum_m / enum_rows guards.
std::vector<std::vector<Rational>> enumerate_vertices(const ConstraintSystem& sys);

}  // namespace steinergap
