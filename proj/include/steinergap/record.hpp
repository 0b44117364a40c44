#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steinergap/formulations.hpp"
#include "steinergap/point.hpp"

namespace steinergap {

enum class Source { PHI, OTC, POQ, ENUM, LIFT, BUILTIN };

const char* source_name(Source s);
Source parse_source(const std::string& s);

struct VertexRecord {
  int n = 0;
  int t = 0;
  Kind kind = Kind::CM;
  ArcVector x;
  // Isomorphism key, or the labeled point for exact enumeration records.
  std::string key;
  std::vector<Source> sources;
  bool spanning = false;
  std::optional<Rational> gap;
  bool gap_infeasible = false;
  nlohmann::json certificate;  // gap certificate, null when no gap is known

  bool has_source(Source s) const;
  void add_source(Source s);
};

// Key of the labeled point itself: no two distinct points share it.
std::string labeled_key(const ArcVector& x);

nlohmann::json record_to_json(const VertexRecord& r);
VertexRecord record_from_json(const nlohmann::json& j);

}  // namespace steinergap
