#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "steinergap/instance.hpp"
#include "steinergap/point.hpp"

namespace steinergap {

using json = nlohmann::json;

// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const json& j);

// External node ids are 1-based. The root may be any terminal; terminals are
// 1..t unless a "terminals" array is present. Ingestion relabels so the root
// comes first.
json instance_to_json(const SteinerInstance& inst);
SteinerInstance instance_from_json(const json& j);

struct PointFile {
  int t = 0;
  ArcVector x;
};

json point_to_json(const ArcVector& x, int t);
PointFile point_from_json(const json& j);

json cost_matrix_to_json(const SteinerInstance& inst);

struct WeightedEdge {
  int u;
  int v;
  Rational w;
};

// Shortest-path closure of a sparse nonnegative graph. Throws InstanceError
// naming a separated pair when the graph is disconnected.
SteinerInstance metric_closure(int n, int t, const std::vector<WeightedEdge>& edges);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace steinergap
