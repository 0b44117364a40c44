#include "steinergap/record.hpp"

#include <algorithm>
#include <stdexcept>

#include "steinergap/io.hpp"

namespace steinergap {

namespace {

constexpr Source kSources[] = {Source::PHI, Source::OTC, Source::POQ,
                               Source::ENUM, Source::LIFT, Source::BUILTIN};

}  // namespace

const char* source_name(Source s) {
  switch (s) {
    case Source::PHI: return "PHI";
    case Source::OTC: return "OTC";
    case Source::POQ: return "POQ";
    case Source::ENUM: return "ENUM";
    case Source::LIFT: return "LIFT";
    case Source::BUILTIN: return "BUILTIN";
  }
  return "?";
}

Source parse_source(const std::string& s) {
  for (Source src : kSources) {
    if (s == source_name(src)) return src;
  }
  throw std::invalid_argument("unknown source: " + s);
}

bool VertexRecord::has_source(Source s) const {
  return std::find(sources.begin(), sources.end(), s) != sources.end();
}

void VertexRecord::add_source(Source s) {
  if (has_source(s)) return;
  sources.push_back(s);
  std::sort(sources.begin(), sources.end());
}

std::string labeled_key(const ArcVector& x) {
  std::string key = "L" + std::to_string(x.n()) + ":";
  bool first = true;
  for (int a : x.support()) {
    auto [i, j] = arc_ends(x.n(), a);
    if (!first) key.push_back(',');
    first = false;
    key += std::to_string(i + 1) + ">" + std::to_string(j + 1) + "=" + x[a].str();
  }
  return key;
}

nlohmann::json record_to_json(const VertexRecord& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["t"] = r.t;
  j["kind"] = kind_name(r.kind);
  j["key"] = r.key;
  nlohmann::json src = nlohmann::json::array();
  for (Source s : r.sources) src.push_back(source_name(s));
  j["sources"] = std::move(src);
  j["spanning"] = r.spanning;
  j["arcs"] = point_to_json(r.x, r.t).at("arcs");
  if (r.gap) {
    j["gap"] = r.gap->str();
  } else {
    j["gap"] = nullptr;
  }
  if (r.gap_infeasible) j["gap_infeasible"] = true;
  if (!r.certificate.is_null()) j["certificate"] = r.certificate;
  return j;
}

VertexRecord record_from_json(const nlohmann::json& j) {
  VertexRecord r;
  r.n = j.at("n").get<int>();
  r.t = j.at("t").get<int>();
  r.kind = parse_kind(j.value("kind", std::string("cm")));
  r.key = j.at("key").get<std::string>();
  for (const auto& s : j.at("sources")) r.add_source(parse_source(s.get<std::string>()));
  r.spanning = j.value("spanning", false);
  r.x = point_from_json(nlohmann::json{{"n", r.n}, {"t", r.t}, {"arcs", j.at("arcs")}}).x;
  if (j.contains("gap") && !j.at("gap").is_null()) r.gap = rational_from_json(j.at("gap"));
  r.gap_infeasible = j.value("gap_infeasible", false);
  if (j.contains("certificate")) r.certificate = j.at("certificate");
  return r;
}

}  // namespace steinergap
