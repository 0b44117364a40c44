#include "steinergap/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace steinergap {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected rational string or integer, got " + j.dump());
}

json cost_matrix_to_json(const SteinerInstance& inst) {
  json rows = json::array();
  for (int i = 0; i < inst.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < inst.n(); ++j) row.push_back(inst.cost(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json instance_to_json(const SteinerInstance& inst) {
  return json{{"n", inst.n()}, {"t", inst.t()}, {"root", 1},
              {"costs", cost_matrix_to_json(inst)}};
}

SteinerInstance instance_from_json(const json& j) {
  int n = j.at("n").get<int>();
  const json& rows = j.at("costs");
  if (!rows.is_array()) throw InstanceError("costs must be an array");
  CostMatrix c;
  for (const auto& row : rows) {
    if (!row.is_array()) throw InstanceError("cost rows must be arrays");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    c.push_back(std::move(r));
  }
  if (static_cast<int>(c.size()) != n) throw InstanceError("cost matrix does not have n rows");
  std::vector<int> terminals;
  if (j.contains("terminals")) {
    for (const auto& v : j.at("terminals")) terminals.push_back(v.get<int>() - 1);
  } else {
    int t = j.at("t").get<int>();
    for (int v = 0; v < t; ++v) terminals.push_back(v);
  }
  int root = j.value("root", 1) - 1;
  return SteinerInstance::with_roles(c, terminals, root);
}

json point_to_json(const ArcVector& x, int t) {
  json arcs = json::array();
  for (int a : x.support()) {
    auto [i, j] = arc_ends(x.n(), a);
    arcs.push_back({{"from", i + 1}, {"to", j + 1}, {"value", x[a].str()}});
  }
  return json{{"n", x.n()}, {"t", t}, {"arcs", std::move(arcs)}};
}

PointFile point_from_json(const json& j) {
  PointFile p;
  int n = j.at("n").get<int>();
  p.t = j.value("t", 0);
  p.x = ArcVector(n);
  for (const auto& a : j.at("arcs")) {
    int from = a.at("from").get<int>() - 1;
    int to = a.at("to").get<int>() - 1;
    if (from < 0 || to < 0 || from >= n || to >= n || from == to) {
      throw std::invalid_argument("arc endpoint out of range: " + a.dump());
    }
    p.x.set(from, to, rational_from_json(a.at("value")));
  }
  return p;
}

SteinerInstance metric_closure(int n, int t, const std::vector<WeightedEdge>& edges) {
  auto sn = static_cast<std::size_t>(n);
  std::vector<std::vector<std::optional<Rational>>> d(sn, std::vector<std::optional<Rational>>(sn));
  for (std::size_t i = 0; i < sn; ++i) d[i][i] = Rational(0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw InstanceError("edge endpoint out of range");
    if (e.w.sign() < 0) throw InstanceError("negative edge weight");
    auto u = static_cast<std::size_t>(e.u);
    auto v = static_cast<std::size_t>(e.v);
    if (!d[u][v] || e.w < *d[u][v]) {
      d[u][v] = e.w;
      d[v][u] = e.w;
    }
  }
  for (std::size_t k = 0; k < sn; ++k) {
    for (std::size_t i = 0; i < sn; ++i) {
      if (!d[i][k]) continue;
      for (std::size_t j = 0; j < sn; ++j) {
        if (!d[k][j]) continue;
        Rational via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
  }
  CostMatrix c(sn, std::vector<Rational>(sn));
  for (std::size_t i = 0; i < sn; ++i) {
    for (std::size_t j = 0; j < sn; ++j) {
      if (!d[i][j]) {
        throw InstanceError("graph is disconnected: no path between nodes " +
                            std::to_string(i + 1) + " and " + std::to_string(j + 1));
      }
      c[i][j] = *d[i][j];
    }
  }
  return SteinerInstance(n, t, c);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace steinergap
