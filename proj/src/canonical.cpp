#include "steinergap/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace steinergap {

namespace {

using Cells = std::vector<std::vector<int>>;

class Canonizer {
 public:
  explicit Canonizer(const LabeledGraph& g) : g_(g) {
    for (int l : g.label) max_label_ = std::max(max_label_, l);
  }

  CanonicalForm run() {
    std::map<int, std::vector<int>> by_color;
    for (int v = 0; v < g_.n; ++v) by_color[g_.color[static_cast<std::size_t>(v)]].push_back(v);
    Cells cells;
    for (auto& [c, vs] : by_color) cells.push_back(vs);
    std::vector<int> prefix;
    search(std::move(cells), prefix);
    CanonicalForm out;
    out.order = best_order_;
    out.certificate = best_cert_;
    out.automorphisms = autos_;
    return out;
  }

 private:
  void refine(Cells& cells) const {
    auto n = static_cast<std::size_t>(g_.n);
    std::vector<int> cell_of(n);
    const int radix = max_label_ + 1;
    for (;;) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        for (int v : cells[c]) cell_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
      }
      Cells next;
      next.reserve(cells.size());
      bool split = false;
      for (const auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::vector<std::pair<std::vector<int>, int>> sig;
        sig.reserve(cell.size());
        for (int v : cell) {
          std::vector<int> s;
          for (int u = 0; u < g_.n; ++u) {
            if (u == v) continue;
            int out = g_.at(v, u);
            int in = g_.at(u, v);
            if (out == 0 && in == 0) continue;
            s.push_back((cell_of[static_cast<std::size_t>(u)] * radix + out) * radix + in);
          }
          std::sort(s.begin(), s.end());
          sig.emplace_back(std::move(s), v);
        }
        std::sort(sig.begin(), sig.end());
        std::size_t start = next.size();
        next.push_back({sig[0].second});
        for (std::size_t k = 1; k < sig.size(); ++k) {
          if (sig[k].first != sig[k - 1].first) next.push_back({});
          next.back().push_back(sig[k].second);
        }
        if (next.size() - start > 1) split = true;
      }
      cells = std::move(next);
      if (!split) return;
    }
  }

  std::string certificate(const std::vector<int>& order) const {
    std::string cert;
    auto n = static_cast<std::size_t>(g_.n);
    cert.reserve(n + n * n);
    for (int v : order) cert.push_back(static_cast<char>(g_.color[static_cast<std::size_t>(v)]));
    for (int v : order) {
      for (int u : order) cert.push_back(static_cast<char>(g_.at(v, u)));
    }
    return cert;
  }

  void leaf(const Cells& cells) {
    std::vector<int> order;
    order.reserve(cells.size());
    for (const auto& c : cells) order.push_back(c[0]);
    std::string cert = certificate(order);
    if (first_order_.empty()) {
      first_order_ = order;
      first_cert_ = cert;
      best_order_ = order;
      best_cert_ = std::move(cert);
      return;
    }
    if (cert == first_cert_) record_auto(first_order_, order);
    int cmp = cert.compare(best_cert_);
    if (cmp < 0) {
      best_order_ = order;
      best_cert_ = std::move(cert);
    } else if (cmp == 0) {
      record_auto(best_order_, order);
    }
  }

  void record_auto(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> gamma(static_cast<std::size_t>(g_.n));
    bool identity = true;
    for (std::size_t p = 0; p < a.size(); ++p) {
      gamma[static_cast<std::size_t>(a[p])] = b[p];
      if (a[p] != b[p]) identity = false;
    }
    if (identity || autos_.size() >= 256) return;
    autos_.push_back(std::move(gamma));
  }

  std::vector<int> orbits_fixing(const std::vector<int>& prefix) const {
    std::vector<int> parent(static_cast<std::size_t>(g_.n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
      }
      return v;
    };
    for (const auto& gamma : autos_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int v) {
        return gamma[static_cast<std::size_t>(v)] == v;
      });
      if (!fixes) continue;
      for (int v = 0; v < g_.n; ++v) {
        int a = find(v);
        int b = find(gamma[static_cast<std::size_t>(v)]);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
    for (int v = 0; v < g_.n; ++v) parent[static_cast<std::size_t>(v)] = find(v);
    return parent;
  }

  void search(Cells cells, std::vector<int>& prefix) {
    refine(cells);
    if (cells.size() == static_cast<std::size_t>(g_.n)) {
      leaf(cells);
      return;
    }
    std::size_t target = 0;
    while (cells[target].size() == 1) ++target;
    const std::vector<int> members = cells[target];
    std::vector<int> explored;
    for (int v : members) {
      if (!explored.empty()) {
        auto orbit = orbits_fixing(prefix);
        bool skip = std::any_of(explored.begin(), explored.end(), [&](int w) {
          return orbit[static_cast<std::size_t>(w)] == orbit[static_cast<std::size_t>(v)];
        });
        if (skip) continue;
      }
      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != target) {
          child.push_back(cells[c]);
          continue;
        }
        child.push_back({v});
        std::vector<int> rest;
        for (int w : members) {
          if (w != v) rest.push_back(w);
        }
        child.push_back(std::move(rest));
      }
      prefix.push_back(v);
      search(std::move(child), prefix);
      prefix.pop_back();
      explored.push_back(v);
    }
  }

  const LabeledGraph& g_;
  int max_label_ = 0;
  std::vector<int> first_order_;
  std::string first_cert_;
  std::vector<int> best_order_;
  std::string best_cert_;
  std::vector<std::vector<int>> autos_;
};

char digit(int v) {
  return static_cast<char>(v < 10 ? '0' + v : (v < 36 ? 'a' + v - 10 : 'A' + v - 36));
}

}  // namespace

CanonicalForm canonical_form(const LabeledGraph& g) {
  if (g.n == 0) return {};
  return Canonizer(g).run();
}

LabeledGraph labeled_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<int>& colors) {
  LabeledGraph g(n);
  if (!colors.empty()) g.color = colors;
  for (auto [u, v] : edges) {
    g.set(u, v, 1);
    g.set(v, u, 1);
  }
  return g;
}

std::string canonical_key(const ArcVector& x, int t) {
  int n = x.n();
  auto active = x.active_nodes();
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> nodes;
  for (int v = 0; v < n; ++v) {
    if (active[static_cast<std::size_t>(v)]) {
      index[static_cast<std::size_t>(v)] = static_cast<int>(nodes.size());
      nodes.push_back(v);
    }
  }
  std::vector<Rational> weights;
  for (int a : x.support()) weights.push_back(x[a]);
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

  LabeledGraph g(static_cast<int>(nodes.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    int v = nodes[k];
    g.color[k] = v == 0 ? 0 : (v < t ? 1 : 2);
  }
  for (int a : x.support()) {
    auto [i, j] = arc_ends(n, a);
    auto w = std::lower_bound(weights.begin(), weights.end(), x[a]) - weights.begin();
    g.set(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(j)],
          static_cast<int>(w) + 1);
  }
  CanonicalForm cf = canonical_form(g);
  std::string key = std::to_string(g.n) + ":";
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (k) key.push_back(',');
    key += weights[k].str();
  }
  key.push_back(':');
  for (char c : cf.certificate) key.push_back(digit(static_cast<unsigned char>(c)));
  return key;
}

}  // namespace steinergap
