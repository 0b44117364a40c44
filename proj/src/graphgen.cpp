#include "steinergap/graphgen.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "steinergap/canonical.hpp"

namespace steinergap {

void SimpleGraph::add(int u, int v) {
  adj[static_cast<std::size_t>(u)] |= 1U << v;
  adj[static_cast<std::size_t>(v)] |= 1U << u;
}

void SimpleGraph::remove(int u, int v) {
  adj[static_cast<std::size_t>(u)] &= ~(1U << v);
  adj[static_cast<std::size_t>(v)] &= ~(1U << u);
}

int SimpleGraph::degree(int v) const { return std::popcount(adj[static_cast<std::size_t>(v)]); }

int SimpleGraph::num_edges() const {
  int s = 0;
  for (auto row : adj) s += std::popcount(row);
  return s / 2;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (has(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

int SimpleGraph::components() const {
  std::uint32_t seen = 0;
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if ((seen >> s) & 1U) continue;
    ++count;
    std::uint32_t frontier = 1U << s;
    seen |= frontier;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t next = adj[static_cast<std::size_t>(v)] & ~seen;
      seen |= next;
      frontier |= next;
    }
  }
  return count;
}

bool SimpleGraph::connected() const { return n <= 1 || components() == 1; }

namespace {

LabeledGraph labeled(const SimpleGraph& g) { return labeled_from_edges(g.n, g.edges()); }

class Generator {
 public:
  Generator(const GenSpec& spec, const std::function<void(const SimpleGraph&)>& fn)
      : spec_(spec), fn_(fn) {}

  void run() {
    SimpleGraph g(spec_.n);
    visit(g);
  }

 private:
  bool prunable(const SimpleGraph& g) const {
    int remaining = spec_.max_edges - g.num_edges();
    int deficit = 0;
    for (int v = 0; v < g.n; ++v) deficit += std::max(0, spec_.min_degree - g.degree(v));
    if (deficit > 2 * remaining) return true;
    if (spec_.connected && g.components() - 1 > remaining) return true;
    return false;
  }

  bool wanted(const SimpleGraph& g) const {
    int m = g.num_edges();
    if (m < spec_.min_edges || m > spec_.max_edges) return false;
    if (spec_.connected && !g.connected()) return false;
    int deg2 = 0;
    int deg3 = 0;
    for (int v = 0; v < g.n; ++v) {
      int d = g.degree(v);
      if (d < spec_.min_degree) return false;
      deg2 += d == 2;
      deg3 += d == 3;
    }
    if (spec_.max_degree2 >= 0 && deg2 > spec_.max_degree2) return false;
    if (spec_.max_degree3 >= 0 && deg3 > spec_.max_degree3) return false;
    return true;
  }

  void visit(const SimpleGraph& g) {
    if (wanted(g)) fn_(g);
    if (g.num_edges() >= spec_.max_edges) return;
    const std::string parent = canonical_form(labeled(g)).certificate;
    std::set<std::string> children;
    for (int u = 0; u < g.n; ++u) {
      for (int v = u + 1; v < g.n; ++v) {
        if (g.has(u, v)) continue;
        SimpleGraph child = g;
        child.add(u, v);
        if (prunable(child)) continue;
        CanonicalForm cf = canonical_form(labeled(child));
        if (!children.insert(cf.certificate).second) continue;
        // Last edge in canonical order; the child is accepted when removing
        // it yields the parent class.
        std::vector<int> pos(static_cast<std::size_t>(g.n));
        for (int p = 0; p < g.n; ++p) pos[static_cast<std::size_t>(cf.order[static_cast<std::size_t>(p)])] = p;
        std::pair<int, int> best{-1, -1};
        std::pair<int, int> last{};
        for (auto [a, b] : child.edges()) {
          int pa = pos[static_cast<std::size_t>(a)];
          int pb = pos[static_cast<std::size_t>(b)];
          std::pair<int, int> key{std::max(pa, pb), std::min(pa, pb)};
          if (key > best) {
            best = key;
            last = {a, b};
          }
        }
        SimpleGraph reduced = child;
        reduced.remove(last.first, last.second);
        bool same = (last == std::pair<int, int>{u, v}) ||
                    canonical_form(labeled(reduced)).certificate == parent;
        if (same) visit(child);
      }
    }
  }

  const GenSpec& spec_;
  const std::function<void(const SimpleGraph&)>& fn_;
};

}  // namespace

void gen_graphs(const GenSpec& spec, const std::function<void(const SimpleGraph&)>& fn) {
  if (spec.n < 0 || spec.n > 32) throw std::invalid_argument("gen_graphs: n out of range");
  int full = spec.n * (spec.n - 1) / 2;
  if (spec.min_edges < 0 || spec.max_edges > full || spec.min_edges > spec.max_edges) {
    if (spec.min_edges > spec.max_edges) return;
    throw std::invalid_argument("gen_graphs: edge range outside [0, n(n-1)/2]");
  }
  Generator(spec, fn).run();
}

std::vector<SimpleGraph> graphs(const GenSpec& spec) {
  std::vector<SimpleGraph> out;
  gen_graphs(spec, [&](const SimpleGraph& g) { out.push_back(g); });
  return out;
}

std::string graph_certificate(const SimpleGraph& g) {
  std::string cert = canonical_form(labeled(g)).certificate;
  std::string out = std::to_string(g.n) + ":";
  for (std::size_t k = static_cast<std::size_t>(g.n); k < cert.size(); ++k) {
    out.push_back(cert[k] ? '1' : '0');
  }
  return out;
}

namespace {

class Orienter {
 public:
  Orienter(const SimpleGraph& g, const OrientSpec& spec,
           const std::function<void(const ArcList&)>& fn)
      : g_(g), spec_(spec), fn_(fn), edges_(g.edges()) {
    indeg_.assign(static_cast<std::size_t>(g.n), 0);
    left_.assign(static_cast<std::size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v) left_[static_cast<std::size_t>(v)] = g.degree(v);
    int top = spec.max_indegree + 2;
    done_.assign(static_cast<std::size_t>(top), 0);
  }

  void run() {
    if (!spec_.indegree_counts.empty()) {
      for (int v = 0; v < g_.n; ++v) {
        if (left_[static_cast<std::size_t>(v)] == 0 && !finish(v)) return;
      }
    }
    step(0);
  }

 private:
  bool finish(int v) {
    int d = indeg_[static_cast<std::size_t>(v)];
    auto& c = done_[static_cast<std::size_t>(d)];
    ++c;
    if (spec_.indegree_counts.empty()) return true;
    int cap = d < static_cast<int>(spec_.indegree_counts.size())
                  ? spec_.indegree_counts[static_cast<std::size_t>(d)]
                  : 0;
    return c <= cap;
  }

  void unfinish(int v) { --done_[static_cast<std::size_t>(indeg_[static_cast<std::size_t>(v)])]; }

  void place(int from, int to, int k) {
    if (indeg_[static_cast<std::size_t>(to)] >= spec_.max_indegree) return;
    ++indeg_[static_cast<std::size_t>(to)];
    --left_[static_cast<std::size_t>(from)];
    --left_[static_cast<std::size_t>(to)];
    arcs_.emplace_back(from, to);
    std::vector<int> finished;
    bool ok = true;
    for (int v : {from, to}) {
      if (left_[static_cast<std::size_t>(v)] != 0) continue;
      finished.push_back(v);
      if (!finish(v)) {
        ok = false;
        break;
      }
    }
    if (ok) step(static_cast<std::size_t>(k) + 1);
    for (int v : finished) unfinish(v);
    arcs_.pop_back();
    ++left_[static_cast<std::size_t>(from)];
    ++left_[static_cast<std::size_t>(to)];
    --indeg_[static_cast<std::size_t>(to)];
  }

  void step(std::size_t k) {
    if (k == edges_.size()) {
      emit();
      return;
    }
    auto [u, v] = edges_[k];
    place(u, v, static_cast<int>(k));
    place(v, u, static_cast<int>(k));
    if (!spec_.single_direction && indeg_[static_cast<std::size_t>(u)] < spec_.max_indegree &&
        indeg_[static_cast<std::size_t>(v)] < spec_.max_indegree) {
      // both arcs; counts as one extra step of each endpoint
      ++indeg_[static_cast<std::size_t>(u)];
      ++indeg_[static_cast<std::size_t>(v)];
      --left_[static_cast<std::size_t>(u)];
      --left_[static_cast<std::size_t>(v)];
      arcs_.emplace_back(u, v);
      arcs_.emplace_back(v, u);
      std::vector<int> finished;
      bool ok = true;
      for (int w : {u, v}) {
        if (left_[static_cast<std::size_t>(w)] != 0) continue;
        finished.push_back(w);
        if (!finish(w)) {
          ok = false;
          break;
        }
      }
      if (ok) step(k + 1);
      for (int w : finished) unfinish(w);
      arcs_.pop_back();
      arcs_.pop_back();
      ++left_[static_cast<std::size_t>(u)];
      ++left_[static_cast<std::size_t>(v)];
      --indeg_[static_cast<std::size_t>(u)];
      --indeg_[static_cast<std::size_t>(v)];
    }
  }

  void emit() {
    if (!spec_.indegree_counts.empty()) {
      for (std::size_t d = 0; d < spec_.indegree_counts.size(); ++d) {
        int have = d < done_.size() ? done_[d] : 0;
        if (have != spec_.indegree_counts[d]) return;
      }
    }
    LabeledGraph lg(g_.n);
    for (auto [a, b] : arcs_) lg.set(a, b, 1);
    if (!seen_.insert(canonical_form(lg).certificate).second) return;
    ArcList sorted = arcs_;
    std::sort(sorted.begin(), sorted.end());
    fn_(sorted);
  }

  const SimpleGraph& g_;
  const OrientSpec& spec_;
  const std::function<void(const ArcList&)>& fn_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> indeg_;
  std::vector<int> left_;
  std::vector<int> done_;
  ArcList arcs_;
  std::set<std::string> seen_;
};

}  // namespace

void gen_orientations(const SimpleGraph& g, const OrientSpec& spec,
                      const std::function<void(const ArcList&)>& fn) {
  Orienter(g, spec, fn).run();
}

}  // namespace steinergap
