#include "steinergap/vertex.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include <gmpxx.h>

#include "steinergap/guards.hpp"
#include "steinergap/rank.hpp"

namespace steinergap {

std::string VertexCertificate::explain(const ConstraintSystem& sys) const {
  std::ostringstream os;
  if (violated_row) {
    os << "infeasible: violates row " << *violated_row << " (" << sys.describe(*violated_row) << ")";
  } else if (vertex) {
    os << "vertex: " << tight_count << " tight rows of rank " << rank;
  } else {
    os << "not a vertex: " << tight_count << " tight rows of rank " << rank << " < "
       << sys.num_vars();
  }
  return os.str();
}

VertexCertificate certify_vertex(const std::vector<Rational>& x, const ConstraintSystem& sys,
                                 bool want_direction) {
  VertexCertificate cert;
  const auto m = static_cast<std::size_t>(sys.num_vars());
  if (x.size() != m) throw std::invalid_argument("point dimension mismatch");
  Matrix tight;
  std::vector<std::size_t> tight_ids;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const Row& r = sys.row(i);
    Rational a = ConstraintSystem::activity(r, x);
    bool ok = r.rel == Relation::LessEq ? a <= r.rhs : r.rel == Relation::GreaterEq ? a >= r.rhs : a == r.rhs;
    if (!ok) {
      cert.violated_row = i;
      return cert;
    }
    if (a == r.rhs) {
      std::vector<Rational> dense(m);
      for (const auto& [v, c] : r.coef) dense[static_cast<std::size_t>(v)] += c;
      tight.push_back(std::move(dense));
      tight_ids.push_back(i);
    }
  }
  cert.tight_count = tight.size();
  std::vector<std::size_t> indep;
  cert.rank = multimodular_rank(tight, &indep);
  cert.vertex = cert.rank == m;
  if (cert.vertex) {
    for (std::size_t k : indep) cert.basis_rows.push_back(tight_ids[k]);
    std::sort(cert.basis_rows.begin(), cert.basis_rows.end());
  } else if (want_direction) {
    cert.direction = null_vector(tight, m);
  }
  return cert;
}

VertexCertificate certify_vertex(const ArcVector& x, const ConstraintSystem& sys,
                                 bool want_direction) {
  return certify_vertex(x.values(), sys, want_direction);
}

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (w_[k] & ~o.w_[k]) return false;
    }
    return true;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w_.resize(w_.size());
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto v : w_) c += static_cast<std::size_t>(std::popcount(v));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct Ray {
  std::vector<Rational> y;
  Bits zero;
};

void make_primitive(std::vector<Rational>& y) {
  mpz_class l = 1;
  for (const auto& v : y) {
    if (!v.is_integer()) {
      mpz_class den(v.den_str());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
  }
  std::vector<mpz_class> z;
  z.reserve(y.size());
  mpz_class g = 0;
  for (const auto& v : y) {
    mpq_class q = v.to_mpq() * l;
    z.push_back(q.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (g == 0) return;
  for (std::size_t k = 0; k < y.size(); ++k) {
    mpz_class q = z[k] / g;
    y[k] = Rational(mpq_class(q));
  }
}

Rational dot(const std::vector<Rational>& g, const std::vector<Rational>& y) {
  Rational s;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g[k].is_zero() && !y[k].is_zero()) s += g[k] * y[k];
  }
  return s;
}

}  // namespace

std::vector<std::vector<Rational>> enumerate_vertices(const ConstraintSystem& sys) {
  const std::size_t m = static_cast<std::size_t>(sys.num_vars());
  check_guard("enum_m", static_cast<long>(m), guards().enum_max_m, "vertex enumeration dimension");
  check_guard("enum_rows", static_cast<long>(sys.size()), guards().enum_max_rows,
              "vertex enumeration row count");
  const std::size_t dim = m + 1;

  // Homogenized constraints g . (x0, x) <= 0; equalities become two rows.
  std::vector<std::vector<Rational>> cons;
  std::vector<int> priority;
  auto push = [&](const Row& r, bool negate, int prio) {
    std::vector<Rational> g(dim);
    g[0] = -r.rhs;
    for (const auto& [v, c] : r.coef) g[static_cast<std::size_t>(v) + 1] += c;
    if (negate) {
      for (auto& v : g) v = -v;
    }
    cons.push_back(std::move(g));
    priority.push_back(prio);
  };
  {
    std::vector<Rational> g(dim);
    g[0] = -1;
    cons.push_back(std::move(g));
    priority.push_back(0);
  }
  for (const Row& r : sys.rows()) {
    int prio = r.tag.kind == RowKind::BoxLower ? 0 : (r.tag.kind == RowKind::BoxUpper ? 2 : 1);
    if (r.rel == Relation::LessEq || r.rel == Relation::Equal) push(r, false, prio);
    if (r.rel == Relation::GreaterEq || r.rel == Relation::Equal) push(r, true, prio);
  }
  const std::size_t total = cons.size();
  std::vector<std::size_t> order(total);
  for (std::size_t k = 0; k < total; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return priority[a] < priority[b]; });

  // Initial simplicial cone from dim independent constraints.
  std::vector<std::size_t> basis;
  Matrix chosen;
  for (std::size_t k : order) {
    chosen.push_back(cons[k]);
    if (rational_rank(chosen) == chosen.size()) {
      basis.push_back(k);
      if (basis.size() == dim) break;
    } else {
      chosen.pop_back();
    }
  }
  if (basis.size() < dim) throw std::invalid_argument("polyhedron is not pointed");

  // Columns of -B^{-1}.
  Matrix aug(dim, std::vector<Rational>(2 * dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) aug[i][j] = cons[basis[i]][j];
    aug[i][dim + i] = 1;
  }
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t p = c;
    while (aug[p][c].is_zero()) ++p;
    std::swap(aug[p], aug[c]);
    const Rational inv = aug[c][c].inverse();
    for (auto& v : aug[c]) v *= inv;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == c || aug[i][c].is_zero()) continue;
      const Rational f = aug[i][c];
      for (std::size_t j = 0; j < 2 * dim; ++j) aug[i][j].sub_mul(f, aug[c][j]);
    }
  }
  std::vector<bool> processed(total, false);
  for (std::size_t k : basis) processed[k] = true;
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    Ray r{std::vector<Rational>(dim), Bits(total)};
    for (std::size_t i = 0; i < dim; ++i) r.y[i] = -aug[i][dim + k];
    make_primitive(r.y);
    for (std::size_t j = 0; j < dim; ++j) {
      if (j != k) r.zero.set(basis[j]);
    }
    rays.push_back(std::move(r));
  }

  for (std::size_t k : order) {
    if (processed[k]) continue;
    processed[k] = true;
    const auto& g = cons[k];
    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = dot(g, rays[r].y);
      if (s[r].sign() > 0) {
        pos.push_back(r);
      } else if (s[r].sign() < 0) {
        neg.push_back(r);
      } else {
        rays[r].zero.set(k);
      }
    }
    if (pos.empty()) continue;
    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        Bits z = rays[p].zero & rays[q].zero;
        if (z.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t w = 0; w < rays.size() && adjacent; ++w) {
          if (w != p && w != q && z.subset_of(rays[w].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{std::vector<Rational>(dim), z};
        for (std::size_t i = 0; i < dim; ++i) {
          nr.y[i] = s[p] * rays[q].y[i] - s[q] * rays[p].y[i];
        }
        make_primitive(nr.y);
        nr.zero.set(k);
        next.push_back(std::move(nr));
      }
    }
    std::vector<Ray> kept;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (s[r].sign() <= 0) kept.push_back(std::move(rays[r]));
    }
    for (auto& r : next) kept.push_back(std::move(r));
    rays = std::move(kept);
  }

  std::vector<std::vector<Rational>> out;
  for (const auto& r : rays) {
    if (r.y[0].sign() <= 0) throw std::invalid_argument("polyhedron is unbounded");
    std::vector<Rational> x(m);
    const Rational inv = r.y[0].inverse();
    for (std::size_t i = 0; i < m; ++i) x[i] = r.y[i + 1] * inv;
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace steinergap
