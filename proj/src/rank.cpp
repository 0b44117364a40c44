#include "steinergap/rank.hpp"

#include <algorithm>
#include <numeric>

#include <gmpxx.h>

namespace steinergap {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix to_integer_rows(const Matrix& rows) {
  IntMatrix out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    mpz_class l = 1;
    for (const auto& v : row) {
      if (!v.is_integer()) {
        mpz_class den(v.den_str());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
      }
    }
    std::vector<mpz_class> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      mpq_class q = v.to_mpq() * l;
      r.push_back(q.get_num());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1U) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1U;
  }
  return r;
}

const std::vector<std::uint32_t>& prime_list() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<std::uint32_t> ps;
    for (std::uint32_t c = 2147483647U; ps.size() < 64; c -= 2) {
      if (is_prime_u64(c)) ps.push_back(c);
    }
    return ps;
  }();
  return primes;
}

std::size_t rank_mod(const IntMatrix& rows, std::size_t cols, std::uint32_t p,
                     std::vector<std::size_t>* pivots) {
  const std::size_t r = rows.size();
  std::vector<std::uint64_t> m(r * cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m[i * cols + j] = mpz_fdiv_ui(rows[i][j].get_mpz_t(), p);
    }
  }
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < r; ++c) {
    std::size_t piv = rank;
    while (piv < r && m[piv * cols + c] == 0) ++piv;
    if (piv == r) continue;
    if (piv != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
      std::swap(order[piv], order[rank]);
    }
    const std::uint64_t inv = pow_mod(m[rank * cols + c], p - 2, p);
    for (std::size_t j = c; j < cols; ++j) m[rank * cols + j] = m[rank * cols + j] * inv % p;
    for (std::size_t i = rank + 1; i < r; ++i) {
      const std::uint64_t f = m[i * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t sub = f * m[rank * cols + j] % p;
        std::uint64_t& e = m[i * cols + j];
        e = e >= sub ? e - sub : e + p - sub;
      }
    }
    ++rank;
  }
  if (pivots) pivots->assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(rank));
  return rank;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int k = 1; k < s; ++k) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::size_t rational_rank(const Matrix& rows) {
  if (rows.empty()) return 0;
  IntMatrix m = to_integer_rows(rows);
  const std::size_t r = m.size();
  const std::size_t cols = m[0].size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < r; ++c) {
    std::size_t piv = rank;
    while (piv < r && m[piv][c] == 0) ++piv;
    if (piv == r) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < r; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = m[rank][c] * m[i][j] - m[i][c] * m[rank][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

std::size_t multimodular_rank(const Matrix& rows, std::vector<std::size_t>* independent) {
  if (rows.empty()) {
    if (independent) independent->clear();
    return 0;
  }
  IntMatrix m = to_integer_rows(rows);
  const std::size_t cols = m[0].size();
  const std::size_t full = std::min(m.size(), cols);
  std::vector<mpz_class> norms;
  norms.reserve(m.size());
  for (const auto& row : m) {
    mpz_class s = 0;
    for (const auto& v : row) s += v * v;
    norms.push_back(s);
  }
  std::sort(norms.begin(), norms.end(), [](const mpz_class& a, const mpz_class& b) { return a > b; });
  mpz_class bound = 1;
  for (std::size_t i = 0; i < full; ++i) {
    if (norms[i] > 0) bound *= norms[i];
  }
  std::size_t best = 0;
  mpz_class product = 1;
  std::vector<std::size_t> piv;
  bool first = true;
  for (std::uint32_t p : prime_list()) {
    std::size_t rk = rank_mod(m, cols, p, &piv);
    if (rk > best || first) {
      first = false;
      best = rk;
      if (independent) *independent = piv;
    }
    if (best == full) return best;
    product *= p;
    if (product * product > bound) return best;
  }
  return rational_rank(rows);
}

std::vector<Rational> null_vector(const Matrix& rows, std::size_t cols) {
  Matrix m = rows;
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const Rational inv = m[rank][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[rank][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j].sub_mul(f, m[rank][j]);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::size_t free_col = cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  }
  if (free_col == cols) return {};
  std::vector<Rational> d(cols);
  d[free_col] = 1;
  for (std::size_t k = 0; k < pivot_col.size(); ++k) d[pivot_col[k]] = -m[k][free_col];
  return d;
}

}  // namespace steinergap
