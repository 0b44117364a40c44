#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "steinergap/rank.hpp"
#include "steinergap/rational.hpp"

using steinergap::Rational;

TEST_CASE("rational parse and print") {
  CHECK(Rational::parse("10/9").str() == "10/9");
  CHECK(Rational::parse("-4/6").str() == "-2/3");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational(12, 11).decimal(6) == "1.090909");
  CHECK(Rational(8, 7).decimal(6) == "1.142857");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("rational arithmetic agrees with gmp across the overflow boundary") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> big(-(1LL << 62), 1LL << 62);
  std::uniform_int_distribution<long long> small(1, 1000);
  for (int i = 0; i < 500; ++i) {
    long long an = big(rng), ad = i % 3 ? small(rng) : (big(rng) | 1);
    long long bn = i % 2 ? big(rng) : small(rng), bd = small(rng);
    if (ad < 0) ad = -ad;
    Rational a(an, ad);
    Rational b(bn, bd);
    mpq_class qa(mpz_class(std::to_string(an)), mpz_class(std::to_string(ad)));
    mpq_class qb(mpz_class(std::to_string(bn)), mpz_class(std::to_string(bd)));
    qa.canonicalize();
    qb.canonicalize();
    CHECK((a + b).to_mpq() == qa + qb);
    CHECK((a - b).to_mpq() == qa - qb);
    CHECK((a * b).to_mpq() == qa * qb);
    if (bn != 0) CHECK((a / b).to_mpq() == qa / qb);
    CHECK((a < b) == (qa < qb));
    CHECK((a == b) == (qa == qb));
    Rational c = a;
    c.sub_mul(a, b);
    CHECK(c.to_mpq() == qa - qa * qb);
  }
}

TEST_CASE("rational results return to the small representation") {
  Rational big = Rational(1LL << 62, 1) * Rational(1LL << 62, 1);
  CHECK_FALSE(big.is_small());
  Rational back = big / Rational(1LL << 62, 1) / Rational(1LL << 62, 1);
  CHECK(back == 1);
  CHECK(back.is_small());
}

TEST_CASE("rank matches an elimination with the opposite pivot order") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int iter = 0; iter < 60; ++iter) {
    steinergap::Matrix m(6, std::vector<Rational>(8));
    oracle::Dense dm(6, std::vector<mpq_class>(8));
    int low = iter % 4;  // force dependent rows in some cases
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 8; ++j) {
        if (i < 6 - low) {
          m[i][j] = Rational(d(rng), 1 + (iter % 5));
        } else {
          m[i][j] = m[i - 1][j] * Rational(2) - m[0][j];
        }
        dm[i][j] = m[i][j].to_mpq();
      }
    }
    std::size_t expected = oracle::rank(dm);
    CHECK(steinergap::rational_rank(m) == expected);
    CHECK(steinergap::multimodular_rank(m) == expected);
  }
}

TEST_CASE("null vector lies in the kernel") {
  steinergap::Matrix m = {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  auto v = steinergap::null_vector(m, 4);
  REQUIRE(v.size() == 4);
  bool nonzero = false;
  for (const auto& row : m) {
    Rational s;
    for (std::size_t j = 0; j < 4; ++j) s += row[j] * v[j];
    CHECK(s == 0);
  }
  for (const auto& x : v) nonzero = nonzero || !x.is_zero();
  CHECK(nonzero);
}
