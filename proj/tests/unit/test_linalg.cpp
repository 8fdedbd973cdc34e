#include <gtest/gtest.h>

#include <random>

#include "arrlog/arrangement.hpp"
#include "arrlog/matrix.hpp"
#include "oracle.hpp"

using namespace arrlog;

namespace {

std::vector<std::vector<mpq_class>> random_rows(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::vector<std::vector<mpq_class>> rows(r, std::vector<mpq_class>(c));
  for (auto& row : rows)
    for (auto& x : row) x = static_cast<long>(draw(rng, 0, hi - lo)) + lo;
  return rows;
}

}  // namespace

TEST(FieldSpec, ParsesAndRejects) {
  EXPECT_FALSE(FieldSpec::parse("Q").is_prime_field());
  EXPECT_EQ(FieldSpec::parse("Fp:7").p, 7u);
  EXPECT_EQ(FieldSpec::parse("Fp:1000003").to_string(), "Fp:1000003");
  EXPECT_THROW(FieldSpec::parse("Fp:8"), Error);
  EXPECT_THROW(FieldSpec::parse("Fp:2"), Error);
  EXPECT_THROW(FieldSpec::parse("R"), Error);
}

TEST(PrimeField, InverseAndRationalImages) {
  const PrimeField f(1000003);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto a = draw(rng, 1, 1000002);
    EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_EQ(f.add(a, f.neg(a)), 0u);
  }
  EXPECT_EQ(f.mul(f.from_rational(mpq_class(1, 2)), 2), 1u);
  EXPECT_EQ(f.to_rational(f.from_int(-5)), -5);
  EXPECT_THROW(PrimeField(7).from_rational(mpq_class(1, 7)), Error);
  EXPECT_THROW(f.inv(0), Error);
}

TEST(Draw, DeterministicAndInRange) {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto x = draw(a, 3, 9);
    EXPECT_EQ(x, draw(b, 3, 9));
    EXPECT_GE(x, 3u);
    EXPECT_LE(x, 9u);
  }
}

TEST(Rref, RankMatchesEliminationOracle) {
  std::mt19937_64 rng(11);
  const RationalField q;
  const PrimeField f(101);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = 1 + draw(rng, 0, 5), c = 1 + draw(rng, 0, 5);
    auto rows = random_rows(rng, r, c, -2, 2);
    // force some dependency
    if (r > 2) rows[2] = rows[0];
    const std::size_t expected = oracle::rank(rows);
    EXPECT_EQ(rank(Matrix<RationalField>::from_rows(q, rows, c)), expected);
    // small entries, so rank mod 101 agrees for these
    const auto rr = rref(Matrix<PrimeField>::from_rows(f, rows, c));
    EXPECT_EQ(rr.rank, expected);
    for (std::size_t i = 0; i < rr.rank; ++i) EXPECT_EQ(rr.matrix(i, rr.pivots[i]), 1u);
  }
}

TEST(Kernel, BasisIsAnnihilatedAndComplete) {
  std::mt19937_64 rng(3);
  const RationalField q;
  for (int t = 0; t < 30; ++t) {
    const std::size_t r = 1 + draw(rng, 0, 4), c = 1 + draw(rng, 0, 6);
    const auto rows = random_rows(rng, r, c, -3, 3);
    const auto m = Matrix<RationalField>::from_rows(q, rows, c);
    const auto k = kernel_basis(m);
    EXPECT_EQ(k.size(), c - oracle::rank(rows));
    for (const auto& v : k)
      for (const auto& x : arrlog::apply(m, v)) EXPECT_EQ(x, 0);
    if (!k.empty()) {
      EXPECT_EQ(rank(Matrix<RationalField>::from_vectors(q, k, c)), k.size());
    }
  }
}

TEST(Determinant, MatchesLeibniz) {
  std::mt19937_64 rng(17);
  const RationalField q;
  const PrimeField f(1000003);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + draw(rng, 0, 4);
    auto rows = random_rows(rng, n, n, -4, 4);
    rows[0][0] += mpq_class(1, 3);
    const mpq_class expected = oracle::leibniz(rows);
    EXPECT_EQ(determinant(Matrix<RationalField>::from_rows(q, rows, n)), expected);
    EXPECT_EQ(determinant(Matrix<PrimeField>::from_rows(f, rows, n)), f.from_rational(expected));
  }
}

TEST(Inverse, RoundTripAndSingular) {
  const RationalField q;
  const auto m = Matrix<RationalField>::from_rows(q, {{2, 1, 0}, {0, 1, 3}, {1, 0, 1}}, 3);
  EXPECT_EQ(multiply(m, inverse(m)), Matrix<RationalField>::identity(q, 3));
  const auto s = Matrix<RationalField>::from_rows(q, {{1, 2}, {2, 4}}, 2);
  EXPECT_THROW(inverse(s), Error);
  EXPECT_EQ(determinant(s), 0);
}

TEST(InSpan, DetectsMembership) {
  const RationalField q;
  const std::vector<Vec<RationalField>> basis{{1, 0, 1}, {0, 1, 1}};
  EXPECT_TRUE(in_span(q, Vec<RationalField>{2, 3, 5}, basis));
  EXPECT_FALSE(in_span(q, Vec<RationalField>{0, 0, 1}, basis));
}
