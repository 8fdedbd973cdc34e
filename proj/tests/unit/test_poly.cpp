#include <gtest/gtest.h>

#include <random>

#include "arrlog/arrangement.hpp"
#include "arrlog/poly.hpp"

using namespace arrlog;

namespace {

template <class F>
HomPoly<F> random_hom(const F& f, std::mt19937_64& rng, int n, int d) {
  auto p = HomPoly<F>::zero(f, n, d);
  for (auto& x : p.c) x = f.from_int(static_cast<long>(draw(rng, 0, 6)) - 3);
  return p;
}

}  // namespace

TEST(Monomials, CountsAndRanks) {
  for (int n = 1; n <= 5; ++n)
    for (int d = 0; d <= 6; ++d) {
      const auto basis = monomial_basis(n, d);
      ASSERT_EQ(basis.size(), monomial_count(n, d));
      EXPECT_EQ(basis.size(), binomial(n + d - 1, d));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        EXPECT_EQ(monomial_rank(basis[i], n), i);
        EXPECT_EQ(basis[i].degree(), d);
        if (i) {
          EXPECT_GT(basis[i - 1], basis[i]);  // descending lex
        }
      }
    }
  EXPECT_EQ(monomial_count(3, -1), 0u);
}

TEST(HomPoly, ProductIsCommutativeAndDivisionUndoesIt) {
  const PrimeField f(1000003);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + static_cast<int>(draw(rng, 0, 2));
    const auto a = random_hom(f, rng, n, static_cast<int>(draw(rng, 0, 3)));
    const auto b = random_hom(f, rng, n, static_cast<int>(draw(rng, 0, 3)));
    EXPECT_EQ(hp_mul(f, a, b), hp_mul(f, b, a));
    Vec<PrimeField> lin(n);
    for (auto& x : lin) x = draw(rng, 0, 4);
    if (lin[0] == 0 && lin[1] == 0) lin[0] = 1;
    HomPoly<PrimeField> back;
    ASSERT_TRUE(hp_divide_linear(f, hp_mul(f, a, hp_linear(f, lin)), lin, back));
    EXPECT_EQ(back, a);
  }
}

TEST(HomPoly, NonMultipleIsNotDivisible) {
  const RationalField q;
  // x^2 + y^2 is not divisible by x - y
  auto p = HomPoly<RationalField>::zero(q, 2, 2);
  p.c = {1, 0, 1};
  HomPoly<RationalField> out;
  EXPECT_FALSE(hp_divide_linear(q, p, Vec<RationalField>{1, -1}, out));
}

TEST(Poly, SubstitutionRoundTrip) {
  const RationalField q;
  const auto x = Poly<RationalField>::variable(q, 3, 0);
  const auto y = Poly<RationalField>::variable(q, 3, 1);
  const auto z = Poly<RationalField>::variable(q, 3, 2);
  const auto f = x * y * y - z.pow(3).scaled(2) + x * z;
  const auto t = Matrix<RationalField>::from_rows(q, {{1, 2, 0}, {0, 1, 1}, {1, 0, 1}}, 3);
  EXPECT_EQ(substitute_linear(substitute_linear(f, t), inverse(t)), f);
  EXPECT_FALSE((x + y * y).is_homogeneous());
}

TEST(Divisibility, KernelIsExactlyTheMultiples) {
  const RationalField q;
  const auto alpha = LinearForm<RationalField>::make(q, {2, -1, 3});
  for (int m = 1; m <= 3; ++m)
    for (int d = m; d <= m + 2; ++d) {
      const auto c = divisibility_constraints(q, 3, d, alpha, m);
      const auto k = kernel_basis(c);
      EXPECT_EQ(k.size(), monomial_count(3, d - m)) << "d=" << d << " m=" << m;
      // alpha^m times a monomial must satisfy the constraints
      auto prod = hp_constant(q, 3, mpq_class(1));
      for (int i = 0; i < m; ++i) prod = hp_mul(q, prod, hp_linear(q, alpha.coeffs));
      auto mono = HomPoly<RationalField>::zero(q, 3, d - m);
      mono.c.back() = 1;
      for (const auto& x : arrlog::apply(c, hp_mul(q, prod, mono).c)) EXPECT_EQ(x, 0);
    }
}

TEST(Wedge, NumeratorsFollowTheDefinition) {
  const RationalField q;
  const auto x = Poly<RationalField>::variable(q, 3, 0);
  const auto y = Poly<RationalField>::variable(q, 3, 1);
  const auto alpha = LinearForm<RationalField>::make(q, {1, 2, 3});
  const std::vector<Poly<RationalField>> f{x, y, x + y};
  const auto g = wedge_numerators(f, alpha);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], x.scaled(2) - y);                      // f0 a1 - f1 a0
  EXPECT_EQ(g[1], x.scaled(3) - (x + y));                // f0 a2 - f2 a0
  EXPECT_EQ(g[2], y.scaled(3) - (x + y).scaled(2));      // f1 a2 - f2 a1
}

TEST(Subsets, OrderAndSigns) {
  const auto s = subsets(4, 2);
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s.front(), (std::vector<int>{0, 1}));
  EXPECT_EQ(s.back(), (std::vector<int>{2, 3}));
  EXPECT_EQ(shuffle_sign({0}, {1}), 1);
  EXPECT_EQ(shuffle_sign({1}, {0}), -1);
  EXPECT_EQ(shuffle_sign({0, 2}, {1}), -1);
}
