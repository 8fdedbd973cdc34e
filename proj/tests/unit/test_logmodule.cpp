#include <gtest/gtest.h>

#include <random>

#include "arrlog/checks.hpp"
#include "arrlog/logmodule.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace arrlog;
using fixtures::lib_p;
using fixtures::lib_q;

namespace {

ArrangementText with_mult(const std::string& name, std::vector<int> mult) {
  auto t = example_library(name, FieldSpec::rationals());
  t.mult = std::move(mult);
  return t;
}

std::size_t free_hilbert(int l, const std::vector<int>& exps, int d) {
  std::size_t n = 0;
  for (int e : exps) n += monomial_count(l, d - e);
  return n;
}

}  // namespace

TEST(Derivations, DimensionsMatchDivisibilityOracle) {
  const std::vector<ArrangementText> cases{with_mult("boolean:3", {1, 1, 1}), with_mult("boolean:3", {1, 2, 3}),
                                           with_mult("braid-ess:4", {1, 1, 1, 1, 1, 1}),
                                           with_mult("braid-ess:4", {2, 1, 1, 1, 1, 2}),
                                           example_library("generic:5,3,1", FieldSpec::rationals())};
  for (const auto& t : cases) {
    const auto a = make_arrangement(RationalField{}, t);
    const LogModule<RationalField> m(a, LogKind::Derivations, 1);
    for (int d = 0; d <= 4; ++d)
      EXPECT_EQ(m.dimension(d), oracle::derivation_dim(t.forms, t.mult, t.dim, d)) << t.name << " d=" << d;
  }
}

TEST(Forms, DimensionsMatchWedgeOracle) {
  for (const char* name : {"boolean:3", "braid-ess:4", "generic:5,3,1"}) {
    const auto t = example_library(name, FieldSpec::rationals());
    const LogModule<RationalField> m(make_arrangement(RationalField{}, t), LogKind::Forms, 1);
    const int n = static_cast<int>(t.forms.size());
    for (int d = -n; d <= 0; ++d)
      EXPECT_EQ(m.dimension(d), oracle::form_dim(t.forms, t.dim, d)) << name << " d=" << d;
  }
}

TEST(Saito, ExponentsOfReferenceArrangements) {
  EXPECT_EQ(saito_check(lib_q("boolean:3")).exponents, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(saito_check(lib_q("braid-ess:4")).exponents, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(saito_check(make_arrangement(RationalField{}, with_mult("boolean:3", {1, 2, 3}))).exponents,
            (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(saito_check(lib_p("g:3", 7)).exponents, (std::vector<int>{1, 4, 4}));
  const auto z = saito_check(lib_p("ziegler22", 1000003));
  EXPECT_TRUE(z.free);
  EXPECT_EQ(z.exponents, (std::vector<int>{1, 5, 7, 9}));
  const auto g = saito_check(lib_q("generic:5,3,1"));
  EXPECT_FALSE(g.free);
  EXPECT_EQ(g.verdict, "not free");
}

// A free module has the Hilbert function of its exponents in every degree.
TEST(Saito, FreeHilbertFunction) {
  for (const char* name : {"braid-ess:4", "boolean:4"}) {
    const auto a = lib_q(name);
    const auto r = saito_check(a);
    ASSERT_TRUE(r.free) << name;
    const LogModule<RationalField> m(a, LogKind::Derivations, 1);
    for (int d = 0; d <= 6; ++d) EXPECT_EQ(m.dimension(d), free_hilbert(a.dim, r.exponents, d)) << name;
    EXPECT_TRUE(saito_hilbert_consistency(a, r.exponents, 6).ok);
  }
}

TEST(Membership, GeneratorsAreLogarithmicRandomElementsAreNot) {
  const auto a = lib_p("braid-ess:4", 1000003);
  const PrimeField& f = a.field;
  std::mt19937_64 rng(2);
  for (LogKind kind : {LogKind::Derivations, LogKind::Forms}) {
    const LogModule<PrimeField> m(a, kind, 1);
    const auto [lo, hi] = default_degree_range(a, kind);
    const auto gens = minimal_generators(m, lo, hi);
    ASSERT_FALSE(gens.vectors.empty());
    for (std::size_t i = 0; i < gens.vectors.size(); ++i) {
      auto v = m.element(gens.vectors[i], gens.degrees[i]);
      EXPECT_TRUE(is_logarithmic(a, v)) << to_string(kind);
      for (auto& c : v.coeffs)
        for (auto& x : c.c) x = f.add(x, draw(rng, 0, 1000002));
      EXPECT_FALSE(is_logarithmic(a, v)) << to_string(kind);
    }
  }
}

TEST(Star, TransportsFormsToDerivations) {
  for (const char* name : {"braid-ess:4", "generic:5,3,1"}) {
    const auto a = lib_p(name, 1000003);
    const LogModule<PrimeField> forms(a, LogKind::Forms, 1);
    const LogModule<PrimeField> ders(a, LogKind::Derivations, a.dim - 1);
    for (int d = -static_cast<int>(a.size()); d <= 0; ++d) {
      EXPECT_EQ(forms.dimension(d), ders.dimension(d + a.degree())) << name << " d=" << d;
      for (const auto& v : forms.piece(d).basis) {
        const auto omega = forms.element(v, d);
        const auto theta = star_forms_to_derivations(a.field, omega);
        EXPECT_EQ(theta.degree, d + a.degree());
        EXPECT_TRUE(is_logarithmic(a, theta));
        const auto back = star_derivations_to_forms(a.field, theta, omega.denominator_degree);
        EXPECT_EQ(flatten(back), flatten(omega));
      }
    }
  }
}

// Two independent routes to Omega^1(A' + H): direct solve, and the extension
// of a known basis of Omega^1(A') by the conditions at H alone.
TEST(Forms, ExtendedBasisMatchesDirectSolve) {
  const auto ap = lib_q("braid-ess:4");
  const auto fr = saito_check(ap);
  ASSERT_TRUE(fr.free && fr.det_scalar);
  const auto basis = dual_form_basis(ap, fr.basis, *fr.det_scalar);
  EXPECT_TRUE(forms_saito(ap, basis));
  const Vec<RationalField> h{1, 2, 5};
  const ExtendedFormModule<RationalField> ext(ap, basis, h);
  const LogModule<RationalField> direct(add_hyperplane(ap, h), LogKind::Forms, 1);
  for (int d = -8; d <= 0; ++d) EXPECT_EQ(ext.dimension(d), direct.dimension(d)) << "d=" << d;
}

TEST(Betti, FreeModulesHaveProjectiveDimensionZero) {
  const auto a = lib_q("braid-ess:4");
  const LogModule<RationalField> m(a, LogKind::Derivations, 1);
  const auto b = betti_table(m, 0, 6);
  EXPECT_EQ(b.pd, 0);
  EXPECT_TRUE(b.certified_free_tail);
  ASSERT_FALSE(b.columns.empty());
  EXPECT_EQ(b.columns[0], (std::vector<int>{1, 2, 3}));
}

TEST(Betti, GenericArrangementHasOneRelation) {
  const auto a = lib_q("generic:5,3,1");
  const LogModule<RationalField> m(a, LogKind::Derivations, 1);
  const auto b = betti_table(m, 0, 5);
  EXPECT_EQ(b.pd, 1);
  ASSERT_EQ(b.columns.size(), 2u);
  // alternating Hilbert count must close up in every checked degree
  EXPECT_FALSE(b.hilbert_checked.empty());
}
