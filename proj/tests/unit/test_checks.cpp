#include <gtest/gtest.h>

#include "arrlog/checks.hpp"
#include "fixtures.hpp"

using namespace arrlog;
using fixtures::lib_p;
using fixtures::lib_q;

TEST(Criticality, ReflectionArrangementCounterexample) {
  const auto a = lib_p("g:3", 7);
  const auto v = criticality_check(a, 4);
  EXPECT_TRUE(v.critical);
  EXPECT_GT(v.dimension, 0u);
  EXPECT_EQ(v.min_gap, 5);
  EXPECT_FALSE(v.gap_k_attained);
  EXPECT_TRUE(v.counterexample);
  ASSERT_EQ(v.ledger.size(), a.size());
  for (const auto& e : v.ledger) {
    EXPECT_EQ(e.restriction_size, 4u);
    EXPECT_EQ(e.dimension, 0u);
  }
}

TEST(Criticality, ThreadCountDoesNotChangeTheLedger) {
  const auto a = lib_p("g:3", 13);
  const auto one = criticality_check(a, 4, 1);
  const auto four = criticality_check(a, 4, 4);
  ASSERT_EQ(one.ledger.size(), four.ledger.size());
  for (std::size_t i = 0; i < one.ledger.size(); ++i) {
    EXPECT_EQ(one.ledger[i].hyperplane, four.ledger[i].hyperplane);
    EXPECT_EQ(one.ledger[i].dimension, four.ledger[i].dimension);
    EXPECT_EQ(one.ledger[i].gap, four.ledger[i].gap);
  }
  EXPECT_EQ(one.critical, four.critical);
}

TEST(Criticality, BooleanIsNotCritical) {
  const auto v = criticality_check(lib_q("boolean:3"), 1);
  EXPECT_FALSE(v.critical);
  EXPECT_TRUE(v.witness.has_value());
  EXPECT_FALSE(v.counterexample);
}

TEST(Poles, BoundHoldsOnReferences) {
  for (const char* name : {"boolean:3", "braid-ess:4", "generic:5,3,1"}) EXPECT_TRUE(pole_bound_check(lib_q(name)).holds) << name;
  EXPECT_TRUE(pole_bound_check(lib_p("g:3", 7)).holds);
}

TEST(Exactness, RestrictionSequencesAreExact) {
  for (const char* name : {"braid-ess:4", "generic:5,3,1"}) {
    const auto a = lib_q(name);
    for (std::size_t i = 0; i < a.size(); i += 2) {
      EXPECT_TRUE(euler_exactness_der(a, i, 0, 4).exact) << name << " H" << i;
      EXPECT_TRUE(euler_exactness_forms(a, i, -static_cast<int>(a.size()), 0).exact) << name << " H" << i;
    }
  }
}

TEST(Duality, CalibratedShiftIsDegreeOfQ) {
  for (int l = 2; l <= 4; ++l)
    for (int p = 1; p < l; ++p) {
      const auto c = calibrate_duality_shift(l, p);
      EXPECT_TRUE(c.unique) << "l=" << l << " p=" << p;
      EXPECT_EQ(c.intercept, 0);
      EXPECT_EQ(c.slope, 1);
    }
  const auto r = duality_dimension_check(lib_q("braid-ess:4"), 1);
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.shift, 6);
}

TEST(Dichotomy, FreeRankThreeRestrictionSizes) {
  const auto a = lib_p("g:3", 7);
  const auto d = restriction_size_dichotomy(a, {1, 4, 4});
  EXPECT_TRUE(d.holds);
  const auto b = lib_q("braid-ess:4");
  EXPECT_TRUE(restriction_size_dichotomy(b, {1, 2, 3}).holds);
}

TEST(AdditionDeletion, TriplesAreConsistent) {
  const auto a = lib_q("braid-ess:4");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto t = addition_deletion_triple(a, i);
    EXPECT_TRUE(t.consistent) << t.note;
    EXPECT_TRUE(t.whole.free);
  }
}

TEST(RandomArrangements, DeterministicAndEssential) {
  const PrimeField f(101);
  const auto a = random_small_arrangement(f, 6, 3, 9);
  const auto b = random_small_arrangement(f, 6, 3, 9);
  EXPECT_EQ(a.forms, b.forms);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_TRUE(validate(a).essential);
}

TEST(GenericCut, NeedsRankFour) {
  const auto r = generic_cut(lib_q("braid-ess:4"), GenericCutInput<RationalField>{});
  bool skipped = false;
  for (const auto& c : r.claims)
    if (c.status == "skipped" && c.detail.find("rank") != std::string::npos) skipped = true;
  EXPECT_TRUE(skipped);
}

TEST(GenericCut, ZieglerOverPrimeField) {
  const auto r = generic_cut(lib_p("ziegler22", 1000003), GenericCutInput<PrimeField>{std::nullopt, 1});
  EXPECT_TRUE(r.generic);
  EXPECT_EQ(r.genericity_level, 3);
  EXPECT_TRUE(r.dual_route_agrees);
  EXPECT_FALSE(r.restriction_freeness.free);
  EXPECT_EQ(r.a_prime_generators, (std::vector<int>{-9, -7, -5, -1}));
  EXPECT_EQ(r.whole_generators, (std::vector<int>{-9, -7, -5, -1, -1}));
  for (const auto& c : r.claims) EXPECT_EQ(c.status, "pass") << c.name << ": " << c.detail;
}
