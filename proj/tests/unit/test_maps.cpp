#include <gtest/gtest.h>

#include <random>

#include "arrlog/checks.hpp"
#include "arrlog/maps.hpp"
#include "fixtures.hpp"

using namespace arrlog;
using fixtures::code_of;
using fixtures::lib_p;
using fixtures::lib_q;

TEST(EulerRestriction, ImagesAreLogarithmicOnTheRestriction) {
  const auto a = lib_q("braid-ess:4");
  const LogModule<RationalField> m(a, LogKind::Derivations, 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto r = restrict_to(a, i);
    for (int d = 0; d <= 3; ++d)
      for (const auto& v : m.piece(d).basis) {
        const auto img = euler_restrict_der(m.element(v, d), a, r);
        EXPECT_EQ(img.nvars, a.dim - 1);
        EXPECT_TRUE(is_logarithmic(r.arrangement, img));
      }
  }
}

TEST(EulerRestriction, SurjectiveForFreeArrangements) {
  for (const char* name : {"boolean:3", "braid-ess:4", "boolean:4"}) {
    const auto a = lib_q(name);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto v = surjectivity_check_der(a, i, 1);
      EXPECT_TRUE(v.surjective) << name << " H" << i;
      EXPECT_FALSE(v.first_failure.has_value());
    }
  }
}

// D^(l-1) surjectivity two ways: the direct image rank, and the star-read
// criterion inside the single generator extension check.
TEST(EulerRestriction, TopOrderAgreesWithStarCriterion) {
  const PrimeField f(1000003);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto a = random_small_arrangement(f, 5 + static_cast<int>(seed % 3), 3, seed);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto del = delete_hyperplane(a, i);
      const LogModule<PrimeField> whole(a, LogKind::Forms, 1);
      const LogModule<PrimeField> deletion(del, LogKind::Forms, 1);
      const auto ext = single_generator_extension(a, i, whole, deletion);
      const auto direct = surjectivity_check_der(a, i, a.dim - 1);
      EXPECT_EQ(direct.surjective, ext.top_restriction_surjective) << "seed " << seed << " H" << i;
    }
  }
}

TEST(FormRestriction, NineHyperplanesMissDegreeMinusThree) {
  const auto ap = lib_q("nine4d");
  const Vec<RationalField> h{1, 3, 5, 7};
  const LogModule<RationalField> source(ap, LogKind::Forms, 1);
  const auto v = surjectivity_check_forms(source, ap, h, std::pair{-4, 0});
  EXPECT_FALSE(v.surjective);
  ASSERT_TRUE(v.first_failure.has_value());
  EXPECT_EQ(*v.first_failure, -3);
}

TEST(FormRestriction, ImagesAreLogarithmicAndNonLogInputsThrow) {
  const auto ap = lib_p("braid-ess:4", 1000003);
  const Vec<PrimeField> h{1, 2, 5};
  const auto r = restrict_to_form(ap, h);
  const LogModule<PrimeField> m(ap, LogKind::Forms, 1);
  for (int d = -3; d <= 0; ++d)
    for (const auto& v : m.piece(d).basis) {
      const auto img = restrict_form(m.element(v, d), ap, r);
      EXPECT_TRUE(is_logarithmic(r.arrangement, img));
    }
  auto bad = coeff_zero(ap.field, LogKind::Forms, 1, 3, -1, ap.degree());
  bad.coeffs[0].c[0] = 1;
  EXPECT_EQ(code_of([&] { restrict_form(bad, ap, r); }), ErrorCode::NotLogarithmic);
}

TEST(Preparation, HoldsOnLogarithmicFormsOnly) {
  const auto a = lib_q("braid-ess:4");
  const LogModule<RationalField> m(a, LogKind::Forms, 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int d = -3; d <= -1; ++d)
      for (const auto& v : m.piece(d).basis) EXPECT_TRUE(preparation_check(m.element(v, d), a, i));
  // x1 dx1 / Q: its dx1 coefficient does not vanish on the restriction of x1 - x2
  auto w = coeff_zero(RationalField{}, LogKind::Forms, 1, 3, -5, a.degree());
  w.coeffs[0].c[0] = 1;
  bool all = true;
  for (std::size_t i = 0; i < a.size(); ++i) all = all && preparation_check(w, a, i);
  EXPECT_FALSE(all);
}
