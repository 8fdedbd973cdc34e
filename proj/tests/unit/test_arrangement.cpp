#include <gtest/gtest.h>

#include "arrlog/arrangement.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace arrlog;
using fixtures::code_of;
using fixtures::lib_p;
using fixtures::lib_q;

namespace {

std::vector<std::size_t> level_sizes(const Lattice<RationalField>& lat) {
  std::vector<std::size_t> out;
  for (const auto& lvl : lat.levels) out.push_back(lvl.size());
  return out;
}

}  // namespace

TEST(Parse, ReadsFieldDimAndMultiplicities) {
  const auto t = parse_arrangement("# boolean with a double plane\nfield Q\ndim 3\n1 0 0 *2\n0 1 0\n0 0 1/2\n");
  EXPECT_FALSE(t.field.is_prime_field());
  EXPECT_EQ(t.dim, 3);
  ASSERT_EQ(t.forms.size(), 3u);
  EXPECT_EQ(t.mult, (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(t.forms[2][2], mpq_class(1, 2));
  const auto p = parse_arrangement("field Fp 7\ndim 2\n1 3\n1 -1\n");
  EXPECT_EQ(p.field, FieldSpec::prime(7));
}

TEST(Parse, FormatRoundTrip) {
  for (const char* name : {"boolean:3", "braid:4", "ziegler22", "nine4d"}) {
    const auto t = example_library(name);
    const auto back = parse_arrangement(format_arrangement(t));
    EXPECT_EQ(back.forms, t.forms) << name;
    EXPECT_EQ(back.mult, t.mult) << name;
    EXPECT_EQ(back.dim, t.dim) << name;
  }
}

TEST(Parse, ErrorsCarryLineNumbers) {
  try {
    parse_arrangement("field Q\ndim 3\n1 0 0\n1 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { parse_arrangement("field Q\ndim 2\n1 x\n"); }), ErrorCode::Parse);
}

TEST(Validate, RejectsZeroAndDuplicates) {
  EXPECT_EQ(code_of([] { make_arrangement(RationalField{}, parse_arrangement("field Q\ndim 2\n0 0\n")); }),
            ErrorCode::ZeroForm);
  EXPECT_EQ(code_of([] { make_arrangement(RationalField{}, parse_arrangement("field Q\ndim 2\n1 1\n2 2\n")); }),
            ErrorCode::DuplicateHyperplane);
  // x - y and x + 6y coincide mod 7; the file field must match the target
  EXPECT_EQ(code_of([] { make_arrangement(PrimeField(7), parse_arrangement("field Q\ndim 2\n1 -1\n")); }),
            ErrorCode::FieldMismatch);
  EXPECT_EQ(code_of([] { make_arrangement(PrimeField(7), parse_arrangement("field Fp 7\ndim 2\n1 -1\n1 6\n")); }),
            ErrorCode::DuplicateHyperplane);
}

TEST(Library, NamesFieldsAndPrimes) {
  EXPECT_EQ(code_of([] { example_library("nonesuch:3"); }), ErrorCode::UnknownLibrary);
  EXPECT_EQ(code_of([] { example_library("g:4", FieldSpec::rationals()); }), ErrorCode::FieldUnsupported);
  for (int r = 3; r <= 6; ++r) {
    const auto ps = default_primes_for_roots(r);
    ASSERT_EQ(ps.size(), 3u);
    for (auto p : ps) {
      EXPECT_TRUE(is_prime(p));
      EXPECT_EQ(p % r, 1u);
      EXPECT_GE(p, static_cast<std::uint64_t>(2 * r + 1));
    }
  }
  EXPECT_EQ(default_primes_for_roots(3), (std::vector<std::uint64_t>{7, 13, 19}));
  const auto g = lib_p("g:3", 7);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_EQ(validate(lib_q("ziegler22")).rank, 4);
  EXPECT_EQ(lib_q("ziegler22").size(), 22u);
  EXPECT_EQ(lib_q("nine4d").size(), 9u);
  EXPECT_FALSE(validate(lib_q("braid:4")).essential);
  EXPECT_TRUE(validate(lib_q("braid-ess:4")).essential);
}

TEST(Lattice, FlatCountsAndMobius) {
  EXPECT_EQ(level_sizes(intersection_lattice(lib_q("boolean:3"), 3)), (std::vector<std::size_t>{1, 3, 3, 1}));
  EXPECT_EQ(level_sizes(intersection_lattice(lib_q("generic:5,3,1"), 3)), (std::vector<std::size_t>{1, 5, 10, 1}));
  // braid arrangement of rank 3: 6 planes, 4 triple lines and 3 double lines
  EXPECT_EQ(level_sizes(intersection_lattice(lib_q("braid:4"), 3)), (std::vector<std::size_t>{1, 6, 7, 1}));
  const auto lat = intersection_lattice(lib_q("boolean:3"), 3);
  for (const auto& f : lat.levels[2]) EXPECT_EQ(f.mobius, 1);
  EXPECT_EQ(lat.levels[3].front().mobius, -1);
}

TEST(Lattice, CharacteristicPolynomialMatchesWhitney) {
  for (const char* name : {"boolean:3", "braid-ess:4", "generic:5,3,1", "generic:6,4,2", "nine4d"}) {
    const auto t = example_library(name, FieldSpec::rationals());
    std::vector<std::vector<mpq_class>> forms = t.forms;
    EXPECT_EQ(characteristic_polynomial(make_arrangement(RationalField{}, t)), oracle::whitney_chi(forms, t.dim))
        << name;
  }
  EXPECT_EQ(polynomial_to_string({-1, 3, -3, 1}), "t^3 - 3t^2 + 3t - 1");
}

TEST(Restriction, SizesAndZieglerMultiplicities) {
  const auto g = lib_p("g:3", 7);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto r = restrict_to(g, i);
    EXPECT_EQ(r.arrangement.size(), 4u);
    int total = 0;
    for (int m : r.ziegler_multiplicity) total += m;
    EXPECT_EQ(total, static_cast<int>(g.size()) - 1);
  }
  const auto b = lib_q("braid-ess:4");
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(restrict_to(b, i).arrangement.size(), 3u);
  const auto del = delete_hyperplane(b, 0);
  EXPECT_EQ(del.size(), 5u);
  EXPECT_EQ(add_hyperplane(del, b.forms[0]).size(), 6u);
  EXPECT_EQ(code_of([&] { add_hyperplane(b, b.forms[1]); }), ErrorCode::DuplicateHyperplane);
}

// Brute force: X is k-generic iff every flat Y of codim <= k meets X transversally.
TEST(Genericity, AgreesWithRankOracle) {
  const RationalField q;
  const auto a = lib_q("generic:5,3,1");
  const auto lat = intersection_lattice(a, 3);
  const std::vector<std::vector<mpq_class>> hs{{1, 1, 1}, {1, 2, 3}, {1, -1, 0}, {3, 1, 4}};
  for (const auto& h : hs) {
    const auto x = Matrix<RationalField>::from_rows(q, {h}, 3);
    bool in_lattice = false;
    for (const auto& f : lat.levels[1])
      if (oracle::rank({h, std::vector<mpq_class>(f.equations.row(0), f.equations.row(0) + 3)}) == 1) in_lattice = true;
    if (in_lattice) {
      EXPECT_EQ(code_of([&] { is_k_generic(x, a, lat, 1); }), ErrorCode::InLattice);
      continue;
    }
    for (int k = 1; k <= 2; ++k) {
      bool expected = true;
      for (int c = 1; c <= k; ++c)
        for (const auto& f : lat.levels[c]) {
          std::vector<oracle::Row> rows{h};
          for (std::size_t i = 0; i < f.equations.rows(); ++i)
            rows.emplace_back(f.equations.row(i), f.equations.row(i) + 3);
          if (oracle::rank(rows) != static_cast<std::size_t>(c) + 1 && c + 1 <= 3) expected = false;
        }
      EXPECT_EQ(is_k_generic(x, a, lat, k).generic, expected) << "k=" << k;
    }
  }
}

TEST(Genericity, ReferenceCuts) {
  const RationalField q;
  const auto z = lib_q("ziegler22");
  const auto zl = intersection_lattice(z, 3);
  const auto hz = Matrix<RationalField>::from_rows(q, {{1, 1, 1, 0}}, 4);
  EXPECT_EQ(genericity_level(hz, z, zl), 2);
  const auto cert = is_k_generic(hz, z, zl, 3);
  EXPECT_FALSE(cert.generic);
  ASSERT_TRUE(cert.witness.has_value());
  const auto n = lib_q("nine4d");
  const auto nl = intersection_lattice(n, 3);
  EXPECT_EQ(genericity_level(Matrix<RationalField>::from_rows(q, {{1, 3, 5, 7}}, 4), n, nl), 3);
}

TEST(Genericity, SamplingIsDeterministicAndCertified) {
  const auto a = lib_p("ziegler22", 1000003);
  const auto s1 = sample_generic_hyperplane(a, 7);
  const auto s2 = sample_generic_hyperplane(a, 7);
  EXPECT_EQ(s1.form, s2.form);
  EXPECT_TRUE(s1.certificate.generic);
  EXPECT_EQ(s1.certificate.k, 3);
  EXPECT_NE(sample_generic_hyperplane(a, 8).form, s1.form);
}
