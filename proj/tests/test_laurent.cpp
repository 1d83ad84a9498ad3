#include <gtest/gtest.h>

#include "oracles/oracles.hpp"

using namespace twalex;

namespace {

LaurentPoly P(std::string_view s) { return parse_laurent(s); }
const LaurentPoly kOne = LaurentPoly::constant(1);
const LaurentPoly T = LaurentPoly::t(1);

}  // namespace

TEST(Laurent, ArithmeticExamples) {
  EXPECT_EQ((T - kOne) * (T + kOne), P("t^2 - 1"));
  const auto p = P("3t^2 - t^-1 + 4");
  EXPECT_EQ(p + LaurentPoly{}, p);
  EXPECT_EQ(LaurentPoly::t(-1) * T, kOne);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Laurent, RingAxioms) {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_laurent(rng, 4, 9);
    const auto b = oracle::random_laurent(rng, 4, 9);
    const auto c = oracle::random_laurent(rng, 4, 9);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a + (-a)).is_zero());
  }
}

TEST(Laurent, SpanDegree) {
  EXPECT_EQ(span_degree(P("t^2 - t + 1")), 2);
  EXPECT_EQ(span_degree(LaurentPoly::constant(5)), 0);
  EXPECT_EQ(span_degree(P("t^-3 + t^2")), 5);
  EXPECT_THROW(span_degree(LaurentPoly{}), DomainError);
}

TEST(Laurent, IsMonic) {
  EXPECT_TRUE(is_monic(P("t^2 - t + 1")));
  EXPECT_FALSE(is_monic(P("2t^2 - 3t + 2")));
  EXPECT_TRUE(is_monic(P("-t^3 + 4")));
  EXPECT_FALSE(is_monic(LaurentPoly{}));
}

TEST(Laurent, CanonicalForm) {
  EXPECT_EQ(canonical_form(P("-t^-1 + t")), P("t^2 - 1"));
  EXPECT_EQ(canonical_form(LaurentPoly::t(5)), kOne);
  EXPECT_TRUE(canonical_form(LaurentPoly{}).is_zero());
}

TEST(Laurent, CanonicalFormIsIdempotentAndUnitInvariant) {
  oracle::Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = oracle::random_laurent(rng, 4, 9);
    const auto c = canonical_form(p);
    EXPECT_EQ(canonical_form(c), c);
    const long k = oracle::uniform(rng, -5, 5);
    const auto unit = oracle::uniform(rng, 0, 1) ? LaurentPoly::t(k) : -LaurentPoly::t(k);
    EXPECT_EQ(canonical_form(p * unit), c);
    EXPECT_TRUE(unit_equal(p, p * unit));
    if (!p.is_zero()) {
      EXPECT_EQ(c.min_exp(), 0);
      EXPECT_GT(sgn(c.top_coeff()), 0);
    }
  }
}

TEST(Laurent, UnitEqual) {
  EXPECT_TRUE(unit_equal(P("t - 1"), P("1 - t")));
  EXPECT_TRUE(unit_equal(P("t - 1"), P("t^2 - t")));
  EXPECT_FALSE(unit_equal(P("t - 1"), P("t + 1")));
  EXPECT_FALSE(unit_equal(P("t - 1"), P("2t - 2")));
}

TEST(Laurent, ExactDivideExamples) {
  EXPECT_EQ(exact_divide(P("t^2 - 1"), P("t - 1")), P("t + 1"));
  EXPECT_FALSE(exact_divide(P("t^2 + 1"), P("t - 1")).has_value());
  EXPECT_EQ(exact_divide(P("2t^2 - 2"), P("t - 1")), P("2t + 2"));
  EXPECT_FALSE(exact_divide(P("3t + 3"), P("2")).has_value());
  EXPECT_THROW(exact_divide(kOne, LaurentPoly{}), DomainError);
}

TEST(Laurent, ExactDivideInvertsMultiplication) {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = oracle::random_laurent(rng, 5, 9);
    auto q = oracle::random_laurent(rng, 4, 9);
    if (q.is_zero()) q = kOne;
    EXPECT_EQ(exact_divide(p * q, q), p);
  }
}

TEST(Laurent, GcdSetExamples) {
  const std::vector<LaurentPoly> a{P("t - 1"), P("t^2 - 1")};
  EXPECT_EQ(gcd_set(a), P("t - 1"));
  const std::vector<LaurentPoly> b{P("2t"), P("3t^2")};
  EXPECT_EQ(gcd_set(b), kOne);
  const std::vector<LaurentPoly> c{LaurentPoly{}, P("-2t^3 + 4t")};
  EXPECT_EQ(gcd_set(c), canonical_form(P("-2t^3 + 4t")));
}

TEST(Laurent, GcdDividesAndIsGreatest) {
  oracle::Rng rng(24);
  for (int trial = 0; trial < 150; ++trial) {
    auto common = oracle::random_laurent(rng, 2, 4);
    if (common.is_zero()) common = P("t + 2");
    const auto a = oracle::random_laurent(rng, 3, 6) * common;
    const auto b = oracle::random_laurent(rng, 3, 6) * common;
    const auto c = oracle::random_laurent(rng, 3, 6) * common;
    const std::vector<LaurentPoly> set{a, b, c};
    const auto g = gcd_set(set);
    if (a.is_zero() && b.is_zero() && c.is_zero()) {
      EXPECT_TRUE(g.is_zero());
      continue;
    }
    for (const auto& x : set) EXPECT_TRUE(exact_divide(x, g).has_value()) << to_string(x) << " / " << to_string(g);
    EXPECT_TRUE(exact_divide(g, common).has_value()) << to_string(g) << " / " << to_string(common);
  }
}

TEST(Laurent, BigCoefficientsStayExact) {
  auto p = P("t + 1");
  LaurentPoly acc = kOne;
  for (int i = 0; i < 80; ++i) acc = acc * p;
  EXPECT_EQ(acc.coeff(40), mpz_class("107507208733336176461620"));
  EXPECT_EQ(exact_divide(acc, p), [&] {
    LaurentPoly q = kOne;
    for (int i = 0; i < 79; ++i) q = q * p;
    return q;
  }());
}

TEST(Laurent, StringRoundTrip) {
  EXPECT_EQ(to_string(P("t^2 - t + 1")), "t^2 - t + 1");
  EXPECT_EQ(to_string(P("2t^2 - 3t + 2")), "2t^2 - 3t + 2");
  EXPECT_EQ(to_string(LaurentPoly{}), "0");
  EXPECT_EQ(to_string(LaurentPoly::t(-1)), "t^-1");
  oracle::Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = oracle::random_laurent(rng, 5, 20);
    EXPECT_EQ(parse_laurent(to_string(p)), p);
  }
}
