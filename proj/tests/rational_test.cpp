#include "quaysim/rational.hpp"

#include <gtest/gtest.h>

#include <random>

namespace quaysim {
namespace {

TEST(Rational, NormalizesOnConstruction) {
  Rational r{6, 4};
  EXPECT_EQ(r.num(), 3);
  EXPECT_EQ(r.den(), 2);
  Rational neg{3, -6};
  EXPECT_EQ(neg.num(), -1);
  EXPECT_EQ(neg.den(), 2);
  EXPECT_THROW(Rational(1, 0), InvalidValue);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 8), Rational(4));
  EXPECT_THROW(Rational(1) / Rational(0), InvalidValue);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_LT(Rational(-1, 2), Rational(0));
  EXPECT_LE(Rational(1, 2), Rational(1, 2));
  EXPECT_GT(Rational(7, 20), Rational(1, 3));
}

TEST(Rational, RoundingConventions) {
  EXPECT_EQ(Rational(5, 2).round_half_up(), 3);   // 2.5 -> 3
  EXPECT_EQ(Rational(-5, 2).round_half_up(), -2); // -2.5 -> -2 (toward +inf)
  EXPECT_EQ(Rational(7, 3).round_half_up(), 2);
  EXPECT_EQ(Rational(8, 3).round_half_up(), 3);
  EXPECT_EQ(Rational(7, 3).floor(), 2);
  EXPECT_EQ(Rational(-7, 3).floor(), -3);
  EXPECT_EQ(Rational(7, 3).ceil(), 3);
  EXPECT_EQ(Rational(-7, 3).ceil(), -2);
  EXPECT_EQ(Rational(6, 3).round_half_up(), 2);
}

TEST(Rational, ParseDecimalExactly) {
  EXPECT_EQ(Rational::parse("0.35"), Rational(7, 20));
  EXPECT_EQ(Rational::parse("0.5"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-2.25"), Rational(-9, 4));
  EXPECT_EQ(Rational::parse("7/20"), Rational(7, 20));
  EXPECT_EQ(Rational::parse("42"), Rational(42));
  EXPECT_THROW(Rational::parse(""), InvalidValue);
  EXPECT_THROW(Rational::parse("abc"), InvalidValue);
  EXPECT_THROW(Rational::parse("1.2.3"), InvalidValue);
}

TEST(Rational, PowMatchesRepeatedMultiply) {
  EXPECT_EQ(pow(Rational(9, 10), 0), Rational(1));
  EXPECT_EQ(pow(Rational(9, 10), 3), Rational(729, 1000));
  EXPECT_EQ(pow(Rational(17, 20), 7), Rational(410338673LL, 1280000000LL));
}

// Field axioms on random small rationals: the arithmetic must agree with
// cross-multiplied integer identities.
TEST(Rational, RandomizedFieldProperties) {
  std::mt19937 rng(20140303);
  std::uniform_int_distribution<long long> num(-500, 500);
  std::uniform_int_distribution<long long> den(1, 500);
  for (int i = 0; i < 2000; ++i) {
    Rational a{num(rng), den(rng)};
    Rational b{num(rng), den(rng)};
    Rational c{num(rng), den(rng)};
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Rational(0));
    if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
    // round_half_up: halves go up, so the error lives in [-1/2, 1/2)
    Rational diff = a - Rational{a.round_half_up()};
    EXPECT_LT(diff, Rational(1, 2));
    EXPECT_LE(Rational(-1, 2), diff);
  }
}

}  // namespace
}  // namespace quaysim
