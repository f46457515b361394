#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sdl/field.hpp"

using namespace sdl;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("15/16")), "15/16");
  EXPECT_EQ(to_string(parse_rational("-6/8")), "-3/4");
  EXPECT_EQ(to_string(parse_rational("7")), "7");
  EXPECT_THROW(parse_rational("1/0"), std::exception);
  EXPECT_THROW(parse_rational("x"), std::exception);
}

TEST(SmallRational, NormalizesAndChecksOverflow) {
  SmallRational a(6, -8);
  EXPECT_EQ(a.num(), -3);
  EXPECT_EQ(a.den(), 4);
  SmallRational big(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big + SmallRational(1), std::overflow_error);
  EXPECT_THROW(big * SmallRational(2), std::overflow_error);
  EXPECT_THROW(SmallRational(1) / SmallRational(0), std::exception);
}

TEST(Q2, ArithmeticIdentities) {
  Q2 r = Q2::sqrt2();
  EXPECT_EQ(r * r, Q2(2));
  Q2 x(Rational(1, 2), Rational(1, 4));  // 1/2 + sqrt2/4
  EXPECT_EQ(x * (Q2(1) / x), Q2(1));
  EXPECT_EQ(to_string(x), "1/2+1/4*sqrt(2)");
  EXPECT_EQ(parse_q2(to_string(x)), x);
  EXPECT_EQ(parse_q2("-1/2*sqrt(2)"), Q2(Rational(0), Rational(-1, 2)));
  EXPECT_THROW(Q2(1) / Q2(0), std::domain_error);
}

// sign() against a double evaluation on values far from zero
TEST(Q2, SignMatchesFloatingPoint) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
  int checked = 0;
  for (int it = 0; it < 2000; ++it) {
    Q2 x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    double d = to_double(x);
    if (std::abs(d) < 1e-9) {
      EXPECT_EQ(x.sign() == 0, x == Q2(0));
      continue;
    }
    EXPECT_EQ(x.sign(), d > 0 ? 1 : -1) << to_string(x);
    ++checked;
  }
  EXPECT_GT(checked, 1900);
}

TEST(Q2, OrderIsTotal) {
  Q2 a(Rational(3, 2), Rational(-1, 2));  // 3/2 - sqrt2/2 ~ 0.793
  Q2 b(Rational(4, 5));
  EXPECT_LT(a, b);
  EXPECT_GT(b, a);
  EXPECT_LE(a, a);
}

TEST(Cx, GaussianUnit) {
  Cx i = Cx::i();
  EXPECT_EQ(i * i, Cx(-1));
  Cx h(Sqrt2Ext<SmallRational>(SmallRational(0), SmallRational(1, 2)));  // 1/sqrt2
  EXPECT_EQ(h * h, Cx(Sqrt2Ext<SmallRational>(SmallRational(1, 2))));
  EXPECT_EQ((Cx(3) + i) / (Cx(3) + i), Cx(1));
  EXPECT_EQ((Cx(1) + i).conj(), Cx(1) - i);
}
