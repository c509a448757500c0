// Copyright 2026 The matchcore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matchcore/rational.hpp"

#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace matchcore {
namespace {

TEST(RationalTest, ParsesIntegerDecimalAndFraction) {
  EXPECT_EQ(Rational::parse("30"), Rational(30));
  EXPECT_EQ(Rational::parse("0.5"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("45/3"), Rational(15));
  EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
  EXPECT_EQ(Rational::parse("-2.25"), Rational(-9, 4));
  EXPECT_EQ(Rational::parse("+7"), Rational(7));
  EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
}

TEST(RationalTest, RejectsMalformedText) {
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.2.3"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1e5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(RationalTest, CanonicalForm) {
  const Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_TRUE(r.denominator() > 0);
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(RationalTest, DivisionByZeroThrows) {
  Rational x(1);
  EXPECT_THROW(x /= Rational(0), std::domain_error);
}

TEST(RationalTest, FieldLawsOnRandomTriples) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 30);
  for (int t = 0; t < 500; ++t) {
    const Rational a(num(rng), den(rng));
    const Rational b(num(rng), den(rng));
    const Rational c(num(rng), den(rng));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(Rational::parse((a - b).str()), a - b);
  }
}

TEST(RationalTest, OrderingAndAbs) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(abs(Rational(-5, 7)), Rational(5, 7));
}

}  // namespace
}  // namespace matchcore
