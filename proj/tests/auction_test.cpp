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

#include "matchcore/auction.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "matchcore/random_instances.hpp"

namespace matchcore {
namespace {

using testing::B;
using testing::Q;
using testing::table_from;

TEST(BundleAlgebraTest, MeetIsComponentwiseMinimum) {
  EXPECT_EQ(meet(B({2, 0, 1}), B({1, 1, 1})), B({1, 0, 1}));
  EXPECT_EQ(meet(B({4, 2}), B({4, 2})), B({4, 2}));
  EXPECT_EQ(meet(B({3, 3}), B({2, 2})), B({2, 2}));
  EXPECT_THROW(meet(B({1}), B({1, 1})), std::invalid_argument);
}

TEST(BundleAlgebraTest, SupportIndicator) {
  EXPECT_EQ(support_indicator(B({2, 0, 5})), B({1, 0, 1}));
  EXPECT_EQ(support_indicator(B({0, 0})), B({0, 0}));
  EXPECT_EQ(support_indicator(B({1, 1})), B({1, 1}));
}

TEST(BundleAlgebraTest, SupportEqualsMeetWithUnitOnRandomBundles) {
  Rng rng(3);
  std::uniform_int_distribution<int> entry(0, 4);
  for (int t = 0; t < 200; ++t) {
    Bundle x(4);
    for (int j = 0; j < 4; ++j) x(j) = entry(rng);
    EXPECT_EQ(support_indicator(x), meet(x, unit_bundle(4)));
  }
}

TEST(BundleAlgebraTest, CoalitionBundle) {
  const std::vector<int> first_three{0, 1, 2};
  EXPECT_EQ(coalition_bundle(first_three, 5), B({1, 1, 1, 0, 0}));
  EXPECT_EQ(coalition_bundle(std::vector<int>{}, 5), B({0, 0, 0, 0, 0}));
  EXPECT_EQ(coalition_bundle(std::vector<int>{4}, 5), B({0, 0, 0, 0, 1}));
  EXPECT_THROW(coalition_bundle(std::vector<int>{5}, 5), std::out_of_range);
}

TEST(BoxTest, EnumeratesInLexicographicOrder) {
  const Box box(B({1, 2}));
  ASSERT_EQ(box.size(), 6u);
  EXPECT_EQ(box.point(0), B({0, 0}));
  EXPECT_EQ(box.point(1), B({0, 1}));
  EXPECT_EQ(box.point(5), B({1, 2}));
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    EXPECT_EQ(box.index(box.point(idx)), idx);
  }
  EXPECT_FALSE(box.contains(B({2, 0})));
  EXPECT_THROW(checked_box_size(B({9, 9, 9}), 100), std::length_error);
}

TEST(ValuationTableTest, RejectsNegativeOrDecreasingValues) {
  const Box box(B({1}));
  EXPECT_THROW(ValuationTable("a", box, {Rational(0), Rational(-1)}), std::invalid_argument);
  EXPECT_THROW(ValuationTable("a", box, {Rational(2), Rational(1)}), std::invalid_argument);
  EXPECT_THROW(ValuationTable("a", box, {Rational(0)}), std::invalid_argument);
}

TEST(ValuationTableTest, MonotoneCompletionTakesMaxBelow) {
  const Box box(B({1, 1}));
  const auto t = ValuationTable::complete("a", box, {{B({1, 0}), Rational(3)},
                                                     {B({0, 1}), Rational(1)}});
  EXPECT_EQ(t.at(B({0, 0})), Rational(0));
  EXPECT_EQ(t.at(B({1, 1})), Rational(3));
  EXPECT_THROW(ValuationTable::complete("a", box, {{B({1, 0}), Rational(3)},
                                                   {B({1, 1}), Rational(2)}}),
               std::invalid_argument);
}

MultiUnitAuction two_item_auction() {
  const Bundle e = B({1, 1});
  return MultiUnitAuction(
      e, {table_from("a", e, [](const Bundle& x) { return x == B({1, 1}) ? Rational(7)
                                                           : Rational(3 * x(0)); }),
          table_from("b", e, [](const Bundle& x) { return Rational(x.sum()); })});
}

TEST(MultiUnitAuctionTest, EffectiveValueClampsToEndowment) {
  const MultiUnitAuction a = two_item_auction();
  EXPECT_TRUE(a.is_bundle_auction());
  EXPECT_EQ(effective_value(a, 0, B({2, 2})), Rational(7));
  EXPECT_EQ(effective_value(a, 0, B({0, 0})), Rational(0));
  Rng rng(8);
  std::uniform_int_distribution<int> entry(0, 5);
  for (int t = 0; t < 100; ++t) {
    const Bundle x = B({entry(rng), entry(rng)});
    EXPECT_EQ(effective_value(a, 1, x), effective_value(a, 1, meet(x, a.endowment())));
  }
}

TEST(MultiUnitAuctionTest, Feasibility) {
  const MultiUnitAuction a = two_item_auction();
  EXPECT_TRUE(is_feasible(a, {B({1, 0}), B({0, 1})}));
  EXPECT_FALSE(is_feasible(a, {B({1, 1}), B({0, 1})}));
  EXPECT_FALSE(is_feasible(a, {B({1, 1})}));
}

TEST(MultiUnitAuctionTest, Profit) {
  const MultiUnitAuction a = two_item_auction();
  EXPECT_EQ(profit(a, 0, B({1, 0}), Q({1, 1})), Rational(2));
  EXPECT_EQ(profit(a, 0, B({0, 0}), Q({1, 1})), Rational(0));
  const Bundle e = unit_bundle(3);
  const MultiUnitAuction unanimity(
      e, {table_from("s", e, [&](const Bundle& x) { return x == e ? Rational(30) : Rational(0); })});
  EXPECT_EQ(profit(unanimity, 0, e, Q({10, 10, 10})), Rational(0));
}

TEST(MultiUnitAuctionTest, RejectsMalformedMarkets) {
  const Bundle e = B({1, 1});
  EXPECT_THROW(MultiUnitAuction(B({1, 0}), {}), std::invalid_argument);
  EXPECT_THROW(MultiUnitAuction(e, {table_from("a", B({1}), [](const Bundle&) {
                                  return Rational(0);
                                })}),
               std::invalid_argument);
  EXPECT_THROW(BundleAuction(MultiUnitAuction(
                   B({2}), {table_from("a", B({2}), [](const Bundle& x) {
                     return Rational(x(0));
                   })})),
               std::invalid_argument);
}

TEST(PriceVectorTest, NonnegativeAndNonzero) {
  EXPECT_TRUE(is_price_vector(Q({0, 1})));
  EXPECT_FALSE(is_price_vector(Q({0, 0})));
  EXPECT_FALSE(is_price_vector(Q({2, -1})));
  EXPECT_EQ(cost(Q({Rational(1, 2), 3}), B({2, 1})), Rational(4));
}

}  // namespace
}  // namespace matchcore
