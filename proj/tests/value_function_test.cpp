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

#include "matchcore/value_function.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "matchcore/random_instances.hpp"
#include "matchcore/tu_game.hpp"
#include "oracles.hpp"

namespace matchcore {
namespace {

using testing::B;
using testing::table_from;

TEST(ValueFunctionTest, MatchesBruteForceOnRandomAuctions) {
  Rng rng(17);
  for (int t = 0; t < 120; ++t) {
    const int items = 1 + t % 3;
    const int agents = 1 + (t / 3) % 3;
    const MultiUnitAuction a = random_multiunit_auction(rng, items, agents, 2, 4);
    const ValueFunction vf = build_value_function(a);
    const Box& box = vf.domain();
    ASSERT_EQ(box.upper(), Bundle(2 * a.endowment()));
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
      const Bundle x = box.point(idx);
      ASSERT_EQ(vf.at(idx), oracle::brute_force_value(a, x)) << "instance " << t;
      const Allocation X = vf.efficient_allocation(x);
      ASSERT_EQ(allocation_total(X, a.num_items()), x);
      Rational total;
      for (int i = 0; i < a.num_agents(); ++i) {
        total += effective_value(a, i, X[static_cast<std::size_t>(i)]);
      }
      EXPECT_EQ(total, vf.at(idx));
    }
  }
}

TEST(ValueFunctionTest, TripleGameValues) {
  const InducedAuction induced = induce_bundle_auction(testing::triple_game());
  const ValueFunction vf = build_value_function(induced.auction.market());
  const Bundle e = unit_bundle(5);
  EXPECT_EQ(vf.at(e), Rational(30));
  EXPECT_EQ(vf.at(Bundle(2 * e)), Rational(90));
  EXPECT_EQ(vf.at(Bundle::Zero(5)), Rational(0));
  EXPECT_TRUE(check_weak_monotonicity(vf).holds);

  const Allocation X = vf.efficient_allocation(e);
  int served = 0;
  for (std::size_t k = 0; k < X.size(); ++k) {
    const Rational v = effective_value(induced.auction.market(), static_cast<int>(k), X[k]);
    if (v.sign() > 0) {
      ++served;
      EXPECT_EQ(coalition_size(induced.buyers[k]), 3);
      EXPECT_EQ(X[k], induced.keys[k]);
    }
  }
  EXPECT_EQ(served, 1);
}

TEST(ValueFunctionTest, PackingDpAgreesWithGenericDp) {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    const TuGame v = random_tu_game(rng, 3 + t % 2, 12);
    const InducedAuction induced = induce_bundle_auction(v);
    const ValueFunction generic = build_value_function(induced.auction.market());
    const ValueFunction packing = induced_value_function(induced);
    EXPECT_EQ(generic.values(), packing.values()) << "game " << t;
    const Box& box = packing.domain();
    for (std::size_t idx = 0; idx < box.size(); idx += 7) {
      const Allocation X = packing.efficient_allocation(box.point(idx));
      Rational total;
      for (int k = 0; k < induced.auction.num_agents(); ++k) {
        total += effective_value(induced.auction.market(), k, X[static_cast<std::size_t>(k)]);
      }
      EXPECT_EQ(total, packing.at(idx));
    }
  }
}

TEST(ValueFunctionTest, SingleAdditiveAgentFailsWeakMonotonicity) {
  const Bundle e = B({1, 1, 1});
  const MultiUnitAuction a(
      e, {table_from("add", e, [](const Bundle& x) { return Rational(x.sum()); })});
  const ValueFunction vf = build_value_function(a);
  EXPECT_EQ(vf.at(e), Rational(3));
  EXPECT_EQ(vf.at(Bundle(2 * e)), Rational(3));
  const auto wm = check_weak_monotonicity(vf);
  EXPECT_FALSE(wm.holds);
  EXPECT_FALSE(wm.strict_step);
}

TEST(ValueFunctionTest, DiagonalAssignmentAtUnitBundle) {
  const Bundle e = B({1, 1});
  auto row = [](int best) {
    return [best](const Bundle& x) { return x(best) > 0 ? Rational(3) : Rational(x.sum() > 0); };
  };
  const MultiUnitAuction a(e, {table_from("r1", e, row(0)), table_from("r2", e, row(1))});
  const ValueFunction vf = build_value_function(a);
  EXPECT_EQ(vf.at(e), Rational(6));
  const Allocation X = vf.efficient_allocation(e);
  EXPECT_EQ(X[0], B({1, 0}));
  EXPECT_EQ(X[1], B({0, 1}));
  const Allocation zero = vf.efficient_allocation(B({0, 0}));
  EXPECT_EQ(zero[0], B({0, 0}));
  EXPECT_EQ(zero[1], B({0, 0}));
}

TEST(ValueFunctionTest, RespectsCellBudget) {
  const Bundle w = B({3, 3, 3});
  const MultiUnitAuction a(w, {table_from("a", w, [](const Bundle& x) {
                             return Rational(x.sum());
                           })});
  EXPECT_THROW(build_value_function(a, 100), std::length_error);
  EXPECT_THROW(build_value_function(a).at(B({7, 0, 0})), std::out_of_range);
}

TEST(ValueFunctionTest, WritesCsvTable) {
  const Bundle e = B({1});
  const MultiUnitAuction a(e, {table_from("a", e, [](const Bundle& x) {
                             return Rational(5 * x(0), 2);
                           })});
  std::ostringstream os;
  build_value_function(a).write_csv(os);
  EXPECT_EQ(os.str(), "x_1,V\n0,0\n1,5/2\n2,5/2\n");
}

}  // namespace
}  // namespace matchcore
