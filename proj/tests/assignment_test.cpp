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

#include "matchcore/assignment.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "matchcore/random_instances.hpp"
#include "oracles.hpp"

namespace matchcore {
namespace {

using testing::B;
using testing::Q;

RationalMatrix matrix(std::initializer_list<std::initializer_list<int>> rows) {
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const int a : row) m(i, j++) = Rational(a);
    ++i;
  }
  return m;
}

TEST(AssignmentGameTest, RowMaxValuations) {
  const AssignmentGame g(matrix({{3, 1}, {1, 3}}));
  const BundleAuction a = to_bundle_auction(g);
  EXPECT_EQ(a.market().valuation(0).at(B({1, 1})), Rational(3));
  EXPECT_EQ(a.market().valuation(0).at(B({0, 1})), Rational(1));
  EXPECT_EQ(a.market().valuation(0).at(B({0, 0})), Rational(0));
  EXPECT_EQ(g.row_max(1), Rational(3));
}

TEST(AssignmentGameTest, ValidatesMatrix) {
  EXPECT_THROW(AssignmentGame(matrix({{1, -1}, {1, 1}})), std::invalid_argument);
  EXPECT_THROW(AssignmentGame(matrix({{1, 2, 3}, {1, 1, 1}})), std::invalid_argument);
  EXPECT_THROW(AssignmentGame(matrix({{1, 2}, {0, 0}})), std::invalid_argument);
  const AssignmentGame padded(matrix({{1, 2}, {3, 4}, {5, 6}}));
  EXPECT_EQ(padded.size(), 3);
  EXPECT_EQ(padded.real_items(), 2);
  EXPECT_EQ(padded.matrix().cols(), 3);
}

TEST(AssignmentLpTest, SmallMatrices) {
  const AssignmentSolution diag = assignment_lp(AssignmentGame(matrix({{3, 1}, {1, 3}})));
  EXPECT_EQ(diag.value, Rational(6));
  EXPECT_EQ(diag.item_of_agent, (std::vector<int>{0, 1}));
  EXPECT_EQ(assignment_lp(AssignmentGame(matrix({{1, 0}, {0, 1}}))).value, Rational(2));
  EXPECT_EQ(assignment_lp(AssignmentGame(matrix({{5}}))).value, Rational(5));
  EXPECT_EQ(assignment_lp(AssignmentGame(matrix({{5, 8, 2}, {7, 3, 0}, {1, 9, 4}}))).value,
            Rational(19));
}

TEST(AssignmentLpTest, MatchesPermutationEnumeration) {
  Rng rng(47);
  for (int t = 0; t < 60; ++t) {
    const AssignmentGame g = random_assignment_game(rng, 2 + t % 3, 9);
    const AssignmentSolution sol = assignment_lp(g);
    EXPECT_EQ(sol.value, oracle::best_permutation_value(g.matrix())) << "game " << t;
    const BundleAuction a = to_bundle_auction(g);
    const Allocation X = assignment_allocation(g, sol.item_of_agent);
    EXPECT_TRUE(is_feasible(a, X));
  }
}

TEST(ExistencePathwayTest, FlatPriceBranch) {
  const AssignmentEquilibrium eq = existence_pathway(AssignmentGame(matrix({{2, 2}, {2, 2}})));
  EXPECT_EQ(eq.branch, ExistenceBranch::kFlatPrice);
  EXPECT_EQ(eq.certificate.prices, Q({2, 2}));
  EXPECT_EQ(eq.value, Rational(4));
  EXPECT_STREQ(to_string(eq.branch), "flat_price");
}

TEST(ExistencePathwayTest, DiagonalGame) {
  const AssignmentGame g(matrix({{3, 1}, {1, 3}}));
  const AssignmentEquilibrium eq = existence_pathway(g);
  EXPECT_EQ(eq.value, Rational(6));
  const BundleAuction a = to_bundle_auction(g);
  EXPECT_TRUE(verify_equilibrium(a, eq.certificate.prices, eq.certificate.allocation,
                                 DeviationMode::kUnconstrained).holds);
}

TEST(ExistencePathwayTest, RandomGamesAlwaysHaveEquilibria) {
  Rng rng(53);
  int mixture = 0;
  for (int t = 0; t < 40; ++t) {
    const AssignmentGame g = random_assignment_game(rng, 2 + t % 3, 9);
    const AssignmentEquilibrium eq = existence_pathway(g);
    const BundleAuction a = to_bundle_auction(g);
    EXPECT_TRUE(verify_equilibrium(a, eq.certificate.prices, eq.certificate.allocation,
                                   DeviationMode::kUnconstrained).holds)
        << "game " << t;
    EXPECT_EQ(eq.value, assignment_lp(g).value);
    if (eq.branch == ExistenceBranch::kMixtureLp) {
      ++mixture;
      EXPECT_TRUE(eq.existence->weak_monotonicity.holds);
    }
  }
  EXPECT_GT(mixture, 0);
}

}  // namespace
}  // namespace matchcore
