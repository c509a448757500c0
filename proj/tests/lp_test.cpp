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

#include "matchcore/linear_program.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "matchcore/equilibrium.hpp"
#include "matchcore/random_instances.hpp"
#include "oracles.hpp"

namespace matchcore {
namespace {

using testing::Q;

TEST(LinearProgramTest, TwoVariableExample) {
  RationalLp lp(2, Sense::kMaximize);
  lp.objective = Q({1, 1});
  lp.add_constraint(Q({1, 2}), Relation::kLessEqual, Rational(4));
  const auto sol = lp_solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, Rational(4));
  EXPECT_EQ(sol.primal, Q({4, 0}));
  EXPECT_TRUE(verify_optimality(lp, sol));
}

TEST(LinearProgramTest, ContradictoryBoundsAreInfeasible) {
  RationalLp lp(1, Sense::kMaximize);
  lp.objective = Q({1});
  lp.add_constraint(Q({1}), Relation::kGreaterEqual, Rational(1));
  lp.add_constraint(Q({1}), Relation::kLessEqual, Rational(0));
  const auto sol = lp_solve(lp);
  EXPECT_EQ(sol.status, LpStatus::kInfeasible);
  EXPECT_TRUE(verify_farkas(lp, sol.farkas));
}

TEST(LinearProgramTest, DetectsUnboundedness) {
  RationalLp lp(2, Sense::kMaximize);
  lp.objective = Q({1, 0});
  lp.add_constraint(Q({0, 1}), Relation::kLessEqual, Rational(3));
  EXPECT_EQ(lp_solve(lp).status, LpStatus::kUnbounded);
}

TEST(LinearProgramTest, FreeVariablesAndNegativeRhs) {
  // minimize x s.t. x >= -3 with x free.
  RationalLp lp(1, Sense::kMinimize);
  lp.objective = Q({1});
  lp.free_variable[0] = true;
  lp.add_constraint(Q({1}), Relation::kGreaterEqual, Rational(-3));
  const auto sol = lp_solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, Rational(-3));
  EXPECT_TRUE(verify_optimality(lp, sol));
}

TEST(LinearProgramTest, EmptySystemIsFeasibleAtZero) {
  RationalLp lp(3, Sense::kMaximize);
  const auto result = farkas_certificate(lp);
  ASSERT_TRUE(std::holds_alternative<FeasiblePoint<Rational>>(result));
  EXPECT_EQ(std::get<FeasiblePoint<Rational>>(result).values, RationalVector::Zero(3));
}

TEST(LinearProgramTest, DegenerateFixturesTerminateWithKnownAnswers) {
  for (const auto& f : degenerate_lp_fixtures()) {
    SCOPED_TRACE(f.name);
    const auto sol = lp_solve(f.lp);
    ASSERT_EQ(sol.status, f.status);
    if (f.status == LpStatus::kOptimal) {
      EXPECT_EQ(sol.objective, f.optimum);
      EXPECT_TRUE(verify_optimality(f.lp, sol));
      // All fixtures have nonnegative variables, so vertices decide it.
      EXPECT_EQ(*oracle::vertex_optimum(f.lp), f.optimum);
    }
  }
}

TEST(LinearProgramTest, MatchesVertexEnumerationOnSmallRandomPrograms) {
  Rng rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rhs(0, 6);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> rel(0, 2);
  for (int t = 0; t < 300; ++t) {
    const int n = dim(rng);
    const int m = dim(rng);
    RationalLp lp(n, t % 2 ? Sense::kMaximize : Sense::kMinimize);
    for (int j = 0; j < n; ++j) lp.objective(j) = Rational(coef(rng));
    for (int i = 0; i < m; ++i) {
      RationalVector row(n);
      for (int j = 0; j < n; ++j) row(j) = Rational(coef(rng));
      lp.add_constraint(row, static_cast<Relation>(rel(rng)), Rational(rhs(rng) - 2));
    }
    lp.add_constraint(RationalVector::Ones(n), Relation::kLessEqual, Rational(8));
    const auto sol = lp_solve(lp);
    const auto expected = oracle::vertex_optimum(lp);
    if (!expected) {
      EXPECT_EQ(sol.status, LpStatus::kInfeasible) << "program " << t;
      EXPECT_TRUE(verify_farkas(lp, sol.farkas));
      continue;
    }
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "program " << t;
    EXPECT_EQ(sol.objective, *expected) << "program " << t;
    EXPECT_TRUE(verify_optimality(lp, sol)) << "program " << t;
  }
}

TEST(LinearProgramTest, FarkasAgreesWithPhaseOneOnRandomSystems) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const RationalLp lp = random_system(rng, 5, 6);
    const auto result = farkas_certificate(lp);
    RationalLp zero = lp;
    zero.objective.setZero();
    const auto sol = lp_solve(zero);
    if (std::holds_alternative<FeasiblePoint<Rational>>(result)) {
      EXPECT_TRUE(is_primal_feasible(lp, std::get<FeasiblePoint<Rational>>(result).values));
      EXPECT_EQ(sol.status, LpStatus::kOptimal);
    } else {
      EXPECT_TRUE(verify_farkas(lp, std::get<FarkasCertificate<Rational>>(result).multipliers));
      EXPECT_EQ(sol.status, LpStatus::kInfeasible);
    }
  }
}

TEST(LinearProgramTest, RejectsMismatchedRows) {
  RationalLp lp(2, Sense::kMaximize);
  EXPECT_THROW(lp.add_constraint(Q({1, 2, 3}), Relation::kLessEqual, Rational(1)),
               std::invalid_argument);
}

}  // namespace
}  // namespace matchcore
