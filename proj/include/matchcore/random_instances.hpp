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

#ifndef MATCHCORE_RANDOM_INSTANCES_HPP_
#define MATCHCORE_RANDOM_INSTANCES_HPP_

#include <random>

#include "matchcore/assignment.hpp"
#include "matchcore/auction.hpp"
#include "matchcore/equilibrium.hpp"
#include "matchcore/tu_game.hpp"

namespace matchcore {

using Rng = std::mt19937_64;

// Integer worths uniform in [0, max_worth] on non-singleton coalitions,
// redrawn until one is positive.
TuGame random_tu_game(Rng& rng, int players, int max_worth);

// Monotone tables built by adding a random nonnegative increment to the best
// predecessor value; roughly one agent in five is identically zero elsewhere.
MultiUnitAuction random_multiunit_auction(Rng& rng, int items, int agents,
                                          int max_units, int max_step);

AssignmentGame random_assignment_game(Rng& rng, int size, int max_entry);

// Feasible by construction and bounded by box rows.
RationalLp random_feasible_lp(Rng& rng, int max_variables, int max_constraints);

// May be infeasible.
RationalLp random_system(Rng& rng, int max_variables, int max_constraints);

// Degenerate and cycling-prone programs with known optimal values.
struct LpFixture {
  const char* name;
  RationalLp lp;
  LpStatus status;
  Rational optimum;
};
std::vector<LpFixture> degenerate_lp_fixtures();

// A random allocation of the endowment.
Allocation random_allocation(Rng& rng, const MultiUnitAuction& a);
// Random prices with entries in {0, 1/2, ..., max}.
PriceVector random_prices(Rng& rng, int items, int max);

}  // namespace matchcore

#endif  // MATCHCORE_RANDOM_INSTANCES_HPP_
