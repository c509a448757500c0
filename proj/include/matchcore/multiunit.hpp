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

#ifndef MATCHCORE_MULTIUNIT_HPP_
#define MATCHCORE_MULTIUNIT_HPP_

#include <stdexcept>
#include <utility>
#include <vector>

#include "matchcore/auction.hpp"
#include "matchcore/equilibrium.hpp"

namespace matchcore {

// Replaces item j by w_j distinct unit items. Units of item j occupy the
// contiguous index group groups[j] (0-based).
struct UnitExpansion {
  Bundle endowment;
  int num_units = 0;
  std::vector<std::vector<int>> groups;
  std::vector<int> item_of_unit;

  // x(y)_j = sum of y over groups[j].
  Bundle aggregate(const Bundle& y) const;
};

struct ExpandedAuction {
  UnitExpansion expansion;
  BundleAuction auction;
};

// h^i(y) = f^i(x(min(y, 1))) on C(e_M). Throws std::length_error when
// agents x 2^M exceeds `cell_budget`.
ExpandedAuction expand(const MultiUnitAuction& a,
                       std::size_t cell_budget = kDefaultCellBudget);

// A unit held by `buyer` costs more than a unit of the same item that the
// buyer does not hold, so the buyer would rather take `cheap_unit`.
class ArbitrageError : public std::runtime_error {
 public:
  ArbitrageError(int item, int cheap_unit, int dear_unit, int buyer);
  int item() const { return item_; }
  int cheap_unit() const { return cheap_unit_; }
  int dear_unit() const { return dear_unit_; }
  int buyer() const { return buyer_; }

 private:
  int item_;
  int cheap_unit_;
  int dear_unit_;
  int buyer_;
};

// (p, X) on the source -> (q, Y) on the expansion: q copies p_j across the
// group, and for every item agent 1 takes the first X^1_j units of the group,
// agent 2 the next X^2_j, and so on. Throws std::invalid_argument if (p, X) is
// not an equilibrium of `source`.
std::pair<PriceVector, Allocation> push_equilibrium(const UnitExpansion& exp,
                                                    const MultiUnitAuction& source,
                                                    const PriceVector& p,
                                                    const Allocation& X);

// (q, Y) on the expansion -> (p, X) on the source, with p_j the mean price of
// the units of item j and X the aggregated allocation. Unit prices of an item
// can differ at an equilibrium only when a single agent holds all of its
// units. Throws ArbitrageError on any other within-group price difference and
// std::invalid_argument if (q, Y) is not an equilibrium of `expanded`.
std::pair<PriceVector, Allocation> pull_equilibrium(const UnitExpansion& exp,
                                                    const BundleAuction& expanded,
                                                    const PriceVector& q,
                                                    const Allocation& Y);

// Mixture LP decision run directly on C(2w).
ExistenceVerdict decide_existence_multiunit(
    const MultiUnitAuction& a, std::size_t cell_budget = kDefaultCellBudget);

}  // namespace matchcore

#endif  // MATCHCORE_MULTIUNIT_HPP_
