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

#ifndef MATCHCORE_ASSIGNMENT_HPP_
#define MATCHCORE_ASSIGNMENT_HPP_

#include <optional>
#include <vector>

#include "matchcore/auction.hpp"
#include "matchcore/equilibrium.hpp"
#include "matchcore/value_function.hpp"

namespace matchcore {

// Entry (i, j) is agent i's value for item j alone. Agent i values any
// nonempty bundle at its best single item and the empty bundle at 0.
class AssignmentGame {
 public:
  // Rows are agents. A matrix with fewer columns than rows is padded with
  // zero-valued dummy items; more columns than rows is rejected, as is a
  // negative entry or a row without a positive entry.
  explicit AssignmentGame(RationalMatrix matrix);

  int size() const { return static_cast<int>(matrix_.rows()); }
  int real_items() const { return real_items_; }
  const RationalMatrix& matrix() const { return matrix_; }
  const Rational& row_max(int agent) const {
    return row_max_[static_cast<std::size_t>(agent)];
  }

 private:
  RationalMatrix matrix_;
  int real_items_;
  std::vector<Rational> row_max_;
};

// Throws std::length_error when 2^L table entries per agent exceed the budget.
BundleAuction to_bundle_auction(const AssignmentGame& g,
                                std::size_t cell_budget = kDefaultCellBudget);

struct AssignmentSolution {
  RationalLpSolution lp;  // variable i * n + j is x^i(j)
  Rational value;
  std::vector<int> item_of_agent;  // 0-based; -1 when unassigned
};

// maximize sum a_ij x^i(j)  s.t.  each agent and each item used at most once.
// Throws std::logic_error if the optimal basic solution is not 0/1.
AssignmentSolution assignment_lp(const AssignmentGame& g);

Allocation assignment_allocation(const AssignmentGame& g,
                                 const std::vector<int>& item_of_agent);

enum class ExistenceBranch { kFlatPrice, kMixtureLp };

const char* to_string(ExistenceBranch branch);

struct AssignmentEquilibrium {
  ExistenceBranch branch = ExistenceBranch::kFlatPrice;
  EquilibriumCertificate certificate;
  Rational value;  // V(e)
  std::optional<ExistenceVerdict> existence;  // mixture LP branch only
};

// Flat prices (min_i max_j a_ij) e when an efficient allocation gives every
// agent its best item; otherwise the mixture LP decision. Throws
// std::logic_error if no verified equilibrium comes out.
AssignmentEquilibrium existence_pathway(const AssignmentGame& g,
                                        std::size_t cell_budget = kDefaultCellBudget);

}  // namespace matchcore

#endif  // MATCHCORE_ASSIGNMENT_HPP_
