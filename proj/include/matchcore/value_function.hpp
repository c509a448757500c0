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

#ifndef MATCHCORE_VALUE_FUNCTION_HPP_
#define MATCHCORE_VALUE_FUNCTION_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "matchcore/auction.hpp"

namespace matchcore {

// Limit on agents x |C(2w)| DP cells.
inline constexpr std::size_t kDefaultCellBudget = 20'000'000;

// Maximum value function V on C(2w), with per-agent DP choices kept so that an
// optimal allocation can be recovered for every point.
class ValueFunction {
 public:
  const Box& domain() const { return domain_; }
  const Bundle& endowment() const { return endowment_; }
  int num_agents() const { return num_agents_; }

  const Rational& at(std::size_t index) const { return values_[index]; }
  // Throws std::out_of_range outside C(2w).
  const Rational& at(const Bundle& x) const;
  const std::vector<Rational>& values() const { return values_; }

  // A member of F(x) attaining V(x). Units the DP leaves unassigned are handed
  // to the item's designated absorber (agent 0 unless set by the builder);
  // monotonicity means this never changes the total.
  Allocation efficient_allocation(const Bundle& x) const;

  void write_csv(std::ostream& os) const;

 private:
  friend ValueFunction build_value_function(const MultiUnitAuction&, std::size_t);
  friend ValueFunction build_single_minded_value_function(
      const MultiUnitAuction&, std::span<const Bundle>, std::size_t);

  Box domain_;
  Bundle endowment_;
  int num_agents_ = 0;
  std::vector<Rational> values_;
  // choices_[k][x] = index in C(w) of the bundle agent k takes at DP state x.
  std::vector<std::vector<std::uint32_t>> choices_;
  Box choice_box_;
  std::vector<int> absorber_;
};

// W_k(x) = max_{y <= m(x, w)} f^k(y) + W_{k-1}(x - y), W_0 = 0. Ties keep the
// lexicographically smallest y. Throws std::length_error past the budget.
ValueFunction build_value_function(const MultiUnitAuction& a,
                                   std::size_t cell_budget = kDefaultCellBudget);

// Packing DP for bundle auctions whose agent k is single-minded on keys[k]:
// f^k(x) = f^k(keys[k]) if keys[k] <= x, else 0. Validates that shape and
// throws std::invalid_argument otherwise. Leftover units of item j go to an
// agent whose key is e^j when one exists.
ValueFunction build_single_minded_value_function(
    const MultiUnitAuction& a, std::span<const Bundle> keys,
    std::size_t cell_budget = kDefaultCellBudget);

struct WeakMonotonicityReport {
  std::vector<bool> axis;  // V(w + e^j) >= V(w)
  bool strict_step = false;  // V(w + e) > V(w)
  bool holds = false;
};

WeakMonotonicityReport check_weak_monotonicity(const ValueFunction& vf);

}  // namespace matchcore

#endif  // MATCHCORE_VALUE_FUNCTION_HPP_
