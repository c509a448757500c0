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

#ifndef MATCHCORE_AUCTION_HPP_
#define MATCHCORE_AUCTION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "matchcore/rational.hpp"

namespace matchcore {

// Integer multiplicity vector over the L item types. Item indices are 0-based
// in the library; file formats use 1-based indices.
using Bundle = Eigen::VectorXi;

// Per-agent bundles X^1..X^H.
using Allocation = std::vector<Bundle>;

// A price vector is a nonnegative, nonzero RationalVector; see
// is_price_vector.
using PriceVector = RationalVector;

// The box C(upper) = {x in Z^L : 0 <= x <= upper}, enumerated in mixed radix
// with item 0 most significant, so increasing index is lexicographic order.
class Box {
 public:
  Box() = default;
  explicit Box(Bundle upper);

  const Bundle& upper() const { return upper_; }
  int dimension() const { return static_cast<int>(upper_.size()); }
  std::size_t size() const { return size_; }
  std::size_t stride(int item) const { return strides_[static_cast<std::size_t>(item)]; }

  bool contains(const Bundle& x) const;
  // Precondition: contains(x).
  std::size_t index(const Bundle& x) const;
  Bundle point(std::size_t index) const;

 private:
  Bundle upper_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

// Product of (upper_j + 1); throws std::length_error when above `limit`.
std::size_t checked_box_size(const Bundle& upper, std::size_t limit);

Bundle meet(const Bundle& x, const Bundle& y);
Bundle support_indicator(const Bundle& x);
// Indicator of the 0-based item set `items`.
Bundle coalition_bundle(std::span<const int> items, int num_items);
Bundle unit_bundle(int num_items);
Bundle basis_bundle(int item, int num_items);
bool is_nonnegative(const Bundle& x);
// Componentwise x <= y.
bool dominated_by(const Bundle& x, const Bundle& y);

// p . x, exactly.
Rational cost(const RationalVector& prices, const Bundle& x);
bool is_price_vector(const RationalVector& p);

// One agent's value map on C(domain upper). Validated nonnegative and
// nondecreasing at construction.
class ValuationTable {
 public:
  ValuationTable(std::string id, Box domain, std::vector<Rational> values);

  // Monotone completion of sparse data: value(y) = max of the stored values at
  // points y' <= y (0 when none). Throws std::invalid_argument if a stored
  // value is lower than a stored value below it.
  static ValuationTable complete(
      std::string id, const Box& domain,
      const std::vector<std::pair<Bundle, Rational>>& entries);

  const std::string& id() const { return id_; }
  const Box& domain() const { return domain_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at(std::size_t index) const { return values_[index]; }
  const Rational& at(const Bundle& x) const { return values_[domain_.index(x)]; }

 private:
  std::string id_;
  Box domain_;
  std::vector<Rational> values_;
};

// Integer allocation problem whose valuations only depend on m(x, w).
class MultiUnitAuction {
 public:
  MultiUnitAuction(Bundle endowment, std::vector<ValuationTable> valuations);

  int num_items() const { return static_cast<int>(endowment_.size()); }
  int num_agents() const { return static_cast<int>(valuations_.size()); }
  const Bundle& endowment() const { return endowment_; }
  const Box& endowment_box() const { return endowment_box_; }
  const ValuationTable& valuation(int agent) const {
    return valuations_[static_cast<std::size_t>(agent)];
  }
  const std::vector<ValuationTable>& valuations() const { return valuations_; }
  bool is_bundle_auction() const;

 private:
  Bundle endowment_;
  Box endowment_box_;
  std::vector<ValuationTable> valuations_;
};

// A multi-unit auction with unit endowment e.
class BundleAuction {
 public:
  explicit BundleAuction(MultiUnitAuction market);

  const MultiUnitAuction& market() const { return market_; }
  operator const MultiUnitAuction&() const { return market_; }  // NOLINT
  int num_items() const { return market_.num_items(); }
  int num_agents() const { return market_.num_agents(); }

 private:
  MultiUnitAuction market_;
};

// f^i(m(x, w)); defined for every nonnegative x.
const Rational& effective_value(const MultiUnitAuction& a, int agent,
                                const Bundle& x);
bool is_feasible(const MultiUnitAuction& a, const Allocation& X);
Rational profit(const MultiUnitAuction& a, int agent, const Bundle& x,
                const RationalVector& p);
Bundle allocation_total(const Allocation& X, int num_items);

}  // namespace matchcore

#endif  // MATCHCORE_AUCTION_HPP_
