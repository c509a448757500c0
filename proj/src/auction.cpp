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

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace matchcore {

Box::Box(Bundle upper) : upper_(std::move(upper)) {
  if (!is_nonnegative(upper_)) {
    throw std::invalid_argument("box upper corner must be nonnegative");
  }
  const auto L = static_cast<std::size_t>(upper_.size());
  strides_.assign(L, 1);
  size_ = 1;
  for (std::size_t j = L; j-- > 0;) {
    strides_[j] = size_;
    size_ *= static_cast<std::size_t>(upper_(static_cast<Eigen::Index>(j)) + 1);
  }
}

bool Box::contains(const Bundle& x) const {
  return x.size() == upper_.size() && is_nonnegative(x) &&
         (x.array() <= upper_.array()).all();
}

std::size_t Box::index(const Bundle& x) const {
  std::size_t idx = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    idx += strides_[static_cast<std::size_t>(j)] * static_cast<std::size_t>(x(j));
  }
  return idx;
}

Bundle Box::point(std::size_t index) const {
  Bundle x(upper_.size());
  for (Eigen::Index j = 0; j < upper_.size(); ++j) {
    const std::size_t s = strides_[static_cast<std::size_t>(j)];
    x(j) = static_cast<int>(index / s);
    index %= s;
  }
  return x;
}

std::size_t checked_box_size(const Bundle& upper, std::size_t limit) {
  std::size_t size = 1;
  for (Eigen::Index j = 0; j < upper.size(); ++j) {
    const auto side = static_cast<std::size_t>(upper(j)) + 1;
    if (size > limit / side) {
      throw std::length_error("lattice size exceeds budget of " +
                              std::to_string(limit) + " points");
    }
    size *= side;
  }
  if (size > limit) {
    throw std::length_error("lattice size " + std::to_string(size) +
                            " exceeds budget of " + std::to_string(limit));
  }
  return size;
}

Bundle meet(const Bundle& x, const Bundle& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("meet: bundle lengths differ");
  }
  return x.cwiseMin(y);
}

Bundle support_indicator(const Bundle& x) {
  return (x.array() > 0).cast<int>().matrix();
}

Bundle coalition_bundle(std::span<const int> items, int num_items) {
  Bundle b = Bundle::Zero(num_items);
  for (const int j : items) {
    if (j < 0 || j >= num_items) {
      throw std::out_of_range("item index " + std::to_string(j) +
                              " outside [0, " + std::to_string(num_items) + ")");
    }
    b(j) = 1;
  }
  return b;
}

Bundle unit_bundle(int num_items) { return Bundle::Ones(num_items); }

Bundle basis_bundle(int item, int num_items) {
  Bundle b = Bundle::Zero(num_items);
  b(item) = 1;
  return b;
}

bool is_nonnegative(const Bundle& x) { return (x.array() >= 0).all(); }

bool dominated_by(const Bundle& x, const Bundle& y) {
  return x.size() == y.size() && (x.array() <= y.array()).all();
}

Rational cost(const RationalVector& prices, const Bundle& x) {
  if (prices.size() != x.size()) {
    throw std::invalid_argument("price/bundle length mismatch");
  }
  Rational total;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) != 0) total += prices(j) * Rational(x(j));
  }
  return total;
}

bool is_price_vector(const RationalVector& p) {
  bool positive = false;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (p(j).sign() < 0) return false;
    positive = positive || p(j).sign() > 0;
  }
  return positive;
}

ValuationTable::ValuationTable(std::string id, Box domain,
                               std::vector<Rational> values)
    : id_(std::move(id)), domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw std::invalid_argument("valuation '" + id_ + "': table has " +
                                std::to_string(values_.size()) +
                                " entries, domain has " +
                                std::to_string(domain_.size()));
  }
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (values_[idx].sign() < 0) {
      throw std::invalid_argument("valuation '" + id_ + "' is negative at " +
                                  std::to_string(idx));
    }
  }
  // Monotone along the covering relation of the box.
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    const Bundle x = domain_.point(idx);
    for (int j = 0; j < domain_.dimension(); ++j) {
      if (x(j) < domain_.upper()(j) &&
          values_[idx + domain_.stride(j)] < values_[idx]) {
        throw std::invalid_argument("valuation '" + id_ +
                                    "' is not nondecreasing");
      }
    }
  }
}

ValuationTable ValuationTable::complete(
    std::string id, const Box& domain,
    const std::vector<std::pair<Bundle, Rational>>& entries) {
  std::vector<Rational> values(domain.size());
  std::vector<std::optional<Rational>> given(domain.size());
  for (const auto& [bundle, value] : entries) {
    if (!domain.contains(bundle)) {
      throw std::invalid_argument("valuation '" + id +
                                  "': bundle outside the endowment box");
    }
    if (value.sign() < 0) {
      throw std::invalid_argument("valuation '" + id + "': negative value");
    }
    const std::size_t idx = domain.index(bundle);
    if (given[idx] && !(*given[idx] == value)) {
      throw std::invalid_argument("valuation '" + id +
                                  "': conflicting values for one bundle");
    }
    given[idx] = value;
    values[idx] = value;
  }
  // Increasing index visits every predecessor first.
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const Bundle x = domain.point(idx);
    for (int j = 0; j < domain.dimension(); ++j) {
      if (x(j) > 0) values[idx] = std::max(values[idx], values[idx - domain.stride(j)]);
    }
    if (given[idx] && !(*given[idx] == values[idx])) {
      throw std::invalid_argument("valuation '" + id +
                                  "' is not nondecreasing on the given bundles");
    }
  }
  return ValuationTable(std::move(id), domain, std::move(values));
}

MultiUnitAuction::MultiUnitAuction(Bundle endowment,
                                   std::vector<ValuationTable> valuations)
    : endowment_(std::move(endowment)), valuations_(std::move(valuations)) {
  if (endowment_.size() == 0) {
    throw std::invalid_argument("auction needs at least one item type");
  }
  if (valuations_.empty()) {
    throw std::invalid_argument("auction needs at least one agent");
  }
  if ((endowment_.array() < 1).any()) {
    throw std::invalid_argument("every endowment entry must be >= 1");
  }
  endowment_box_ = Box(endowment_);
  for (const auto& v : valuations_) {
    if (v.domain().upper() != endowment_) {
      throw std::invalid_argument("valuation '" + v.id() +
                                  "' is not defined on C(endowment)");
    }
  }
}

bool MultiUnitAuction::is_bundle_auction() const {
  return (endowment_.array() == 1).all();
}

BundleAuction::BundleAuction(MultiUnitAuction market) : market_(std::move(market)) {
  if (!market_.is_bundle_auction()) {
    throw std::invalid_argument("bundle auction requires endowment e");
  }
}

const Rational& effective_value(const MultiUnitAuction& a, int agent,
                                const Bundle& x) {
  if (agent < 0 || agent >= a.num_agents()) {
    throw std::out_of_range("agent index out of range");
  }
  if (!is_nonnegative(x)) throw std::invalid_argument("negative bundle");
  return a.valuation(agent).at(meet(x, a.endowment()));
}

Bundle allocation_total(const Allocation& X, int num_items) {
  Bundle total = Bundle::Zero(num_items);
  for (const auto& b : X) {
    if (b.size() != num_items) {
      throw std::invalid_argument("allocation bundle length mismatch");
    }
    total += b;
  }
  return total;
}

bool is_feasible(const MultiUnitAuction& a, const Allocation& X) {
  if (static_cast<int>(X.size()) != a.num_agents()) return false;
  for (const auto& b : X) {
    if (b.size() != a.num_items() || !is_nonnegative(b)) return false;
  }
  return allocation_total(X, a.num_items()) == a.endowment();
}

Rational profit(const MultiUnitAuction& a, int agent, const Bundle& x,
                const RationalVector& p) {
  return effective_value(a, agent, x) - cost(p, x);
}

}  // namespace matchcore
