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

#include "matchcore/multiunit.hpp"

#include <string>

namespace matchcore {

Bundle UnitExpansion::aggregate(const Bundle& y) const {
  if (y.size() != num_units) {
    throw std::invalid_argument("expanded bundle has the wrong length");
  }
  Bundle x = Bundle::Zero(endowment.size());
  for (int k = 0; k < num_units; ++k) {
    x(item_of_unit[static_cast<std::size_t>(k)]) += y(k);
  }
  return x;
}

ExpandedAuction expand(const MultiUnitAuction& a, std::size_t cell_budget) {
  UnitExpansion exp;
  exp.endowment = a.endowment();
  for (int j = 0; j < a.num_items(); ++j) {
    std::vector<int> group;
    for (int u = 0; u < a.endowment()(j); ++u) {
      group.push_back(exp.num_units);
      exp.item_of_unit.push_back(j);
      ++exp.num_units;
    }
    exp.groups.push_back(std::move(group));
  }

  const Bundle unit = unit_bundle(exp.num_units);
  const std::size_t points = checked_box_size(unit, cell_budget);
  if (points * static_cast<std::size_t>(a.num_agents()) > cell_budget) {
    throw std::length_error("expansion needs " + std::to_string(a.num_agents()) +
                            " x 2^" + std::to_string(exp.num_units) +
                            " table entries, over budget");
  }
  const Box box(unit);
  std::vector<ValuationTable> tables;
  for (int i = 0; i < a.num_agents(); ++i) {
    std::vector<Rational> values(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
      values[idx] = effective_value(a, i, exp.aggregate(box.point(idx)));
    }
    tables.emplace_back(a.valuation(i).id(), box, std::move(values));
  }
  return ExpandedAuction{std::move(exp),
                         BundleAuction(MultiUnitAuction(unit, std::move(tables)))};
}

ArbitrageError::ArbitrageError(int item, int cheap_unit, int dear_unit, int buyer)
    : std::runtime_error("units " + std::to_string(cheap_unit + 1) + " and " +
                         std::to_string(dear_unit + 1) + " of item " +
                         std::to_string(item + 1) +
                         " are priced differently; agent " +
                         std::to_string(buyer + 1) +
                         " could buy the cheaper unit instead"),
      item_(item),
      cheap_unit_(cheap_unit),
      dear_unit_(dear_unit),
      buyer_(buyer) {}

std::pair<PriceVector, Allocation> push_equilibrium(const UnitExpansion& exp,
                                                    const MultiUnitAuction& source,
                                                    const PriceVector& p,
                                                    const Allocation& X) {
  if (!verify_equilibrium(source, p, X, DeviationMode::kConstrained).holds) {
    throw std::invalid_argument("push_equilibrium: input is not an equilibrium");
  }
  PriceVector q(exp.num_units);
  for (int k = 0; k < exp.num_units; ++k) {
    q(k) = p(exp.item_of_unit[static_cast<std::size_t>(k)]);
  }
  Allocation Y(X.size(), Bundle::Zero(exp.num_units));
  for (std::size_t j = 0; j < exp.groups.size(); ++j) {
    const auto& group = exp.groups[j];
    std::size_t next = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      for (int u = 0; u < X[i](static_cast<Eigen::Index>(j)); ++u) {
        Y[i](group[next++]) = 1;
      }
    }
  }
  return {std::move(q), std::move(Y)};
}

std::pair<PriceVector, Allocation> pull_equilibrium(const UnitExpansion& exp,
                                                    const BundleAuction& expanded,
                                                    const PriceVector& q,
                                                    const Allocation& Y) {
  if (q.size() != exp.num_units) {
    throw std::invalid_argument("pull_equilibrium: price vector length != unit count");
  }
  if (Y.size() != static_cast<std::size_t>(expanded.num_agents())) {
    throw std::invalid_argument("pull_equilibrium: allocation needs one bundle per agent");
  }
  auto holder = [&](int unit) {
    for (std::size_t i = 0; i < Y.size(); ++i) {
      if (Y[i].size() == exp.num_units && Y[i](unit) > 0) return static_cast<int>(i);
    }
    return -1;
  };
  for (std::size_t j = 0; j < exp.groups.size(); ++j) {
    for (const int dear : exp.groups[j]) {
      const int buyer = holder(dear);
      for (const int cheap : exp.groups[j]) {
        if (q(cheap) < q(dear) && holder(cheap) != buyer && buyer >= 0) {
          throw ArbitrageError(static_cast<int>(j), cheap, dear, buyer);
        }
      }
    }
  }
  if (!verify_equilibrium(expanded.market(), q, Y, DeviationMode::kConstrained).holds) {
    throw std::invalid_argument("pull_equilibrium: input is not an equilibrium");
  }
  PriceVector p(static_cast<Eigen::Index>(exp.groups.size()));
  for (std::size_t j = 0; j < exp.groups.size(); ++j) {
    // Prices differ within a group only when one agent holds every unit;
    // the mean keeps that agent's payment and deters the others.
    Rational total;
    for (const int k : exp.groups[j]) total += q(k);
    p(static_cast<Eigen::Index>(j)) =
        total / Rational(static_cast<long>(exp.groups[j].size()));
  }
  Allocation X;
  X.reserve(Y.size());
  for (const auto& y : Y) X.push_back(exp.aggregate(y));
  return {std::move(p), std::move(X)};
}

ExistenceVerdict decide_existence_multiunit(const MultiUnitAuction& a,
                                            std::size_t cell_budget) {
  const ValueFunction vf = build_value_function(a, cell_budget);
  return decide_existence(a, vf);
}

}  // namespace matchcore
