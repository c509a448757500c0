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

#include <stdexcept>
#include <string>

namespace matchcore {

AssignmentGame::AssignmentGame(RationalMatrix matrix)
    : matrix_(std::move(matrix)), real_items_(static_cast<int>(matrix_.cols())) {
  const auto n = matrix_.rows();
  if (n == 0 || matrix_.cols() == 0) {
    throw std::invalid_argument("assignment matrix must be nonempty");
  }
  if (matrix_.cols() > n) {
    throw std::invalid_argument(
        "assignment matrix has more items than agents; only column padding is supported");
  }
  if (matrix_.cols() < n) {
    RationalMatrix padded = RationalMatrix::Zero(n, n);
    padded.leftCols(matrix_.cols()) = matrix_;
    matrix_ = std::move(padded);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Rational best;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (matrix_(i, j).sign() < 0) {
        throw std::invalid_argument("assignment matrix entry (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ") is negative");
      }
      if (matrix_(i, j) > best) best = matrix_(i, j);
    }
    if (best.is_zero()) {
      throw std::invalid_argument("agent " + std::to_string(i + 1) +
                                  " values every item at 0");
    }
    row_max_.push_back(std::move(best));
  }
}

BundleAuction to_bundle_auction(const AssignmentGame& g, std::size_t cell_budget) {
  const int n = g.size();
  const Bundle e = unit_bundle(n);
  const std::size_t points = checked_box_size(e, cell_budget);
  if (points * static_cast<std::size_t>(n) > cell_budget) {
    throw std::length_error("assignment tables exceed the cell budget");
  }
  const Box box(e);
  std::vector<ValuationTable> tables;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> values(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
      const Bundle x = box.point(idx);
      for (int j = 0; j < n; ++j) {
        if (x(j) > 0 && g.matrix()(i, j) > values[idx]) values[idx] = g.matrix()(i, j);
      }
    }
    tables.emplace_back("agent" + std::to_string(i + 1), box, std::move(values));
  }
  return BundleAuction(MultiUnitAuction(e, std::move(tables)));
}

AssignmentSolution assignment_lp(const AssignmentGame& g) {
  const int n = g.size();
  RationalLp lp(n * n, Sense::kMaximize);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) lp.objective(i * n + j) = g.matrix()(i, j);
  }
  for (int i = 0; i < n; ++i) {
    RationalVector row = RationalVector::Zero(n * n);
    for (int j = 0; j < n; ++j) row(i * n + j) = Rational(1);
    lp.add_constraint(row, Relation::kLessEqual, Rational(1));
  }
  for (int j = 0; j < n; ++j) {
    RationalVector row = RationalVector::Zero(n * n);
    for (int i = 0; i < n; ++i) row(i * n + j) = Rational(1);
    lp.add_constraint(row, Relation::kLessEqual, Rational(1));
  }

  AssignmentSolution out;
  out.lp = lp_solve(lp);
  if (out.lp.status != LpStatus::kOptimal) {
    throw std::logic_error("assignment LP must be feasible and bounded");
  }
  out.value = out.lp.objective;
  out.item_of_agent.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& x = out.lp.primal(i * n + j);
      if (x.is_zero()) continue;
      if (!(x == Rational(1))) {
        throw std::logic_error("assignment LP returned a fractional vertex");
      }
      out.item_of_agent[static_cast<std::size_t>(i)] = j;
    }
  }
  return out;
}

Allocation assignment_allocation(const AssignmentGame& g,
                                 const std::vector<int>& item_of_agent) {
  const int n = g.size();
  Allocation X(static_cast<std::size_t>(n), Bundle::Zero(n));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    const int j = item_of_agent[static_cast<std::size_t>(i)];
    if (j < 0) continue;
    X[static_cast<std::size_t>(i)](j) = 1;
    used[static_cast<std::size_t>(j)] = true;
  }
  // Unassigned items go to any agent; monotone values make this harmless.
  for (int j = 0; j < n; ++j) {
    if (!used[static_cast<std::size_t>(j)]) X[0](j) += 1;
  }
  return X;
}

const char* to_string(ExistenceBranch branch) {
  return branch == ExistenceBranch::kFlatPrice ? "flat_price" : "mixture_lp";
}

AssignmentEquilibrium existence_pathway(const AssignmentGame& g,
                                        std::size_t cell_budget) {
  const BundleAuction auction = to_bundle_auction(g, cell_budget);
  const MultiUnitAuction& market = auction.market();
  const int n = g.size();

  AssignmentEquilibrium out;
  const AssignmentSolution solution = assignment_lp(g);
  out.value = solution.value;

  Rational best_total;
  Rational floor = g.row_max(0);
  for (int i = 0; i < n; ++i) {
    best_total += g.row_max(i);
    if (g.row_max(i) < floor) floor = g.row_max(i);
  }

  if (solution.value == best_total) {
    // Every efficient allocation hands each agent a best item.
    out.branch = ExistenceBranch::kFlatPrice;
    EquilibriumCertificate& cert = out.certificate;
    cert.prices = PriceVector::Constant(n, floor);
    cert.allocation = assignment_allocation(g, solution.item_of_agent);
    cert.zero_profit = true;
    for (int i = 0; i < n; ++i) {
      cert.surplus.push_back(
          profit(market, i, cert.allocation[static_cast<std::size_t>(i)], cert.prices));
      cert.zero_profit = cert.zero_profit && cert.surplus.back().is_zero();
    }
    const auto report = verify_equilibrium(market, cert.prices, cert.allocation,
                                           DeviationMode::kUnconstrained);
    cert.feasible = report.feasible;
    cert.profit_maximal = report.profit_maximal && report.price_vector;
    if (!report.holds) {
      throw std::logic_error("flat-price certificate failed verification");
    }
    return out;
  }

  out.branch = ExistenceBranch::kMixtureLp;
  const ValueFunction vf = build_value_function(market, cell_budget);
  if (!(vf.at(market.endowment()) == solution.value)) {
    throw std::logic_error("assignment LP optimum disagrees with V(e)");
  }
  ExistenceVerdict verdict = decide_existence(market, vf);
  if (!verdict.exists) {
    throw std::logic_error("no equilibrium found for an assignment game");
  }
  out.certificate = *verdict.witness;
  out.existence = std::move(verdict);
  return out;
}

}  // namespace matchcore
