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

#include "matchcore/random_instances.hpp"

namespace matchcore {
namespace {

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

RationalVector integer_row(Rng& rng, Eigen::Index n, int lo, int hi) {
  RationalVector row(n);
  for (Eigen::Index j = 0; j < n; ++j) row(j) = Rational(uniform(rng, lo, hi));
  return row;
}

}  // namespace

TuGame random_tu_game(Rng& rng, int players, int max_worth) {
  std::vector<Rational> worths(std::size_t{1} << players);
  for (;;) {
    bool positive = false;
    for (Coalition s = 1; s < worths.size(); ++s) {
      worths[s] = coalition_size(s) < 2 ? Rational(0) : Rational(uniform(rng, 0, max_worth));
      positive = positive || worths[s].sign() > 0;
    }
    if (positive) return TuGame(players, worths, players == 2);
  }
}

MultiUnitAuction random_multiunit_auction(Rng& rng, int items, int agents,
                                          int max_units, int max_step) {
  Bundle w(items);
  for (int j = 0; j < items; ++j) w(j) = uniform(rng, 1, max_units);
  const Box box(w);
  std::vector<ValuationTable> tables;
  for (int i = 0; i < agents; ++i) {
    const bool dull = uniform(rng, 0, 4) == 0;
    std::vector<Rational> values(box.size());
    for (std::size_t idx = 1; idx < box.size(); ++idx) {
      const Bundle x = box.point(idx);
      Rational best;
      for (int j = 0; j < items; ++j) {
        if (x(j) > 0 && values[idx - box.stride(j)] > best) best = values[idx - box.stride(j)];
      }
      values[idx] = dull ? best : best + Rational(uniform(rng, 0, max_step));
    }
    tables.emplace_back("agent" + std::to_string(i + 1), box, std::move(values));
  }
  return MultiUnitAuction(w, std::move(tables));
}

AssignmentGame random_assignment_game(Rng& rng, int size, int max_entry) {
  RationalMatrix m(size, size);
  for (int i = 0; i < size; ++i) {
    bool positive = false;
    while (!positive) {
      for (int j = 0; j < size; ++j) {
        m(i, j) = Rational(uniform(rng, 0, max_entry));
        positive = positive || m(i, j).sign() > 0;
      }
    }
  }
  return AssignmentGame(std::move(m));
}

RationalLp random_feasible_lp(Rng& rng, int max_variables, int max_constraints) {
  const int n = uniform(rng, 1, max_variables);
  const int m = uniform(rng, 1, max_constraints);
  RationalLp lp(n, uniform(rng, 0, 1) ? Sense::kMaximize : Sense::kMinimize);
  lp.objective = integer_row(rng, n, -5, 5);
  // Each free variable costs two bound rows out of the constraint budget.
  int spare = m - 1;
  for (int j = 0; j < n && spare >= 2; ++j) {
    if (uniform(rng, 0, 5) == 0) {
      lp.free_variable[static_cast<std::size_t>(j)] = true;
      spare -= 2;
    }
  }
  RationalVector x0(n);
  for (int j = 0; j < n; ++j) {
    x0(j) = Rational(uniform(rng, lp.is_free(j) ? -3 : 0, 3));
  }
  for (int i = 0; i < spare; ++i) {
    RationalVector row = integer_row(rng, n, -4, 4);
    const Rational at = row.dot(x0);
    switch (uniform(rng, 0, 2)) {
      case 0: lp.add_constraint(row, Relation::kLessEqual, at + Rational(uniform(rng, 0, 3))); break;
      case 1: lp.add_constraint(row, Relation::kEqual, at); break;
      default: lp.add_constraint(row, Relation::kGreaterEqual, at - Rational(uniform(rng, 0, 3))); break;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!lp.is_free(j)) continue;
    RationalVector unit = RationalVector::Zero(n);
    unit(j) = Rational(1);
    lp.add_constraint(unit, Relation::kGreaterEqual, Rational(-10));
    lp.add_constraint(unit, Relation::kLessEqual, Rational(10));
  }
  lp.add_constraint(RationalVector::Ones(n), Relation::kLessEqual, Rational(10 * n));
  return lp;
}

RationalLp random_system(Rng& rng, int max_variables, int max_constraints) {
  const int n = uniform(rng, 1, max_variables);
  const int m = uniform(rng, 1, max_constraints);
  RationalLp lp(n, Sense::kMaximize);
  for (int j = 0; j < n; ++j) lp.free_variable[static_cast<std::size_t>(j)] = uniform(rng, 0, 4) == 0;
  for (int i = 0; i < m; ++i) {
    const auto rel = static_cast<Relation>(uniform(rng, 0, 2));
    lp.add_constraint(integer_row(rng, n, -3, 3), rel, Rational(uniform(rng, -4, 4)));
  }
  return lp;
}

std::vector<LpFixture> degenerate_lp_fixtures() {
  std::vector<LpFixture> out;
  auto row = [](std::initializer_list<Rational> v) {
    RationalVector r(static_cast<Eigen::Index>(v.size()));
    Eigen::Index k = 0;
    for (const auto& x : v) r(k++) = x;
    return r;
  };
  {
    // Beale's example; cycles under the textbook largest-coefficient rule.
    RationalLp lp(4, Sense::kMinimize);
    lp.objective = row({Rational(-3, 4), Rational(150), Rational(-1, 50), Rational(6)});
    lp.add_constraint(row({Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)}),
                      Relation::kLessEqual, Rational(0));
    lp.add_constraint(row({Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)}),
                      Relation::kLessEqual, Rational(0));
    lp.add_constraint(row({Rational(0), Rational(0), Rational(1), Rational(0)}),
                      Relation::kLessEqual, Rational(1));
    out.push_back({"beale", std::move(lp), LpStatus::kOptimal, Rational(-1, 20)});
  }
  {
    // Kuhn's example; also cycles under Dantzig's rule.
    RationalLp lp(4, Sense::kMinimize);
    lp.objective = row({Rational(-2), Rational(-3), Rational(1), Rational(12)});
    lp.add_constraint(row({Rational(-2), Rational(-9), Rational(1), Rational(9)}),
                      Relation::kLessEqual, Rational(0));
    lp.add_constraint(row({Rational(1, 3), Rational(1), Rational(-1, 3), Rational(-2)}),
                      Relation::kLessEqual, Rational(0));
    lp.add_constraint(row({Rational(2), Rational(3), Rational(-1), Rational(-12)}),
                      Relation::kLessEqual, Rational(2));
    out.push_back({"kuhn", std::move(lp), LpStatus::kOptimal, Rational(-2)});
  }
  {
    // Many constraints tight at the optimum vertex (1, 1).
    RationalLp lp(2, Sense::kMaximize);
    lp.objective = row({Rational(1), Rational(1)});
    lp.add_constraint(row({Rational(1), Rational(0)}), Relation::kLessEqual, Rational(1));
    lp.add_constraint(row({Rational(0), Rational(1)}), Relation::kLessEqual, Rational(1));
    lp.add_constraint(row({Rational(1), Rational(1)}), Relation::kLessEqual, Rational(2));
    lp.add_constraint(row({Rational(2), Rational(1)}), Relation::kLessEqual, Rational(3));
    lp.add_constraint(row({Rational(1), Rational(2)}), Relation::kLessEqual, Rational(3));
    out.push_back({"overdetermined_vertex", std::move(lp), LpStatus::kOptimal, Rational(2)});
  }
  {
    // Degenerate start: every rhs is zero.
    RationalLp lp(3, Sense::kMaximize);
    lp.objective = row({Rational(1), Rational(1), Rational(1)});
    lp.add_constraint(row({Rational(1), Rational(-1), Rational(0)}), Relation::kLessEqual, Rational(0));
    lp.add_constraint(row({Rational(0), Rational(1), Rational(-1)}), Relation::kLessEqual, Rational(0));
    lp.add_constraint(row({Rational(-1), Rational(0), Rational(1)}), Relation::kLessEqual, Rational(0));
    lp.add_constraint(row({Rational(1), Rational(1), Rational(1)}), Relation::kLessEqual, Rational(3));
    out.push_back({"zero_rhs_cycle", std::move(lp), LpStatus::kOptimal, Rational(3)});
  }
  {
    // Redundant equalities leave an artificial basic at zero after phase one.
    RationalLp lp(3, Sense::kMinimize);
    lp.objective = row({Rational(1), Rational(2), Rational(3)});
    lp.add_constraint(row({Rational(1), Rational(1), Rational(1)}), Relation::kEqual, Rational(1));
    lp.add_constraint(row({Rational(2), Rational(2), Rational(2)}), Relation::kEqual, Rational(2));
    lp.add_constraint(row({Rational(1), Rational(0), Rational(0)}), Relation::kGreaterEqual, Rational(0));
    out.push_back({"redundant_equalities", std::move(lp), LpStatus::kOptimal, Rational(1)});
  }
  {
    RationalLp lp(2, Sense::kMaximize);
    lp.objective = row({Rational(1), Rational(0)});
    lp.add_constraint(row({Rational(1), Rational(1)}), Relation::kLessEqual, Rational(1));
    lp.add_constraint(row({Rational(1), Rational(1)}), Relation::kGreaterEqual, Rational(2));
    out.push_back({"infeasible_pair", std::move(lp), LpStatus::kInfeasible, Rational(0)});
  }
  return out;
}

Allocation random_allocation(Rng& rng, const MultiUnitAuction& a) {
  Allocation X(static_cast<std::size_t>(a.num_agents()), Bundle::Zero(a.num_items()));
  for (int j = 0; j < a.num_items(); ++j) {
    for (int u = 0; u < a.endowment()(j); ++u) {
      X[static_cast<std::size_t>(uniform(rng, 0, a.num_agents() - 1))](j) += 1;
    }
  }
  return X;
}

PriceVector random_prices(Rng& rng, int items, int max) {
  PriceVector p(items);
  for (int j = 0; j < items; ++j) p(j) = Rational(uniform(rng, 0, 2 * max), 2);
  return p;
}

}  // namespace matchcore
