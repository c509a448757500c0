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

#include "matchcore/equilibrium.hpp"

#include <stdexcept>

namespace matchcore {

RationalLp mixture_lp(const ValueFunction& vf) {
  const Box& box = vf.domain();
  const Bundle& w = vf.endowment();
  const auto L = w.size();
  const auto n = static_cast<Eigen::Index>(box.size());

  RationalLp lp(n, Sense::kMaximize);
  lp.constraints = RationalMatrix::Zero(L + 1, n);
  lp.rhs = RationalVector(L + 1);
  lp.relations.assign(static_cast<std::size_t>(L + 1), Relation::kEqual);
  for (Eigen::Index col = 0; col < n; ++col) {
    const Bundle x = box.point(static_cast<std::size_t>(col));
    lp.objective(col) = vf.at(static_cast<std::size_t>(col));
    for (Eigen::Index j = 0; j < L; ++j) {
      if (x(j) != 0) lp.constraints(j, col) = Rational(x(j));
    }
    lp.constraints(L, col) = Rational(1);
  }
  for (Eigen::Index j = 0; j < L; ++j) lp.rhs(j) = Rational(w(j));
  lp.rhs(L) = Rational(1);
  return lp;
}

bool supports_endowment(const ValueFunction& vf, const RationalVector& p) {
  const Box& box = vf.domain();
  if (p.size() != box.dimension()) return false;
  const Rational base = vf.at(vf.endowment()) - cost(p, vf.endowment());
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    if (vf.at(idx) - cost(p, box.point(idx)) > base) return false;
  }
  return true;
}

PriceVector recover_prices(const ValueFunction& vf, const RationalLpSolution& sol,
                           bool require_price_vector) {
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("price recovery needs an optimal mixture LP");
  }
  const auto L = vf.endowment().size();
  PriceVector p = sol.duals.head(L);
  if (!supports_endowment(vf, p)) {
    throw std::logic_error("recovered prices do not support the endowment");
  }
  if (require_price_vector && !is_price_vector(p)) {
    throw std::logic_error("recovered prices are not a price vector");
  }
  return p;
}

std::optional<PriceVector> search_price_vector(const ValueFunction& vf) {
  const Box& box = vf.domain();
  const Bundle& w = vf.endowment();
  const auto L = w.size();
  RationalLp lp(L, Sense::kMaximize);
  lp.objective = RationalVector::Ones(L);
  const std::size_t home = box.index(w);
  const Rational& vw = vf.at(home);
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    if (idx == home) continue;
    const Bundle diff = w - box.point(idx);
    lp.add_constraint(diff.cast<Rational>(), Relation::kLessEqual, vw - vf.at(idx));
  }
  const auto sol = lp_solve(lp);
  if (sol.status != LpStatus::kOptimal || sol.objective.sign() <= 0) {
    return std::nullopt;
  }
  return sol.primal;
}

EquilibriumCertificate assemble_certificate(const MultiUnitAuction& a,
                                            const PriceVector& p,
                                            const ValueFunction& vf) {
  EquilibriumCertificate cert;
  cert.prices = p;
  cert.allocation = vf.efficient_allocation(a.endowment());
  cert.zero_profit = true;
  for (int i = 0; i < a.num_agents(); ++i) {
    cert.surplus.push_back(
        profit(a, i, cert.allocation[static_cast<std::size_t>(i)], p));
    cert.zero_profit = cert.zero_profit && cert.surplus.back().is_zero();
  }
  const auto report =
      verify_equilibrium(a, p, cert.allocation, DeviationMode::kUnconstrained);
  cert.feasible = report.feasible;
  cert.profit_maximal = report.profit_maximal && report.price_vector;
  return cert;
}

ExistenceVerdict decide_existence(const MultiUnitAuction& a,
                                  const ValueFunction& vf) {
  ExistenceVerdict verdict;
  verdict.value_at_endowment = vf.at(a.endowment());
  verdict.weak_monotonicity = check_weak_monotonicity(vf);

  const RationalLp lp = mixture_lp(vf);
  const RationalLpSolution sol = lp_solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("mixture LP must be feasible and bounded");
  }
  verdict.lp_optimum = sol.objective;
  verdict.lp_condition = sol.objective == verdict.value_at_endowment;

  if (!verdict.lp_condition) {
    Refutation r;
    for (Eigen::Index col = 0; col < sol.primal.size(); ++col) {
      if (sol.primal(col).sign() > 0) {
        r.mixture.emplace_back(vf.domain().point(static_cast<std::size_t>(col)),
                               sol.primal(col));
      }
    }
    verdict.refutation = std::move(r);
    return verdict;
  }

  std::optional<PriceVector> prices;
  if (verdict.weak_monotonicity.holds) {
    prices = recover_prices(vf, sol, true);
  } else {
    PriceVector dual = recover_prices(vf, sol, false);
    if (is_price_vector(dual)) {
      prices = std::move(dual);
    } else {
      verdict.price_search_used = true;
      prices = search_price_vector(vf);
    }
  }
  if (!prices) return verdict;

  EquilibriumCertificate cert = assemble_certificate(a, *prices, vf);
  if (!cert.feasible || !cert.profit_maximal) {
    throw std::logic_error("supporting prices failed to yield an equilibrium");
  }
  verdict.exists = true;
  verdict.witness = std::move(cert);
  return verdict;
}

ExistenceVerdict decide_existence(const BundleAuction& a) {
  const ValueFunction vf = build_value_function(a.market());
  return decide_existence(a.market(), vf);
}

VerificationReport verify_equilibrium(const MultiUnitAuction& a,
                                      const RationalVector& p,
                                      const Allocation& X, DeviationMode mode) {
  if (p.size() != a.num_items() || static_cast<int>(X.size()) != a.num_agents()) {
    throw std::invalid_argument("price/allocation dimensions do not match the auction");
  }
  for (const auto& b : X) {
    if (b.size() != a.num_items() || !is_nonnegative(b)) {
      throw std::invalid_argument("allocation bundles must be nonnegative L-vectors");
    }
  }
  VerificationReport report;
  report.price_vector = is_price_vector(p);
  report.feasible = is_feasible(a, X);

  const Box deviations(mode == DeviationMode::kConstrained
                           ? a.endowment()
                           : Bundle(2 * a.endowment()));
  const Box& small = a.endowment_box();
  std::vector<Rational> costs(deviations.size());
  std::vector<std::size_t> clamped(deviations.size());
  for (std::size_t idx = 0; idx < deviations.size(); ++idx) {
    const Bundle x = deviations.point(idx);
    costs[idx] = cost(p, x);
    clamped[idx] = small.index(meet(x, a.endowment()));
  }

  report.profit_maximal = true;
  for (int i = 0; i < a.num_agents(); ++i) {
    AgentCheck check;
    check.profit = profit(a, i, X[static_cast<std::size_t>(i)], p);
    const auto& table = a.valuation(i).values();
    for (std::size_t idx = 0; idx < deviations.size(); ++idx) {
      Rational candidate = table[clamped[idx]] - costs[idx];
      if (candidate > check.profit &&
          (!check.deviation || candidate > check.deviation_profit)) {
        check.deviation = deviations.point(idx);
        check.deviation_profit = std::move(candidate);
      }
    }
    check.optimal = !check.deviation.has_value();
    report.profit_maximal = report.profit_maximal && check.optimal;
    report.agents.push_back(std::move(check));
  }
  report.covers_all_bundles = mode == DeviationMode::kUnconstrained &&
                              (p.array() >= Rational(0)).all();
  report.holds = report.price_vector && report.feasible && report.profit_maximal;
  return report;
}

RationalLp surplus_price_lp(const ValueFunction& vf) {
  const Box& box = vf.domain();
  const Bundle& w = vf.endowment();
  const auto L = w.size();
  const auto H = static_cast<Eigen::Index>(vf.num_agents());
  RationalLp lp(H + L, Sense::kMinimize);
  for (Eigen::Index i = 0; i < H; ++i) {
    lp.objective(i) = Rational(1);
    lp.free_variable[static_cast<std::size_t>(i)] = true;
  }
  for (Eigen::Index j = 0; j < L; ++j) lp.objective(H + j) = Rational(w(j));
  lp.constraints = RationalMatrix::Zero(static_cast<Eigen::Index>(box.size()), H + L);
  lp.rhs = RationalVector(static_cast<Eigen::Index>(box.size()));
  lp.relations.assign(box.size(), Relation::kGreaterEqual);
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    const auto row = static_cast<Eigen::Index>(idx);
    const Bundle x = box.point(idx);
    for (Eigen::Index i = 0; i < H; ++i) lp.constraints(row, i) = Rational(1);
    for (Eigen::Index j = 0; j < L; ++j) {
      if (x(j) != 0) lp.constraints(row, H + j) = Rational(x(j));
    }
    lp.rhs(row) = vf.at(idx);
  }
  return lp;
}

bool is_surplus_price_optimal(const ValueFunction& vf,
                              const EquilibriumCertificate& cert) {
  const RationalLp lp = surplus_price_lp(vf);
  const auto H = static_cast<Eigen::Index>(vf.num_agents());
  if (static_cast<Eigen::Index>(cert.surplus.size()) != H) return false;
  RationalVector point(lp.num_variables());
  for (Eigen::Index i = 0; i < H; ++i) point(i) = cert.surplus[static_cast<std::size_t>(i)];
  point.tail(cert.prices.size()) = cert.prices;
  if (!is_primal_feasible(lp, point)) return false;
  const auto sol = lp_solve(lp);
  return sol.status == LpStatus::kOptimal && lp.objective.dot(point) == sol.objective;
}

bool is_surplus_price_optimal(const ValueFunction& vf,
                              const EquilibriumCertificate& cert,
                              const Rational& mixture_optimum) {
  const auto H = static_cast<Eigen::Index>(vf.num_agents());
  if (static_cast<Eigen::Index>(cert.surplus.size()) != H ||
      cert.prices.size() != vf.endowment().size() || !is_price_vector(cert.prices)) {
    return false;
  }
  Rational total;
  for (const auto& m : cert.surplus) total += m;
  if (!(total + cost(cert.prices, vf.endowment()) == mixture_optimum)) return false;
  const Box& box = vf.domain();
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    if (total + cost(cert.prices, box.point(idx)) < vf.at(idx)) return false;
  }
  return true;
}

RationalLp price_system(const ValueFunction& vf) {
  const Box& box = vf.domain();
  const Bundle& w = vf.endowment();
  const auto L = w.size();
  RationalLp lp(L, Sense::kMaximize);
  lp.free_variable.assign(static_cast<std::size_t>(L), true);
  const std::size_t home = box.index(w);
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    if (idx == home) continue;
    const Bundle diff = w - box.point(idx);
    lp.add_constraint(diff.cast<Rational>(), Relation::kLessEqual,
                      vf.at(home) - vf.at(idx));
  }
  return lp;
}

bool is_valid_refutation(const ValueFunction& vf, const Refutation& r) {
  const Bundle& w = vf.endowment();
  RationalVector mean = RationalVector::Zero(w.size());
  Rational weight;
  Rational value;
  for (const auto& [x, alpha] : r.mixture) {
    if (alpha.sign() < 0 || !vf.domain().contains(x)) return false;
    mean += alpha * x.cast<Rational>();
    weight += alpha;
    value += alpha * vf.at(x);
  }
  return weight == Rational(1) && mean == w.cast<Rational>() &&
         value > vf.at(w);
}

}  // namespace matchcore
