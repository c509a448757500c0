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

#ifndef MATCHCORE_EQUILIBRIUM_HPP_
#define MATCHCORE_EQUILIBRIUM_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "matchcore/auction.hpp"
#include "matchcore/linear_program.hpp"
#include "matchcore/value_function.hpp"

namespace matchcore {

using RationalLp = LinearProgram<Rational>;
using RationalLpSolution = LpSolution<Rational>;

// A convex mixture of points of C(2w) that averages to w and beats V(w).
struct Refutation {
  std::vector<std::pair<Bundle, Rational>> mixture;
};

struct EquilibriumCertificate {
  PriceVector prices;
  Allocation allocation;
  std::vector<Rational> surplus;  // f^i(X^i) - p.X^i
  bool feasible = false;
  bool profit_maximal = false;
  bool zero_profit = false;
};

struct ExistenceVerdict {
  bool exists = false;
  // Whether the mixture LP optimum equals V(w).
  bool lp_condition = false;
  Rational lp_optimum;
  Rational value_at_endowment;
  WeakMonotonicityReport weak_monotonicity;
  // Set when weak monotonicity failed, so the LP duals alone could not be
  // trusted to be a price vector and a direct nonnegative price search
  // decided the answer instead.
  bool price_search_used = false;
  std::optional<EquilibriumCertificate> witness;
  std::optional<Refutation> refutation;
};

// maximize sum_x alpha(x) V(x)  s.t.  sum_x alpha(x) x = w, sum_x alpha(x) = 1,
// alpha >= 0, one column per x in C(2w) in lattice order. Rows 0..L-1 are the
// endowment rows, row L is the convexity row.
RationalLp mixture_lp(const ValueFunction& vf);

// V(w) - p.w >= V(x) - p.x for all x in C(2w).
bool supports_endowment(const ValueFunction& vf, const RationalVector& p);

// Endowment-row duals of an optimal mixture LP solution, validated against
// supports_endowment (and as a price vector when `require_price_vector`).
// Throws std::logic_error on validation failure.
PriceVector recover_prices(const ValueFunction& vf, const RationalLpSolution& sol,
                           bool require_price_vector = true);

// Nonnegative p maximizing sum p subject to supports_endowment. Returns a
// price vector if one exists.
std::optional<PriceVector> search_price_vector(const ValueFunction& vf);

EquilibriumCertificate assemble_certificate(const MultiUnitAuction& a,
                                            const PriceVector& p,
                                            const ValueFunction& vf);

ExistenceVerdict decide_existence(const MultiUnitAuction& a,
                                  const ValueFunction& vf);
ExistenceVerdict decide_existence(const BundleAuction& a);

enum class DeviationMode { kConstrained, kUnconstrained };

struct AgentCheck {
  bool optimal = true;
  Rational profit;
  std::optional<Bundle> deviation;  // best improving deviation, if any
  Rational deviation_profit;
};

struct VerificationReport {
  bool price_vector = false;
  bool feasible = false;
  bool profit_maximal = false;
  // Unconstrained mode with p >= 0: every x has profit no better than
  // m(x, w), so the enumerated check covers all of Z^L.
  bool covers_all_bundles = false;
  std::vector<AgentCheck> agents;
  bool holds = false;
};

// Constrained mode enumerates deviations in C(w), unconstrained in C(2w).
VerificationReport verify_equilibrium(const MultiUnitAuction& a,
                                      const RationalVector& p,
                                      const Allocation& X, DeviationMode mode);

// minimize sum_i m(i) + p.w  s.t.  sum_i m(i) + p.x >= V(x) for x in C(2w),
// p >= 0, m free. Variables: m(1..H) then p(1..L).
RationalLp surplus_price_lp(const ValueFunction& vf);

// (p, m) from the certificate is feasible for surplus_price_lp and attains
// its exact optimum.
bool is_surplus_price_optimal(const ValueFunction& vf,
                              const EquilibriumCertificate& cert);

// Same answer without solving: (p, m) is feasible and its value equals the
// mixture LP optimum, which bounds the minimization from below.
bool is_surplus_price_optimal(const ValueFunction& vf,
                              const EquilibriumCertificate& cert,
                              const Rational& mixture_optimum);

// Feasibility system over free p: p.(w - x) <= V(w) - V(x) for x != w.
RationalLp price_system(const ValueFunction& vf);

bool is_valid_refutation(const ValueFunction& vf, const Refutation& r);

}  // namespace matchcore

#endif  // MATCHCORE_EQUILIBRIUM_HPP_
