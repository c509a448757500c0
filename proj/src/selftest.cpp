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

#include "matchcore/selftest.hpp"

#include <exception>
#include <sstream>

#include "matchcore/assignment.hpp"
#include "matchcore/multiunit.hpp"
#include "matchcore/random_instances.hpp"
#include "matchcore/tu_game.hpp"

namespace matchcore {
namespace {

constexpr std::size_t kMaxReportedFailures = 10;

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// The random part of the core suites: 500 games, then the exhaustive
// 3-player games with worths in {0, 1, 2}.
std::vector<TuGame> core_suite_games(std::uint64_t seed) {
  std::vector<TuGame> games;
  Rng rng(seed);
  for (int t = 0; t < 500; ++t) {
    games.push_back(random_tu_game(rng, uniform(rng, 3, 5), 20));
  }
  const Coalition nontrivial[] = {0b011, 0b101, 0b110, 0b111};
  for (int code = 1; code < 81; ++code) {
    std::vector<Rational> worths(8);
    int rest = code;
    for (const Coalition s : nontrivial) {
      worths[s] = Rational(rest % 3);
      rest /= 3;
    }
    games.emplace_back(3, std::move(worths));
  }
  return games;
}

std::string describe(const TuGame& v) {
  std::ostringstream os;
  os << "n=" << v.players() << " worths";
  for (Coalition s = 1; s <= v.grand(); ++s) {
    if (!v.worth(s).is_zero()) os << ' ' << coalition_label(s) << '=' << v.worth(s);
  }
  return os.str();
}

bool zero_profit_equilibrium(const InducedAuction& induced, const PriceVector& p,
                             const Allocation& X) {
  if (!verify_equilibrium(induced.auction.market(), p, X, DeviationMode::kConstrained)
           .holds) {
    return false;
  }
  for (std::size_t k = 0; k < X.size(); ++k) {
    if (!profit(induced.auction.market(), static_cast<int>(k), X[k], p).is_zero()) {
      return false;
    }
  }
  return true;
}

template <typename Body>
void guarded(SuiteResult& r, const std::string& label, Body&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    r.record(false, label + ": threw " + e.what());
  }
}

}  // namespace

void SuiteResult::record(bool pass, const std::string& what) {
  ++trials;
  if (pass) {
    ++passed;
  } else if (failures.size() < kMaxReportedFailures) {
    failures.push_back(what);
  }
}

SuiteResult run_core_agreement(const SelftestConfig& config) {
  SuiteResult r{"core-agreement", config.seed, 0, 0, {}, {}};
  int nonempty = 0;
  for (const TuGame& v : core_suite_games(config.seed)) {
    guarded(r, describe(v), [&] {
      const CoreVerdict pipeline = decide_matching_core(v, config.cell_budget);
      const CoreVerdict oracle = brute_force_matching_core(v);
      bool pass = pipeline.nonempty == oracle.nonempty;
      if (pipeline.nonempty) {
        ++nonempty;
        pass = pass && is_in_matching_core(v, *pipeline.outcome).in_core;
      } else {
        const auto& existence = *pipeline.existence;
        pass = pass && existence.refutation.has_value() != existence.lp_condition;
      }
      r.record(pass, describe(v) + (pipeline.nonempty ? ": pipeline nonempty, oracle empty"
                                                      : ": pipeline empty, oracle nonempty"));
    });
  }
  r.notes.push_back(std::to_string(nonempty) + " nonempty cores");
  return r;
}

SuiteResult run_round_trip(const SelftestConfig& config) {
  SuiteResult r{"round-trip", config.seed, 0, 0, {}, {}};
  for (const TuGame& v : core_suite_games(config.seed)) {
    guarded(r, describe(v), [&] {
      const CoreVerdict oracle = brute_force_matching_core(v);
      if (!oracle.nonempty) return;
      const InducedAuction induced = induce_bundle_auction(v);
      const CoreVerdict pipeline = decide_matching_core(v, config.cell_budget);
      bool pass = pipeline.nonempty;
      if (pass) {
        const auto& eq = *pipeline.equilibrium;
        pass = zero_profit_equilibrium(induced, eq.prices, eq.allocation);
        for (const auto& m : eq.surplus) pass = pass && m.is_zero();
        const ValueFunction vf = induced_value_function(induced, config.cell_budget);
        pass = pass && is_surplus_price_optimal(vf, eq, pipeline.existence->lp_optimum);
      }
      for (const auto* o : {&*oracle.outcome, pass ? &*pipeline.outcome : nullptr}) {
        if (o == nullptr) continue;
        const auto [p, X] = outcome_to_equilibrium(v, induced, *o);
        pass = pass && zero_profit_equilibrium(induced, p, X) && is_canonical(induced, X);
        const MatchingOutcome back = extract_outcome(v, induced, p, X);
        pass = pass && is_in_matching_core(v, back).in_core && back.payoff == o->payoff;
      }
      r.record(pass, describe(v));
    });
  }
  return r;
}

SuiteResult run_constrained_agreement(const SelftestConfig& config) {
  SuiteResult r{"constrained-agreement", config.seed, 0, 0, {}, {}};
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  int instances = 0;
  int equilibria = 0;
  while (instances < 300) {
    const MultiUnitAuction a =
        random_multiunit_auction(rng, uniform(rng, 1, 3), uniform(rng, 1, 3), 2, 4);
    ++instances;
    const std::string label = "instance " + std::to_string(instances);
    std::vector<std::pair<PriceVector, Allocation>> candidates;
    guarded(r, label, [&] {
      const ValueFunction vf = build_value_function(a, config.cell_budget);
      const ExistenceVerdict verdict = decide_existence(a, vf);
      if (verdict.exists) {
        ++equilibria;
        const auto& cert = *verdict.witness;
        candidates.emplace_back(cert.prices, cert.allocation);
        PriceVector bumped = cert.prices;
        const int j = uniform(rng, 0, a.num_items() - 1);
        bumped(j) += Rational(uniform(rng, -2, 2), 2);
        if (bumped(j).sign() < 0) bumped(j) = Rational(0);
        candidates.emplace_back(bumped, cert.allocation);
        candidates.emplace_back(cert.prices, random_allocation(rng, a));
        r.record(is_surplus_price_optimal(vf, cert, verdict.lp_optimum),
                 label + ": witness is not surplus-price optimal");
      }
      candidates.emplace_back(random_prices(rng, a.num_items(), 4), random_allocation(rng, a));
    });
    for (const auto& [p, X] : candidates) {
      guarded(r, label, [&] {
        const bool constrained =
            verify_equilibrium(a, p, X, DeviationMode::kConstrained).holds;
        const bool unconstrained =
            verify_equilibrium(a, p, X, DeviationMode::kUnconstrained).holds;
        r.record(constrained == unconstrained, label + ": verdicts disagree");
      });
    }
  }
  r.notes.push_back(std::to_string(equilibria) + "/300 instances have an equilibrium");
  return r;
}

SuiteResult run_unit_expansion(const SelftestConfig& config) {
  SuiteResult r{"unit-expansion", config.seed, 0, 0, {}, {}};
  Rng rng(config.seed ^ 0x51ed270b27a2f1c3ULL);
  int equilibria = 0;
  int single_holder_spread = 0;
  for (int t = 0; t < 200; ++t) {
    const MultiUnitAuction a =
        random_multiunit_auction(rng, uniform(rng, 1, 2), uniform(rng, 1, 3), 2, 4);
    const std::string label = "instance " + std::to_string(t + 1);
    guarded(r, label, [&] {
      const ExpandedAuction ex = expand(a, config.cell_budget);
      const ValueFunction vf = build_value_function(a, config.cell_budget);
      const ExistenceVerdict direct = decide_existence(a, vf);
      const ValueFunction evf = build_value_function(ex.auction.market(), config.cell_budget);
      const ExistenceVerdict expanded = decide_existence(ex.auction.market(), evf);
      bool pass = direct.exists == expanded.exists;
      if (direct.exists) {
        ++equilibria;
        const auto& cert = *direct.witness;
        const auto [q, Y] = push_equilibrium(ex.expansion, a, cert.prices, cert.allocation);
        pass = pass && verify_equilibrium(ex.auction.market(), q, Y,
                                          DeviationMode::kConstrained).holds;
        const auto [p, X] = pull_equilibrium(ex.expansion, ex.auction, q, Y);
        pass = pass && p == cert.prices &&
               verify_equilibrium(a, p, X, DeviationMode::kConstrained).holds;
        pass = pass && is_surplus_price_optimal(vf, cert, direct.lp_optimum);
      }
      if (expanded.exists) {
        const auto& cert = *expanded.witness;
        for (const auto& group : ex.expansion.groups) {
          for (const int u : group) {
            if (!(cert.prices(u) == cert.prices(group.front()))) {
              ++single_holder_spread;
              break;
            }
          }
        }
        const auto [p, X] =
            pull_equilibrium(ex.expansion, ex.auction, cert.prices, cert.allocation);
        pass = pass && verify_equilibrium(a, p, X, DeviationMode::kConstrained).holds;
        // Pushing back yields equal prices within every group.
        const auto [q, Y] = push_equilibrium(ex.expansion, a, p, X);
        pass = pass && verify_equilibrium(ex.auction.market(), q, Y,
                                          DeviationMode::kConstrained).holds;
        pass = pass && is_surplus_price_optimal(evf, cert, expanded.lp_optimum);
      }
      r.record(pass, label);
    });
  }
  r.notes.push_back(std::to_string(equilibria) + "/200 instances have an equilibrium");
  r.notes.push_back(std::to_string(single_holder_spread) +
                    " expanded witnesses price one agent's units unequally");
  return r;
}

SuiteResult run_assignment(const SelftestConfig& config) {
  SuiteResult r{"assignment", config.seed, 0, 0, {}, {}};
  Rng rng(config.seed ^ 0x2545f4914f6cdd1dULL);
  int flat = 0;
  for (int t = 0; t < 100; ++t) {
    const AssignmentGame g = random_assignment_game(rng, uniform(rng, 2, 4), 9);
    const std::string label = "game " + std::to_string(t + 1);
    guarded(r, label, [&] {
      const AssignmentEquilibrium eq = existence_pathway(g, config.cell_budget);
      const BundleAuction auction = to_bundle_auction(g);
      const ValueFunction vf = build_value_function(auction.market(), config.cell_budget);
      const auto& cert = eq.certificate;
      bool pass = verify_equilibrium(auction.market(), cert.prices, cert.allocation,
                                     DeviationMode::kUnconstrained)
                      .holds;
      pass = pass && assignment_lp(g).value == vf.at(auction.market().endowment());
      const ExistenceVerdict verdict = decide_existence(auction.market(), vf);
      pass = pass && verdict.exists &&
             is_surplus_price_optimal(vf, cert, verdict.lp_optimum);
      if (eq.branch == ExistenceBranch::kFlatPrice) ++flat;
      r.record(pass, label);
    });
  }
  r.notes.push_back(std::to_string(flat) + "/100 took the flat-price branch");
  return r;
}

SuiteResult run_lp_duality(const SelftestConfig& config) {
  SuiteResult r{"lp-duality", config.seed, 0, 0, {}, {}};
  Rng rng(config.seed ^ 0x94d049bb133111ebULL);
  for (int t = 0; t < 1000; ++t) {
    const RationalLp lp = random_feasible_lp(rng, 20, 10);
    guarded(r, "lp " + std::to_string(t + 1), [&] {
      const auto sol = lp_solve(lp);
      r.record(sol.status == LpStatus::kOptimal && verify_optimality(lp, sol),
               "lp " + std::to_string(t + 1) + ": " + to_string(sol.status));
    });
  }
  for (const LpFixture& f : degenerate_lp_fixtures()) {
    guarded(r, f.name, [&] {
      const auto sol = lp_solve(f.lp);
      bool pass = sol.status == f.status;
      if (pass && f.status == LpStatus::kOptimal) {
        pass = sol.objective == f.optimum && verify_optimality(f.lp, sol);
      }
      if (pass && f.status == LpStatus::kInfeasible) pass = verify_farkas(f.lp, sol.farkas);
      r.record(pass, std::string(f.name) + ": " + to_string(sol.status));
    });
  }
  int infeasible = 0;
  for (int t = 0; t < 500; ++t) {
    RationalLp lp = random_system(rng, 6, 8);
    for (Eigen::Index j = 0; j < lp.num_variables(); ++j) {
      lp.objective(j) = Rational(uniform(rng, -2, 2));
    }
    guarded(r, "system " + std::to_string(t + 1), [&] {
      const auto result = farkas_certificate(lp);
      const auto sol = lp_solve(lp);
      bool pass;
      if (const auto* point = std::get_if<FeasiblePoint<Rational>>(&result)) {
        pass = is_primal_feasible(lp, point->values) && sol.status != LpStatus::kInfeasible;
      } else {
        ++infeasible;
        pass = verify_farkas(lp, std::get<FarkasCertificate<Rational>>(result).multipliers) &&
               sol.status == LpStatus::kInfeasible;
      }
      r.record(pass, "system " + std::to_string(t + 1));
    });
  }
  r.notes.push_back(std::to_string(infeasible) + "/500 systems infeasible");
  return r;
}

SuiteResult run_dual_consistency(const SelftestConfig& config) {
  SuiteResult r{"dual-consistency", config.seed, 0, 0, {}, {}};
  int checked = 0;
  for (const TuGame& v : core_suite_games(config.seed)) {
    if (v.players() > 4) continue;
    guarded(r, describe(v), [&] {
      const InducedAuction induced = induce_bundle_auction(v);
      const ValueFunction vf = induced_value_function(induced, config.cell_budget);
      const ExistenceVerdict verdict = decide_existence(induced.auction.market(), vf);
      const bool solvable = std::holds_alternative<FeasiblePoint<Rational>>(
          farkas_certificate(price_system(vf)));
      bool pass = solvable == verdict.lp_condition;
      if (verdict.exists) {
        pass = pass && is_surplus_price_optimal(vf, *verdict.witness, verdict.lp_optimum);
        const CoreVerdict core = decide_matching_core(v, config.cell_budget);
        pass = pass && is_surplus_price_optimal(vf, *core.equilibrium, verdict.lp_optimum);
        if (checked < 25) {
          // Full solve of the minimization on a sample.
          pass = pass && is_surplus_price_optimal(vf, *core.equilibrium);
        }
        ++checked;
      }
      r.record(pass, describe(v));
    });
  }
  r.notes.push_back(std::to_string(checked) + " certificates checked");
  return r;
}

const std::vector<SuiteEntry>& selftest_suites() {
  static const std::vector<SuiteEntry> suites = {
      {"core-agreement", run_core_agreement},
      {"round-trip", run_round_trip},
      {"constrained-agreement", run_constrained_agreement},
      {"unit-expansion", run_unit_expansion},
      {"assignment", run_assignment},
      {"lp-duality", run_lp_duality},
      {"dual-consistency", run_dual_consistency},
  };
  return suites;
}

}  // namespace matchcore
