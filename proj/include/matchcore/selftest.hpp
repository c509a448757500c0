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

#ifndef MATCHCORE_SELFTEST_HPP_
#define MATCHCORE_SELFTEST_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "matchcore/value_function.hpp"

namespace matchcore {

struct SelftestConfig {
  std::uint64_t seed = 20260115;
  std::size_t cell_budget = kDefaultCellBudget;
};

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  int trials = 0;
  int passed = 0;
  std::vector<std::string> failures;  // capped
  std::vector<std::string> notes;

  bool ok() const { return trials > 0 && passed == trials; }
  void record(bool pass, const std::string& what);
};

// Pipeline core decision against brute-force partition search: 500 random
// games with 3 to 5 players and worths 0..20, then every 3-player game with
// worths in {0, 1, 2}.
SuiteResult run_core_agreement(const SelftestConfig& config);
// Outcome -> equilibrium -> outcome on every nonempty game of the above.
SuiteResult run_round_trip(const SelftestConfig& config);
// Constrained and unconstrained verification agree on 300 random multi-unit
// auctions, on solver and perturbed candidates.
SuiteResult run_constrained_agreement(const SelftestConfig& config);
// Push/pull through unit expansion on 200 small multi-unit auctions.
SuiteResult run_unit_expansion(const SelftestConfig& config);
// 100 random assignment games.
SuiteResult run_assignment(const SelftestConfig& config);
// 1000 random bounded LPs, the degenerate fixtures, 500 Farkas systems.
SuiteResult run_lp_duality(const SelftestConfig& config);
// Surplus-price optimality of certificates, and solvability of the price
// system against the mixture LP condition on induced auctions with n <= 4.
SuiteResult run_dual_consistency(const SelftestConfig& config);

struct SuiteEntry {
  const char* name;
  SuiteResult (*run)(const SelftestConfig&);
};

const std::vector<SuiteEntry>& selftest_suites();

}  // namespace matchcore

#endif  // MATCHCORE_SELFTEST_HPP_
