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

#ifndef MATCHCORE_TU_GAME_HPP_
#define MATCHCORE_TU_GAME_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matchcore/auction.hpp"
#include "matchcore/equilibrium.hpp"
#include "matchcore/value_function.hpp"

namespace matchcore {

// Bit j set iff player j+1 belongs to the coalition. Coalition S_i of the
// induced auction is the mask i, so buyer k (0-based) holds mask k + 1.
using Coalition = std::uint32_t;

inline constexpr int kMaxInducedPlayers = 10;
inline constexpr int kMaxBruteForcePlayers = 8;

int coalition_size(Coalition s);
std::vector<int> coalition_members(Coalition s);  // 0-based
Coalition coalition_from_members(std::span<const int> members);  // 0-based
// "{1,2,3}"
std::string coalition_label(Coalition s);

// Nonnegative TU game: worths on all nonempty coalitions, zero on singletons,
// positive somewhere.
class TuGame {
 public:
  // `worths` is indexed by mask and has 2^n entries; entry 0 is ignored.
  // Requires n >= 3 unless `allow_two_players`.
  TuGame(int players, std::vector<Rational> worths, bool allow_two_players = false);

  // Coalitions not listed are worth 0.
  static TuGame from_list(int players,
                          const std::vector<std::pair<Coalition, Rational>>& worths,
                          bool allow_two_players = false);

  int players() const { return players_; }
  Coalition grand() const { return (Coalition{1} << players_) - 1; }
  const Rational& worth(Coalition s) const { return worths_[s]; }
  const std::vector<Rational>& worths() const { return worths_; }
  bool allows_two_players() const { return allow_two_players_; }

 private:
  int players_;
  std::vector<Rational> worths_;
  bool allow_two_players_;
};

struct MatchingOutcome {
  std::vector<Coalition> partition;
  RationalVector payoff;
};

// Throws std::invalid_argument unless the partition covers N with disjoint
// nonempty blocks and the payoff is a nonnegative n-vector.
void validate_outcome(const TuGame& v, const MatchingOutcome& o);

struct CoreCheck {
  bool in_core = false;
  // A block whose payoffs do not sum to its worth, else the coalition with the
  // largest shortfall v(S) - x(S) (smallest mask on ties).
  std::optional<Coalition> violated;
};

CoreCheck is_in_matching_core(const TuGame& v, const MatchingOutcome& o);

struct InducedAuction {
  BundleAuction auction;
  std::vector<Coalition> buyers;
  std::vector<Bundle> keys;  // e^{S_k}

  int buyer_of(Coalition s) const { return static_cast<int>(s) - 1; }
};

// One item per player, one buyer per nonempty coalition; buyer S values a
// bundle at v(S) when S is contained in its support and 0 otherwise.
InducedAuction induce_bundle_auction(const TuGame& v,
                                     int max_players = kMaxInducedPlayers);

// Coalition-packing DP for induced auctions.
ValueFunction induced_value_function(const InducedAuction& induced,
                                     std::size_t cell_budget = kDefaultCellBudget);

bool is_canonical(const InducedAuction& induced, const Allocation& X);
int count_noncanonical(const InducedAuction& induced, const Allocation& X);

// One rewrite on the first buyer holding neither 0 nor e^{S_k}; nullopt when X
// is already canonical. Items the buyer sheds go to the singleton buyers
// owning them; those items are necessarily priced at 0.
std::optional<Allocation> canonicalize_step(const InducedAuction& induced,
                                            const PriceVector& p,
                                            const Allocation& X);

// Repeats canonicalize_step until every buyer holds 0 or e^{S_k}. Throws
// std::invalid_argument if (p, X) is not an equilibrium.
Allocation canonicalize_equilibrium(const InducedAuction& induced,
                                    const PriceVector& p, const Allocation& X);

// Raises the prices of every active coalition's members by an equal share of
// its surplus, making every buyer's profit exactly zero.
PriceVector zero_profit_reprice(const TuGame& v, const InducedAuction& induced,
                                const PriceVector& p, const Allocation& X);

// Active coalitions become the partition, prices become payoffs.
MatchingOutcome extract_outcome(const TuGame& v, const InducedAuction& induced,
                                const PriceVector& q, const Allocation& X);

// Payoffs as prices, e^{S} to every buyer whose coalition is a block.
std::pair<PriceVector, Allocation> outcome_to_equilibrium(
    const TuGame& v, const InducedAuction& induced, const MatchingOutcome& o);

struct CoreVerdict {
  bool nonempty = false;
  std::optional<MatchingOutcome> outcome;
  // Zero-profit equilibrium of the induced auction matching `outcome`.
  std::optional<EquilibriumCertificate> equilibrium;
  // Mixture LP evidence (pipeline only).
  std::optional<ExistenceVerdict> existence;
};

CoreVerdict decide_matching_core(const TuGame& v,
                                 std::size_t cell_budget = kDefaultCellBudget);

// Calls `visit` with each restricted growth string of length n in
// lexicographic order; stops early when `visit` returns false.
template <typename Visitor>
void for_each_restricted_growth_string(int n, Visitor&& visit) {
  if (n <= 0) return;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  for (;;) {
    if (!visit(static_cast<const std::vector<int>&>(a))) return;
    int i = n - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] >
                        prefix_max[static_cast<std::size_t>(i - 1)]) {
      --i;
    }
    if (i == 0) return;
    ++a[static_cast<std::size_t>(i)];
    prefix_max[static_cast<std::size_t>(i)] =
        std::max(prefix_max[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
    for (int k = i + 1; k < n; ++k) {
      a[static_cast<std::size_t>(k)] = 0;
      prefix_max[static_cast<std::size_t>(k)] = prefix_max[static_cast<std::size_t>(i)];
    }
  }
}

std::vector<Coalition> partition_from_growth_string(const std::vector<int>& rgs);

// Enumerates every partition and solves the exact payoff system for each;
// returns the first feasible one.
CoreVerdict brute_force_matching_core(const TuGame& v,
                                      int max_players = kMaxBruteForcePlayers);

// Same players, prohibited coalitions worth 0.
TuGame prohibit(const TuGame& v, std::span<const Coalition> prohibited);

// Splits every prohibited block of `o` into singletons. `o` must be in the
// core of prohibit(v, prohibited); so is the result.
MatchingOutcome normalize_prohibited(const TuGame& v,
                                     std::span<const Coalition> prohibited,
                                     const MatchingOutcome& o);

}  // namespace matchcore

#endif  // MATCHCORE_TU_GAME_HPP_
