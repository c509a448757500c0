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

#include "matchcore/tu_game.hpp"

#include <bit>
#include <stdexcept>

#include "matchcore/linear_program.hpp"

namespace matchcore {
namespace {

Bundle coalition_to_bundle(Coalition s, int n) {
  Bundle b = Bundle::Zero(n);
  for (int j = 0; j < n; ++j) {
    if (s & (Coalition{1} << j)) b(j) = 1;
  }
  return b;
}

Coalition bundle_support(const Bundle& x) {
  Coalition s = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) > 0) s |= Coalition{1} << j;
  }
  return s;
}

Rational payoff_sum(const RationalVector& x, Coalition s) {
  Rational total;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (s & (Coalition{1} << j)) total += x(j);
  }
  return total;
}

void require_equilibrium(const InducedAuction& induced, const PriceVector& p,
                         const Allocation& X, const char* what) {
  if (!verify_equilibrium(induced.auction.market(), p, X,
                          DeviationMode::kConstrained)
           .holds) {
    throw std::invalid_argument(std::string(what) +
                                ": input is not a market equilibrium");
  }
}

}  // namespace

int coalition_size(Coalition s) { return std::popcount(s); }

std::vector<int> coalition_members(Coalition s) {
  std::vector<int> out;
  for (int j = 0; s >> j; ++j) {
    if (s & (Coalition{1} << j)) out.push_back(j);
  }
  return out;
}

Coalition coalition_from_members(std::span<const int> members) {
  Coalition s = 0;
  for (const int j : members) {
    if (j < 0 || j >= 31) throw std::out_of_range("player index out of range");
    s |= Coalition{1} << j;
  }
  return s;
}

std::string coalition_label(Coalition s) {
  std::string out = "{";
  bool first = true;
  for (const int j : coalition_members(s)) {
    if (!first) out += ',';
    out += std::to_string(j + 1);
    first = false;
  }
  return out + "}";
}

TuGame::TuGame(int players, std::vector<Rational> worths, bool allow_two_players)
    : players_(players), worths_(std::move(worths)), allow_two_players_(allow_two_players) {
  if (players < (allow_two_players ? 2 : 3)) {
    throw std::invalid_argument("a TU game needs at least " +
                                std::string(allow_two_players ? "2" : "3") +
                                " players");
  }
  if (players > 20) throw std::invalid_argument("more than 20 players");
  if (worths_.size() != (std::size_t{1} << players)) {
    throw std::invalid_argument("worth table must have 2^n entries");
  }
  worths_[0] = Rational(0);
  bool positive = false;
  for (Coalition s = 1; s < worths_.size(); ++s) {
    if (worths_[s].sign() < 0) {
      throw std::invalid_argument("negative worth for " + coalition_label(s));
    }
    if (coalition_size(s) == 1 && !worths_[s].is_zero()) {
      throw std::invalid_argument("singleton " + coalition_label(s) +
                                  " must be worth 0");
    }
    positive = positive || worths_[s].sign() > 0;
  }
  if (!positive) {
    throw std::invalid_argument("some coalition must have positive worth");
  }
}

TuGame TuGame::from_list(int players,
                         const std::vector<std::pair<Coalition, Rational>>& worths,
                         bool allow_two_players) {
  if (players < 1 || players > 20) {
    throw std::invalid_argument("player count out of range");
  }
  std::vector<Rational> table(std::size_t{1} << players);
  std::vector<bool> seen(table.size(), false);
  for (const auto& [s, value] : worths) {
    if (s == 0 || s >= table.size()) {
      throw std::invalid_argument("coalition outside the player set");
    }
    if (seen[s]) {
      throw std::invalid_argument("duplicate worth for " + coalition_label(s));
    }
    seen[s] = true;
    table[s] = value;
  }
  return TuGame(players, std::move(table), allow_two_players);
}

void validate_outcome(const TuGame& v, const MatchingOutcome& o) {
  if (o.payoff.size() != v.players()) {
    throw std::invalid_argument("payoff vector must have one entry per player");
  }
  for (Eigen::Index j = 0; j < o.payoff.size(); ++j) {
    if (o.payoff(j).sign() < 0) {
      throw std::invalid_argument("payoff of player " + std::to_string(j + 1) +
                                  " is negative");
    }
  }
  Coalition covered = 0;
  for (const Coalition s : o.partition) {
    if (s == 0 || (s & ~v.grand()) != 0) {
      throw std::invalid_argument("partition block outside the player set");
    }
    if (covered & s) throw std::invalid_argument("partition blocks overlap");
    covered |= s;
  }
  if (covered != v.grand()) {
    throw std::invalid_argument("partition does not cover every player");
  }
}

CoreCheck is_in_matching_core(const TuGame& v, const MatchingOutcome& o) {
  validate_outcome(v, o);
  CoreCheck check;
  for (const Coalition s : o.partition) {
    if (!(payoff_sum(o.payoff, s) == v.worth(s))) {
      check.violated = s;
      return check;
    }
  }
  Rational worst;
  for (Coalition s = 1; s <= v.grand(); ++s) {
    Rational shortfall = v.worth(s) - payoff_sum(o.payoff, s);
    if (shortfall.sign() > 0 && (!check.violated || shortfall > worst)) {
      check.violated = s;
      worst = std::move(shortfall);
    }
  }
  check.in_core = !check.violated.has_value();
  return check;
}

InducedAuction induce_bundle_auction(const TuGame& v, int max_players) {
  const int n = v.players();
  if (n > max_players) {
    throw std::length_error("induced auction for " + std::to_string(n) +
                            " players exceeds the budget of " +
                            std::to_string(max_players));
  }
  const Box box(unit_bundle(n));
  std::vector<Coalition> supports(box.size());
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    supports[idx] = bundle_support(box.point(idx));
  }
  std::vector<ValuationTable> tables;
  std::vector<Coalition> buyers;
  std::vector<Bundle> keys;
  for (Coalition s = 1; s <= v.grand(); ++s) {
    std::vector<Rational> values(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
      if ((s & supports[idx]) == s) values[idx] = v.worth(s);
    }
    tables.emplace_back(coalition_label(s), box, std::move(values));
    buyers.push_back(s);
    keys.push_back(coalition_to_bundle(s, n));
  }
  return InducedAuction{BundleAuction(MultiUnitAuction(unit_bundle(n), std::move(tables))),
                        std::move(buyers), std::move(keys)};
}

ValueFunction induced_value_function(const InducedAuction& induced,
                                     std::size_t cell_budget) {
  return build_single_minded_value_function(induced.auction.market(), induced.keys,
                                            cell_budget);
}

bool is_canonical(const InducedAuction& induced, const Allocation& X) {
  return count_noncanonical(induced, X) == 0;
}

int count_noncanonical(const InducedAuction& induced, const Allocation& X) {
  int count = 0;
  for (std::size_t k = 0; k < X.size(); ++k) {
    if (!X[k].isZero() && X[k] != induced.keys[k]) ++count;
  }
  return count;
}

std::optional<Allocation> canonicalize_step(const InducedAuction& induced,
                                            const PriceVector& p,
                                            const Allocation& X) {
  const int n = induced.auction.num_items();
  for (std::size_t k = 0; k < X.size(); ++k) {
    if (X[k].isZero() || X[k] == induced.keys[k]) continue;
    if ((X[k].array() > 1).any()) {
      throw std::invalid_argument("induced-auction bundles must be 0/1 at an equilibrium");
    }
    const Coalition s = induced.buyers[k];
    const Coalition q = bundle_support(X[k]);
    Allocation next = X;
    Coalition released = 0;
    if ((s & q) == s) {
      // S strictly inside Q: keep e^S, shed Q \ S.
      released = q & ~s;
      next[k] = induced.keys[k];
    } else {
      // Support misses part of S: the bundle is worthless, drop it all.
      released = q;
      next[k] = Bundle::Zero(n);
    }
    for (const int j : coalition_members(released)) {
      if (!p(j).is_zero()) {
        throw std::logic_error("item " + std::to_string(j + 1) +
                               " shed at canonicalization carries a positive price");
      }
      auto& holder = next[static_cast<std::size_t>(induced.buyer_of(Coalition{1} << j))];
      holder(j) += 1;
      if (holder(j) > 1) {
        throw std::logic_error("singleton buyer would hold two units of item " +
                               std::to_string(j + 1));
      }
    }
    return next;
  }
  return std::nullopt;
}

Allocation canonicalize_equilibrium(const InducedAuction& induced,
                                    const PriceVector& p, const Allocation& X) {
  require_equilibrium(induced, p, X, "canonicalize_equilibrium");
  Allocation current = X;
  while (auto next = canonicalize_step(induced, p, current)) {
    current = std::move(*next);
  }
  return current;
}

PriceVector zero_profit_reprice(const TuGame& v, const InducedAuction& induced,
                                const PriceVector& p, const Allocation& X) {
  if (!is_canonical(induced, X)) {
    throw std::invalid_argument("zero_profit_reprice: allocation is not canonical");
  }
  require_equilibrium(induced, p, X, "zero_profit_reprice");
  PriceVector q = p;
  for (std::size_t k = 0; k < X.size(); ++k) {
    if (X[k].isZero()) continue;
    const Coalition s = induced.buyers[k];
    const Rational share = (v.worth(s) - cost(p, X[k])) / Rational(coalition_size(s));
    for (const int j : coalition_members(s)) q(j) += share;
  }
  return q;
}

MatchingOutcome extract_outcome(const TuGame& v, const InducedAuction& induced,
                                const PriceVector& q, const Allocation& X) {
  if (!is_canonical(induced, X)) {
    throw std::invalid_argument("extract_outcome: allocation is not canonical");
  }
  require_equilibrium(induced, q, X, "extract_outcome");
  MatchingOutcome o;
  for (std::size_t k = 0; k < X.size(); ++k) {
    if (!profit(induced.auction.market(), static_cast<int>(k), X[k], q).is_zero()) {
      throw std::invalid_argument("extract_outcome: equilibrium is not zero-profit");
    }
    if (!X[k].isZero()) o.partition.push_back(induced.buyers[k]);
  }
  o.payoff = q;
  if (!is_in_matching_core(v, o).in_core) {
    throw std::logic_error("extracted outcome is not in the matching core");
  }
  return o;
}

std::pair<PriceVector, Allocation> outcome_to_equilibrium(
    const TuGame& v, const InducedAuction& induced, const MatchingOutcome& o) {
  const CoreCheck check = is_in_matching_core(v, o);
  if (!check.in_core) {
    throw std::invalid_argument("outcome is not in the matching core; " +
                                coalition_label(*check.violated) + " is violated");
  }
  if (!is_price_vector(o.payoff)) {
    throw std::invalid_argument("a zero payoff vector is not a price vector");
  }
  const int n = v.players();
  Allocation X(induced.buyers.size(), Bundle::Zero(n));
  for (const Coalition s : o.partition) {
    X[static_cast<std::size_t>(induced.buyer_of(s))] = coalition_to_bundle(s, n);
  }
  return {o.payoff, std::move(X)};
}

CoreVerdict decide_matching_core(const TuGame& v, std::size_t cell_budget) {
  const InducedAuction induced = induce_bundle_auction(v);
  const ValueFunction vf = induced_value_function(induced, cell_budget);
  ExistenceVerdict existence = decide_existence(induced.auction.market(), vf);

  CoreVerdict verdict;
  if (existence.exists) {
    const EquilibriumCertificate& witness = *existence.witness;
    const Allocation X =
        canonicalize_equilibrium(induced, witness.prices, witness.allocation);
    const PriceVector q = zero_profit_reprice(v, induced, witness.prices, X);
    MatchingOutcome outcome = extract_outcome(v, induced, q, X);

    EquilibriumCertificate cert;
    cert.prices = q;
    cert.allocation = X;
    cert.surplus.assign(X.size(), Rational(0));
    cert.feasible = true;
    cert.profit_maximal = true;
    cert.zero_profit = true;

    verdict.nonempty = true;
    verdict.outcome = std::move(outcome);
    verdict.equilibrium = std::move(cert);
  }
  verdict.existence = std::move(existence);
  return verdict;
}

std::vector<Coalition> partition_from_growth_string(const std::vector<int>& rgs) {
  std::vector<Coalition> blocks;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    const auto b = static_cast<std::size_t>(rgs[i]);
    if (b >= blocks.size()) blocks.resize(b + 1, 0);
    blocks[b] |= Coalition{1} << i;
  }
  return blocks;
}

CoreVerdict brute_force_matching_core(const TuGame& v, int max_players) {
  const int n = v.players();
  if (n > max_players) {
    throw std::length_error("brute-force core search for " + std::to_string(n) +
                            " players exceeds the budget of " +
                            std::to_string(max_players));
  }
  std::vector<Coalition> positive;
  for (Coalition s = 1; s <= v.grand(); ++s) {
    if (v.worth(s).sign() > 0) positive.push_back(s);
  }
  auto row_of = [n](Coalition s) {
    RationalVector row = RationalVector::Zero(n);
    for (const int j : coalition_members(s)) row(j) = Rational(1);
    return row;
  };

  CoreVerdict verdict;
  for_each_restricted_growth_string(n, [&](const std::vector<int>& rgs) {
    const std::vector<Coalition> blocks = partition_from_growth_string(rgs);
    RationalLp system(n, Sense::kMaximize);
    Coalition block_mask_seen = 0;
    std::vector<bool> is_block(std::size_t{1} << n, false);
    for (const Coalition s : blocks) {
      is_block[s] = true;
      block_mask_seen |= s;
      system.add_constraint(row_of(s), Relation::kEqual, v.worth(s));
    }
    // x >= 0 already covers every zero-worth coalition.
    for (const Coalition s : positive) {
      if (!is_block[s]) {
        system.add_constraint(row_of(s), Relation::kGreaterEqual, v.worth(s));
      }
    }
    auto result = farkas_certificate(system);
    if (const auto* point = std::get_if<FeasiblePoint<Rational>>(&result)) {
      verdict.nonempty = true;
      verdict.outcome = MatchingOutcome{blocks, point->values};
      return false;
    }
    return true;
  });
  if (verdict.outcome && !is_in_matching_core(v, *verdict.outcome).in_core) {
    throw std::logic_error("brute-force payoff failed the core check");
  }
  return verdict;
}

TuGame prohibit(const TuGame& v, std::span<const Coalition> prohibited) {
  std::vector<Rational> worths = v.worths();
  for (const Coalition s : prohibited) {
    if (s == 0 || (s & ~v.grand()) != 0) {
      throw std::invalid_argument("prohibited coalition outside the player set");
    }
    worths[s] = Rational(0);
  }
  return TuGame(v.players(), std::move(worths), v.allows_two_players());
}

MatchingOutcome normalize_prohibited(const TuGame& v,
                                     std::span<const Coalition> prohibited,
                                     const MatchingOutcome& o) {
  const TuGame normalized = prohibit(v, prohibited);
  if (!is_in_matching_core(normalized, o).in_core) {
    throw std::invalid_argument(
        "normalize_prohibited: outcome is not in the core of the normalized game");
  }
  std::vector<bool> banned(std::size_t{1} << v.players(), false);
  for (const Coalition s : prohibited) banned[s] = true;
  MatchingOutcome out;
  out.payoff = o.payoff;
  for (const Coalition s : o.partition) {
    if (banned[s]) {
      for (const int j : coalition_members(s)) out.partition.push_back(Coalition{1} << j);
    } else {
      out.partition.push_back(s);
    }
  }
  if (!is_in_matching_core(normalized, out).in_core) {
    throw std::logic_error("normalized outcome left the core");
  }
  return out;
}

}  // namespace matchcore
