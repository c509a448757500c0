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

#ifndef MATCHCORE_IO_HPP_
#define MATCHCORE_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matchcore/assignment.hpp"
#include "matchcore/auction.hpp"
#include "matchcore/equilibrium.hpp"
#include "matchcore/multiunit.hpp"
#include "matchcore/tu_game.hpp"

namespace matchcore {

using Json = nlohmann::json;

// Malformed or inconsistent instance and certificate files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts "a/b", decimal strings and JSON integers. JSON floats are rejected
// because they have already been rounded.
Rational rational_from_json(const Json& j);
Json to_json(const Rational& r);
Json to_json(const RationalVector& v);
Json to_json(const Bundle& x);
Json to_json(const Allocation& X);

enum class InstanceKind { kBundleAuction, kMultiUnitAuction, kTuGame, kAssignmentGame };

const char* to_string(InstanceKind kind);

struct TuInstance {
  TuGame game;  // as given
  std::vector<Coalition> prohibited;
  TuGame normalized() const { return prohibit(game, prohibited); }
};

struct Instance {
  InstanceKind kind;
  std::optional<MultiUnitAuction> auction;
  std::optional<TuInstance> tu;
  std::optional<AssignmentGame> assignment;
};

struct ReadOptions {
  bool allow_two_players = false;
};

Instance instance_from_json(const Json& j, const ReadOptions& options = {});

// Full-table bundle_auction (or multiunit_auction) document.
Json auction_to_json(const MultiUnitAuction& a);
Json groups_to_json(const UnitExpansion& exp);

Json verdict_to_json(const ExistenceVerdict& v);
Json certificate_to_json(const EquilibriumCertificate& c);
Json outcome_to_json(const MatchingOutcome& o);
Json core_verdict_to_json(const CoreVerdict& v);
Json assignment_to_json(const AssignmentEquilibrium& eq);

// {"prices":[...],"allocation":[[...],...]}, possibly nested under
// "certificate" or "equilibrium".
std::pair<PriceVector, Allocation> candidate_from_json(const Json& j,
                                                       const MultiUnitAuction& a);
// {"partition":[[1,2],[3]],"payoff":[...]}, possibly nested under "outcome".
MatchingOutcome outcome_from_json(const Json& j, const TuGame& v);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace matchcore

#endif  // MATCHCORE_IO_HPP_
