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

#include "matchcore/io.hpp"

#include <fstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace matchcore {
namespace {

using testing::B;
using testing::Q;

TEST(JsonRationalTest, AcceptsStringsAndIntegersOnly) {
  EXPECT_EQ(rational_from_json(Json("0.1")), Rational(1, 10));
  EXPECT_EQ(rational_from_json(Json(7)), Rational(7));
  EXPECT_EQ(rational_from_json(Json("45/3")), Rational(15));
  EXPECT_THROW(rational_from_json(Json(0.5)), FormatError);
  EXPECT_THROW(rational_from_json(Json::array()), FormatError);
  EXPECT_EQ(to_json(Rational(-3, 2)), Json("-3/2"));
}

TEST(InstanceReaderTest, BundleAuctionIsCompletedMonotonically) {
  const Json j = Json::parse(R"({"type":"bundle_auction","items":2,"agents":[
      {"id":"a","values":[{"bundle":[1,0],"value":"3"},{"bundle":[0,1],"value":1}]}]})");
  const Instance inst = instance_from_json(j);
  ASSERT_EQ(inst.kind, InstanceKind::kBundleAuction);
  const auto& table = inst.auction->valuation(0);
  EXPECT_EQ(table.at(B({1, 1})), Rational(3));
  EXPECT_EQ(table.id(), "a");
}

TEST(InstanceReaderTest, TuGameUsesOneBasedPlayers) {
  const Json j = Json::parse(R"({"type":"tu_game","players":3,
      "worths":[{"coalition":[1,2],"value":"10"}],"prohibited":[[2,3]]})");
  const Instance inst = instance_from_json(j);
  ASSERT_TRUE(inst.tu.has_value());
  EXPECT_EQ(inst.tu->game.worth(0b011), Rational(10));
  EXPECT_EQ(inst.tu->prohibited, (std::vector<Coalition>{0b110}));
}

TEST(InstanceReaderTest, RejectsMalformedDocuments) {
  EXPECT_THROW(instance_from_json(Json::parse(R"({"type":"poker"})")), FormatError);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"type":"tu_game","players":3,
      "worths":[{"coalition":[1,4],"value":"1"}]})")),
               std::exception);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"type":"tu_game","players":2,
      "worths":[{"coalition":[1,2],"value":"1"}]})")),
               std::invalid_argument);
  EXPECT_NO_THROW(instance_from_json(Json::parse(R"({"type":"tu_game","players":2,
      "worths":[{"coalition":[1,2],"value":"1"}]})"),
                                     ReadOptions{true}));
  EXPECT_THROW(instance_from_json(Json::parse(R"({"type":"assignment_game",
      "matrix":[["1", 2.5],["0","1"]]})")),
               FormatError);
}

TEST(CandidateReaderTest, ReadsNestedCertificates) {
  const Bundle e = B({1, 1});
  const MultiUnitAuction a(e, {testing::table_from("a", e, [](const Bundle& x) {
                             return Rational(x.sum());
                           })});
  EquilibriumCertificate cert;
  cert.prices = Q({1, 1});
  cert.allocation = {e};
  const Json j = {{"certificate", certificate_to_json(cert)}};
  const auto [p, X] = candidate_from_json(j, a);
  EXPECT_EQ(p, cert.prices);
  EXPECT_EQ(X[0], e);
  EXPECT_THROW(candidate_from_json(Json::parse(R"({"exists":false})"), a), FormatError);
}

TEST(CandidateReaderTest, OutcomeRoundTrip) {
  const TuGame v = testing::pair_game();
  const MatchingOutcome o{{0b011, 0b100}, Q({5, 5, 0})};
  const MatchingOutcome back = outcome_from_json(outcome_to_json(o), v);
  EXPECT_EQ(back.partition, o.partition);
  EXPECT_EQ(back.payoff, o.payoff);
}

TEST(InstanceFilesTest, BundledInstancesParse) {
  for (const char* name : {"alkan5", "pair3", "pairs4", "twoSided2x2", "assignment_diag",
                           "assignment_flat", "assignment_3x3", "assignment_rect",
                           "complements2", "additive2", "multiunit21"}) {
    const std::string path = std::string(MATCHCORE_INSTANCE_DIR) + "/" + name + ".json";
    EXPECT_NO_THROW(instance_from_json(read_json_file(path))) << name;
  }
  EXPECT_THROW(read_json_file(std::string(MATCHCORE_INSTANCE_DIR) + "/missing.json"),
               std::exception);
}

}  // namespace
}  // namespace matchcore
