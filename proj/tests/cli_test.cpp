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

// Runs the command-line tool on the bundled instances and checks each result
// against its .expected.json sidecar.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "matchcore/io.hpp"

namespace matchcore {
namespace {

namespace fs = std::filesystem;

const std::string kInstances = MATCHCORE_INSTANCE_DIR;

int run(const std::string& args) {
  const std::string cmd = std::string(MATCHCORE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "matchcore_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

// Last CSV row is the top corner 2w.
std::string top_value(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::string last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return last.substr(last.rfind(',') + 1);
}

class SidecarTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SidecarTest, SolveMatchesExpectedVerdict) {
  const std::string name = GetParam();
  const std::string input = kInstances + "/" + name + ".json";
  const Json expected = read_json_file(kInstances + "/" + name + ".expected.json");
  const fs::path out = scratch(name + ".out.json");
  const fs::path csv = scratch(name + ".csv");

  ASSERT_EQ(run("solve --input " + input + " --output " + out.string() +
                " --oracle-check --dump-value-table " + csv.string()),
            expected.at("exit").get<int>());
  const Json result = read_json_file(out.string());
  for (const char* key : {"nonempty", "exists"}) {
    if (expected.contains(key)) {
      EXPECT_EQ(result.at(key), expected.at(key)) << key;
    }
  }
  if (expected.contains("V_e")) {
    const Json& holder = result.contains("V_e") ? result : result.at("existence");
    EXPECT_EQ(holder.at("V_e"), expected.at("V_e"));
  }
  if (expected.contains("V_2e")) {
    EXPECT_EQ(Json(top_value(csv)), expected.at("V_2e"));
  }
  if (expected.contains("branch")) {
    EXPECT_EQ(result.at("branch"), expected.at("branch"));
  }
  if (expected.contains("prices")) {
    EXPECT_EQ(result.at("prices"), expected.at("prices"));
  }

  if (expected.at("exit").get<int>() == 0) {
    EXPECT_EQ(run("verify --input " + input + " --certificate " + out.string()), 0);
  } else {
    EXPECT_NE(run("verify --input " + input + " --certificate " + out.string()), 0);
  }
}

INSTANTIATE_TEST_SUITE_P(Instances, SidecarTest,
                         ::testing::Values("alkan5", "pair3", "pairs4", "twoSided2x2",
                                           "assignment_diag", "assignment_flat",
                                           "assignment_3x3", "assignment_rect",
                                           "complements2", "additive2", "multiunit21"));

TEST(CliTest, MalformedInputIsAnError) {
  const fs::path bad = scratch("bad.json");
  write_text(bad, "{\"type\": \"tu_game\", \"players\": ");
  EXPECT_EQ(run("solve --input " + bad.string()), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST(CliTest, VerifyOutcomes) {
  const std::string pair3 = kInstances + "/pair3.json";
  const fs::path good = scratch("good.json");
  write_text(good, R"({"partition":[[1,2],[3]],"payoff":["5","5","0"]})");
  EXPECT_EQ(run("verify --input " + pair3 + " --certificate " + good.string()), 0);

  const fs::path negative = scratch("negative.json");
  write_text(negative, R"({"partition":[[1,2],[3]],"payoff":["11","-1","0"]})");
  EXPECT_EQ(run("verify --input " + pair3 + " --certificate " + negative.string()), 1);

  const fs::path triple = scratch("triple.json");
  write_text(triple,
             R"({"partition":[[1,2,3],[4],[5]],"payoff":["10","10","10","0","0"]})");
  EXPECT_EQ(run("verify --input " + kInstances + "/alkan5.json --certificate " +
                triple.string()),
            3);
}

TEST(CliTest, TwoPlayerGamesNeedTheFlag) {
  const fs::path two = scratch("two.json");
  write_text(two, R"({"type":"tu_game","players":2,"worths":[{"coalition":[1,2],"value":"4"}]})");
  EXPECT_EQ(run("solve --input " + two.string()), 1);
  EXPECT_EQ(run("solve --allow-n2 --input " + two.string()), 0);
}

TEST(CliTest, ExpandWritesAuctionAndGroups) {
  const fs::path out = scratch("expanded.json");
  const fs::path groups = scratch("expanded.json.groups.json");
  fs::remove(groups);
  ASSERT_EQ(run("expand --input " + kInstances + "/multiunit21.json --output " +
                out.string()),
            0);
  const Instance expanded = instance_from_json(read_json_file(out.string()));
  ASSERT_TRUE(expanded.auction.has_value());
  EXPECT_EQ(expanded.auction->num_items(), 3);
  EXPECT_TRUE(fs::exists(groups));
  EXPECT_EQ(run("solve --input " + out.string()), 0);
}

TEST(CliTest, SelftestSuite) {
  EXPECT_EQ(run("selftest --suite assignment --seed 7"), 0);
  EXPECT_EQ(run("selftest --suite no-such-suite"), 1);
}

}  // namespace
}  // namespace matchcore
