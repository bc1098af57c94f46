// Copyright 2026 The coopext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "json.hpp"

#include "coopext/cli.hpp"

namespace coopext::cli {
namespace {

namespace fs = std::filesystem;

const std::string kDataDir = COOPEXT_DATA_DIR;
const std::string kGame = kDataDir + "/table3_game.json";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "coopext");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("coopext_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, Validate) {
  const Result ok = invoke({"--game", kGame, "validate"});
  EXPECT_EQ(ok.code, kOk);
  EXPECT_NE(ok.out.find("valid: 4 agents"), std::string::npos);

  const std::string bad = write("bad.json", R"({"schema_version": 1, "agents": [
      {"id": 1, "revenue": {"b": 2, "p": 1}, "damage": {"c": 1, "q": 2}}]})");
  const Result r = invoke({"--game", bad, "validate"});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.out.find("strictly concave"), std::string::npos);
  EXPECT_EQ(invoke({"--game", bad, "pareto"}).code, kInputError);
}

TEST_F(CliTest, NashHumanCsvJson) {
  const Result human = invoke({"--game", kGame, "nash", "--partition", "[1,2],[3],[4]"});
  ASSERT_EQ(human.code, kOk) << human.err;
  EXPECT_NE(human.out.find("structure: [1,2],[3],[4]"), std::string::npos);
  EXPECT_NE(human.out.find("0.280"), std::string::npos);

  const Result csv =
      invoke({"--game", kGame, "--format", "csv", "nash", "--partition", "[1],[2],[3],[4]"});
  ASSERT_EQ(csv.code, kOk);
  EXPECT_EQ(csv.out.rfind("agent,emission,gross_welfare\n", 0), 0u);

  const Result js =
      invoke({"--game", kGame, "--format", "json", "nash", "--partition", " [1, 2, 3, 4] "});
  ASSERT_EQ(js.code, kOk);
  const auto doc = nlohmann::json::parse(js.out);
  EXPECT_EQ(doc.at("structure"), "[1,2,3,4]");
  EXPECT_NEAR(doc.at("total_stock").get<double>(), 0.4518609153284011, 1e-9);
}

TEST_F(CliTest, MalformedPartitionIsInputError) {
  for (const char* p : {"[1,2],[2]", "[1,2],[3]", "[1,2,3,4,5]", "[1,2", "1,2,3,4"}) {
    const Result r = invoke({"--game", kGame, "nash", "--partition", p});
    EXPECT_EQ(r.code, kInputError) << p;
    EXPECT_FALSE(r.err.empty());
  }
}

TEST_F(CliTest, ParetoPricesWvalue) {
  const Result pareto = invoke({"--game", kGame, "pareto"});
  EXPECT_EQ(pareto.code, kOk);
  EXPECT_NE(pareto.out.find("33.544"), std::string::npos);

  const Result prices = invoke({"--game", kGame, "prices"});
  EXPECT_EQ(prices.code, kOk);
  EXPECT_NE(prices.out.find("6.035"), std::string::npos);

  const Result wv = invoke({"--game", kGame, "wvalue"});
  EXPECT_EQ(wv.code, kOk);
  for (const char* v : {"17.583", "4.279", "2.940", "8.743"})
    EXPECT_NE(wv.out.find(v), std::string::npos) << v;

  for (const char* fmt : {"csv", "json"}) {
    for (const char* cmd : {"pareto", "prices", "wvalue", "gamma-core"})
      EXPECT_EQ(invoke({"--game", kGame, "--format", fmt, cmd}).code, kOk) << cmd;
  }
  EXPECT_NO_THROW(nlohmann::json::parse(invoke({"--game", kGame, "--format", "json", "wvalue"}).out));
}

TEST_F(CliTest, GammaCore) {
  const Result def = invoke({"--game", kGame, "gamma-core"});
  EXPECT_EQ(def.code, kOk);
  EXPECT_NE(def.out.find("in gamma-core: yes"), std::string::npos);

  const Result bad = invoke({"--game", kGame, "gamma-core", "--candidate", "30,1,1,1.5"});
  EXPECT_EQ(bad.code, kOk);
  EXPECT_NE(bad.out.find("in gamma-core: no"), std::string::npos);

  EXPECT_EQ(invoke({"--game", kGame, "gamma-core", "--candidate", "1,2"}).code, kInputError);
  EXPECT_EQ(invoke({"--game", kGame, "gamma-core", "--candidate", "1,x,2,3"}).code, kInputError);
}

TEST_F(CliTest, ReportTables) {
  for (const char* t : {"4", "5", "6", "7"}) {
    const Result r = invoke({"--game", kGame, "report", "--table", t});
    EXPECT_EQ(r.code, kOk) << t << r.err;
    EXPECT_NE(r.out.find("result: PASS"), std::string::npos);
  }
  EXPECT_EQ(invoke({"--game", kGame, "report", "--table", "3"}).code, kInputError);
  EXPECT_EQ(invoke({"--game", kGame, "--format", "json", "report", "--table", "6"}).code, kOk);
}

TEST_F(CliTest, ReportDiffAndMissingFixture) {
  EXPECT_EQ(invoke({"--game", kGame, "report", "--table", "6", "--golden", dir_.string()}).code,
            kMissingFixture);

  std::ifstream in(kDataDir + "/golden/table6.csv");
  std::stringstream text;
  text << in.rdbuf();
  std::string csv = text.str();
  const auto pos = csv.find("0.280");
  ASSERT_NE(pos, std::string::npos);
  csv.replace(pos, 5, "0.300");
  write("table6.csv", csv);
  const Result r = invoke({"--game", kGame, "report", "--table", "6", "--golden", dir_.string()});
  EXPECT_EQ(r.code, kDiff);
  EXPECT_NE(r.out.find("result: FAIL"), std::string::npos);
}

TEST_F(CliTest, SolverFailureExitCode) {
  const std::string game = write("tight.json", R"({"schema_version": 1, "max_iter": 2,
      "agents": [{"id": 1, "revenue": {"b": 6, "p": 0.5}, "damage": {"c": 1, "q": 2}},
                 {"id": 2, "revenue": {"b": 2, "p": 0.5}, "damage": {"c": 2, "q": 2}}]})");
  const Result r = invoke({"--game", game, "pareto"});
  EXPECT_EQ(r.code, kSolverError);
  EXPECT_NE(r.err.find("solver error"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kInputError);
  EXPECT_EQ(invoke({"pareto"}).code, kInputError);
  EXPECT_EQ(invoke({"--game", kGame, "nash"}).code, kInputError);
  EXPECT_EQ(invoke({"--game", kGame, "--format", "xml", "pareto"}).code, kInputError);
  EXPECT_EQ(invoke({"--game", (dir_ / "none.json").string(), "pareto"}).code, kInputError);
  EXPECT_EQ(invoke({"--game", write("junk.json", "{"), "pareto"}).code, kInputError);
  const Result help = invoke({"--help"});
  EXPECT_EQ(help.code, kOk);
  EXPECT_NE(help.out.find("gamma-core"), std::string::npos);
}

std::pair<int, std::string> shell(const std::string& command) {
  std::string output;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return {-1, {}};
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) output.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

TEST(CliBinaryTest, ExitCodesAndDeterminism) {
  const std::string bin = COOPEXT_CLI_PATH;
  const std::string game = " --game '" + kGame + "'";
  for (const char* t : {"4", "5", "6", "7"}) {
    const auto first = shell("NO_COLOR=1 '" + bin + "'" + game + " report --table " + t);
    const auto second = shell("NO_COLOR=1 '" + bin + "'" + game + " report --table " + t);
    EXPECT_EQ(first.first, 0) << first.second;
    EXPECT_EQ(first.second, second.second);
  }
  EXPECT_EQ(shell("'" + bin + "'" + game + " nash --partition '[1,2],[2]'").first, 2);
  EXPECT_EQ(shell("'" + bin + "'" + game + " report --table 6 --golden /nonexistent").first, 4);
  const auto a = shell("'" + bin + "'" + game + " --format csv wvalue");
  const auto b = shell("'" + bin + "'" + game + " --format csv wvalue");
  EXPECT_EQ(a.first, 0);
  EXPECT_EQ(a.second, b.second);
}

}  // namespace
}  // namespace coopext::cli
