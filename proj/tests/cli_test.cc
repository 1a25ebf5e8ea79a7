// Copyright 2026 The linksparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "linksparse/dataset.h"
#include "linksparse/graph_io.h"

namespace linksparse {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run Cli(const std::string& args) {
  const std::string cmd = std::string(LINKSPARSE_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "linksparse_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli("--help").code, 0);
  EXPECT_EQ(Cli("sweep --help").code, 0);
  EXPECT_EQ(Cli("").code, 2);
  EXPECT_EQ(Cli("no-such-command").code, 2);
  EXPECT_EQ(Cli("gen-dataset --out " + P("d") + " --bogus").code, 2);
  EXPECT_EQ(Cli("gen-dataset --split validation --out " + P("d")).code, 2);
}

TEST_F(CliTest, DataErrors) {
  EXPECT_EQ(Cli("sweep --manifest " + P("missing.json") + " --ecdf x --out y").code, 3);
  WriteTextFile(P("g.txt"), "3 1\n0 1\n");
  WriteTextFile(P("w.txt"), "1\n2\n");
  EXPECT_EQ(Cli("mwis-oracle --graph " + P("g.txt") + " --weights " + P("w.txt")).code, 3);
}

TEST_F(CliTest, GenDatasetTestSplit) {
  const auto r = Cli("gen-dataset --split test --seed 7 --out " + P("test"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto m = ManifestFromJson(ReadTextFile(P("test/manifest.json")));
  EXPECT_EQ(m.entries.size(), 500u);
  EXPECT_EQ(m.split, "test");
}

TEST_F(CliTest, MwisOracle) {
  WriteTextFile(P("g.json"), "{\"n\": 3, \"edges\": [[0, 1], [1, 2]]}");
  WriteTextFile(P("w.csv"), "weight\n2\n1\n2\n");
  const auto r = Cli("mwis-oracle --graph " + P("g.json") + " --weights " + P("w.csv") +
                     " --trace " + P("trace.jsonl"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("optimum_weight=4 optimum_set=[0,2]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("lgs_weight=4"), std::string::npos) << r.out;
  EXPECT_NE(ReadTextFile(P("trace.jsonl")).find("\"round\":1"), std::string::npos);
}

TEST_F(CliTest, PipelineIsDeterministic) {
  ASSERT_EQ(Cli("gen-dataset --split train --seed 3 --scale 0.01 --out " + P("train")).code, 0);
  ASSERT_EQ(Cli("gen-dataset --split test --seed 4 --scale 0.05 --out " + P("test")).code, 0);
  const std::string ecdf = "collect-ecdf --manifest " + P("train/manifest.json") +
                           " --slots 50 --max-graphs 10 --seed 5 --out ";
  ASSERT_EQ(Cli(ecdf + P("e1.csv")).code, 0);
  ASSERT_EQ(Cli(ecdf + P("e2.csv")).code, 0);
  EXPECT_EQ(ReadTextFile(P("e1.csv")), ReadTextFile(P("e2.csv")));

  const std::string train = "train --manifest " + P("train/manifest.json") + " --ecdf " +
                            P("e1.csv") + " --epochs 2 --replay-passes 1 --seed 6 --out ";
  auto r = Cli(train + P("m1"));
  ASSERT_EQ(r.code, 0) << r.out;
  ASSERT_EQ(Cli(train + P("m2")).code, 0);
  EXPECT_EQ(ReadTextFile(P("m1/model.json")), ReadTextFile(P("m2/model.json")));
  EXPECT_EQ(ReadTextFile(P("m1/train_log.csv")), ReadTextFile(P("m2/train_log.csv")));
  EXPECT_TRUE(fs::exists(P("m1/stage1.json")));

  const std::string sweep = "sweep --manifest " + P("test/manifest.json") + " --ecdf " +
                            P("e1.csv") + " --model " + P("m1/model.json") + " --seed 8 --out ";
  ASSERT_EQ(Cli(sweep + P("s1.csv")).code, 0);
  ASSERT_EQ(Cli(sweep + P("s2.csv")).code, 0);
  EXPECT_EQ(ReadTextFile(P("s1.csv")), ReadTextFile(P("s2.csv")));

  r = Cli("sweep --manifest " + P("test/manifest.json") + " --ecdf " + P("e1.csv") +
          " --etas 0,0.95 --out " + P("stat.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(ReadTextFile(P("stat.csv")).find("gcn"), std::string::npos);

  const std::string sim = "timesim --manifest " + P("test/manifest.json") + " --ecdf " +
                          P("e1.csv") + " --model " + P("m1/model.json") +
                          " --slots 60 --seed 9 --out ";
  ASSERT_EQ(Cli(sim + P("t1.csv")).code, 0);
  ASSERT_EQ(Cli(sim + P("t2.csv")).code, 0);
  EXPECT_EQ(ReadTextFile(P("t1.csv")), ReadTextFile(P("t2.csv")));

  r = Cli("inspect-model --model " + P("m1/model.json") + " --graph " +
          P("test/graph_00000.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("vertex,degree,z0,z1"), std::string::npos);
}

}  // namespace
}  // namespace linksparse
