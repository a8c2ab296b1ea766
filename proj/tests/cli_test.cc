// Copyright 2026 The ldpd Authors
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

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

struct Result {
  int code = -1;
  std::string output;
};

Result Ldpd(const std::string& args) {
  const std::string cmd = std::string(LDPD_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) r.output += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ldpd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string WriteConfig(const std::string& alpha, const std::string& tag) {
    const std::filesystem::path p = dir_ / (tag + ".json");
    std::ofstream(p) << R"({"schema_version": "1", "density": {"family": "uniform"},
      "estimator": {"kind": "kde", "tuning": "fixed", "values": [0.2]},
      "t": 0.5, "n": [1000], "alpha": [)" << alpha << R"(], "replications": 200, "seed": 3,
      "output": {"risk_csv": ")" << (dir_ / (tag + "_risk.csv")).string()
                     << R"(", "rate_csv": ")" << (dir_ / (tag + "_rates.csv")).string() << R"("}})";
    return p.string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, RunMinimalConfig) {
  const Result r = Ldpd("run " + WriteConfig("0.5", "min"));
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string risk = Slurp(dir_ / "min_risk.csv");
  EXPECT_EQ(std::count(risk.begin(), risk.end(), '\n'), 2);
  EXPECT_EQ(risk.rfind("density,estimator,n,alpha,tuning,mse,se,bound,bias2,var\n", 0), 0u);
}

TEST_F(CliTest, RunIsByteDeterministic) {
  const std::string cfg = WriteConfig("0.5", "det");
  ASSERT_EQ(Ldpd("run " + cfg).code, 0);
  const std::string first = Slurp(dir_ / "det_risk.csv");
  ASSERT_EQ(Ldpd("run " + cfg + " --jobs 2").code, 0);
  EXPECT_EQ(first, Slurp(dir_ / "det_risk.csv"));
  ASSERT_EQ(Ldpd("run " + cfg + " --seed 99").code, 0);
  EXPECT_NE(first, Slurp(dir_ / "det_risk.csv"));
}

TEST_F(CliTest, InvalidConfigExitsTwo) {
  const Result r = Ldpd("run " + WriteConfig("1.5", "bad"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("alpha[0]"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("(0, 1)"), std::string::npos) << r.output;
  EXPECT_EQ(Ldpd("run " + (dir_ / "missing.json").string()).code, 2);
  EXPECT_EQ(Ldpd("").code, 2);
  EXPECT_EQ(Ldpd("audit privacy --alpha 2").code, 2);
}

TEST_F(CliTest, PrivacyAudit) {
  const Result r = Ldpd("audit privacy --alpha 0.5 --mechanism kde --h 0.1");
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("max log-ratio"), std::string::npos);
  EXPECT_NE(r.output.find(": 0.25 [certified]"), std::string::npos) << r.output;
  EXPECT_EQ(Ldpd("audit-privacy --alpha 0.5 --mechanism pde --d 3").code, 0);
}

TEST_F(CliTest, ConcentrationAudits) {
  const Result lt = Ldpd("audit laplace-tail --b 1 --n 64 --eps 1");
  ASSERT_EQ(lt.code, 0) << lt.output;
  EXPECT_NE(lt.output.find("1,"), std::string::npos);
  EXPECT_NE(lt.output.find("0.0366"), std::string::npos) << lt.output;
  const Result bern = Ldpd("audit bernstein --dist uniform --n 100 --eps 0.2 --reps 20000");
  ASSERT_EQ(bern.code, 0) << bern.output;
  EXPECT_NE(bern.output.find("0.0995"), std::string::npos) << bern.output;
  const Result pet = Ldpd("audit petrov --dist rademacher --m 4 --n 10");
  ASSERT_EQ(pet.code, 0) << pet.output;
  EXPECT_NE(pet.output.find("2.8"), std::string::npos) << pet.output;
}

}  // namespace
