/*
   Copyright 2026 The npc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <cstdlib>
#include <regex>

#include "golden_runner.hpp"

using namespace npc::testing;

namespace {

bool updating() { return std::getenv("NPC_UPDATE_GOLDEN") != nullptr; }

int exit_code(const std::string& out) {
  const auto at = out.rfind("[exit ");
  return at == std::string::npos ? -1 : std::atoi(out.c_str() + at + 6);
}

std::string body(const std::string& out) { return out.substr(0, out.rfind("[exit ")); }

}  // namespace

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesRecordedOutput) {
  const auto& c = GetParam();
  const auto got = run_cli(c.args).out;
  const std::string path = std::string(NPC_GOLDEN_DIR) + "/" + c.name + ".out";
  if (updating()) {
    std::ofstream(path, std::ios::binary) << got;
    return;
  }
  EXPECT_EQ(got, read_file(path)) << "npc " << c.args;
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(read_cases(NPC_GOLDEN_DIR)),
                         [](const auto& info) { return info.param.name; });

TEST(Cli, DocumentedExamples) {
  EXPECT_EQ(run_cli("valuate --ring f2t.json --m -1 --count").out, "4\n[exit 0]\n");
  EXPECT_EQ(run_cli("valuate --ring f2t_laurent.json --m -1 --count").out, "8\n[exit 0]\n");
  EXPECT_EQ(run_cli("classify --matrix jordan_f3.json").out, "finite_order(3)\n[exit 0]\n");
  EXPECT_EQ(run_cli("classify --matrix jordan_q.json").out, "infinite_order_unipotent\n[exit 0]\n");
  EXPECT_EQ(run_cli("classify --matrix rotation_q.json").out, "finite_order(4)\n[exit 0]\n");
  EXPECT_EQ(run_cli("classify --matrix diag_half_q.json").out, "other_infinite\n[exit 0]\n");
}

TEST(Cli, ExitCodes) {
  const auto usage = run_cli("valuate --ring f2t.json --m -1 --bogus", true);
  EXPECT_EQ(exit_code(usage.out), 1);
  EXPECT_NE(usage.err.find("Usage"), std::string::npos) << usage.err;
  EXPECT_EQ(exit_code(run_cli("valuate --ring no_such_ring.json --m 0").out), 1);
  EXPECT_EQ(exit_code(run_cli("valuate --ring reducible_ring.json --m 0").out), 2);
  EXPECT_EQ(exit_code(run_cli("decompose --group noncommuting.json").out), 2);
  EXPECT_EQ(exit_code(run_cli("valuate --ring f3t_two_primes.json --m -3 --element-cap 100").out), 3);
  EXPECT_EQ(exit_code(run_cli("building classify --group fixture:sl2_f2_laurent --word \"-0 1 0\" --radius 0").out), 3);
  EXPECT_EQ(exit_code(run_cli("decompose --group sqrt2_group.json").out), 4);
  const auto err = run_cli("decompose --group sqrt2_group.json", true);
  EXPECT_FALSE(err.err.empty());
}

TEST(Cli, DotOutputCounts) {
  const auto count = [](const std::string& dot, const std::regex& re) {
    return std::distance(std::sregex_iterator(dot.begin(), dot.end(), re), std::sregex_iterator());
  };
  const std::regex node(R"(^\s*n\d+ \[label=)", std::regex::multiline), edge(R"(^\s*n\d+ -- n\d+)", std::regex::multiline);
  const auto r0 = body(run_cli("building ball --char 2 --val t --radius 0 --dot -").out);
  EXPECT_EQ(count(r0, node), 1);
  EXPECT_EQ(count(r0, edge), 0);
  const auto r1 = body(run_cli("building ball --char 2 --val t --radius 1 --dot -").out);
  EXPECT_EQ(count(r1, node), 4);
  EXPECT_EQ(count(r1, edge), 3);
  EXPECT_EQ(r1.rfind("graph ", 0), 0u);
  const auto cy = body(run_cli("distortion ball --group fixture:free2 --radius 1 --dot -").out);
  EXPECT_LE(count(cy, node), 5);
  EXPECT_GE(count(cy, node), 1);
}

TEST(Cli, SeedFlag) {
  // the decomposition is canonical, so the seed of the root finder does not show in the output
  const auto a = run_cli("decompose --group companion_f2.json").out;
  EXPECT_EQ(run_cli("--seed 7 decompose --group companion_f2.json").out, a);
  EXPECT_EQ(exit_code(run_cli("--seed notanumber decompose --group companion_f2.json").out), 1);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const auto& c : read_cases(NPC_GOLDEN_DIR)) EXPECT_EQ(run_cli(c.args).out, run_cli(c.args).out) << c.name;
}
