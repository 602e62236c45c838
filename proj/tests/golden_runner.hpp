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

#pragma once

// Golden CLI cases: each line of cases.txt is "name: arguments"; the expected
// stdout followed by "[exit N]" lives in name.out.

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace npc::testing {

struct GoldenCase {
  std::string name;
  std::string args;
};

inline std::vector<GoldenCase> read_cases(const std::string& dir) {
  std::ifstream in(dir + "/cases.txt");
  std::vector<GoldenCase> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string args = line.substr(colon + 1);
    if (!args.empty() && args[0] == ' ') args.erase(0, 1);
    out.push_back({line.substr(0, colon), args});
  }
  return out;
}

struct RunOutput {
  std::string out;  // stdout then "[exit N]"
  std::string err;
};

// Runs the CLI from the samples directory. NPC_SEED is cleared so the default seed applies.
inline RunOutput run_cli(const std::string& args, bool capture_stderr = false) {
  std::string err_file = "/dev/null";
  if (capture_stderr) {
    char tmpl[] = "/tmp/npc_stderr_XXXXXX";
    const int fd = mkstemp(tmpl);
    if (fd >= 0) close(fd);
    err_file = tmpl;
  }
  const std::string cmd = "cd '" NPC_SAMPLES_DIR "' && env -u NPC_SEED '" NPC_CLI "' " + args + " 2>" + err_file +
                          "; echo \"[exit $?]\"";
  RunOutput r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  pclose(p);
  if (capture_stderr) {
    std::ifstream e(err_file);
    std::stringstream ss;
    ss << e.rdbuf();
    r.err = ss.str();
    std::remove(err_file.c_str());
  }
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace npc::testing
