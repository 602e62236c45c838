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

// Graphviz output with a deterministic node order (sorted labels).

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace npc {

inline std::string dot_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

/// Undirected graph; node ids follow the sorted label order, edges are deduplicated.
inline std::string emit_graph(const std::string& name, const std::vector<std::string>& labels,
                              const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  std::vector<std::size_t> id(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (auto [a, b] : edges) {
    std::size_t x = id.at(a), y = id.at(b);
    if (x > y) std::swap(x, y);
    e.emplace_back(x, y);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  std::string out = "graph \"" + dot_escape(name) + "\" {\n";
  for (std::size_t i = 0; i < order.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + dot_escape(labels[order[i]]) + "\"];\n";
  for (auto [a, b] : e) out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace npc
