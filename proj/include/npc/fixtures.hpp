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

// Named groups shipped with the tools.

#include <string>
#include <variant>
#include <vector>

#include "npc/distortion.hpp"
#include "npc/parse.hpp"

namespace npc {

/// Scalar kinds the tools read and write.
using AnyGroup = std::variant<MatGroup<Rational>, MatGroup<Fp>, MatGroup<RatFunc<Fp>>>;

struct FixtureInfo {
  std::string name;
  std::string field;
  std::string description;
};

inline const std::vector<FixtureInfo>& fixture_list() {
  static const std::vector<FixtureInfo> list = {
      {"bs12", "Q", "a=[[1,1],[0,1]], t=[[2,0],[0,1]]; t a t^-1 = a^2, so l(a^(2^n)) <= 2n+1 and tau(a) = 0"},
      {"free2", "Q", "[[1,2],[0,1]], [[1,0],[2,1]] generate a free group; spheres have 4*3^(d-1) elements"},
      {"heisenberg", "Q", "x=I+E12, y=I+E23 in 3x3 unitriangular integer matrices; the center c=[x,y] is distorted"},
      {"lamplighter", "F_2(t)", "a=[[1,1],[0,1]], s=[[t,0],[0,1]]; C_2 wreath Z, conjugates s^k a s^-k = [[1,t^k],[0,1]]"},
      {"sl2_f2_laurent", "F_2(t)", "diag(t,1/t), [[1,1],[0,1]] inside SL(2, F_2[t,1/t])"},
      {"z2diag", "Q", "diag(2,1), diag(1,2): free abelian of rank 2, word length is the l1 norm"},
  };
  return list;
}

namespace detail {

template <class K>
Matrix<K> fixture_matrix(const typename K::ctx_type& c, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<K>> v;
  for (const auto& r : rows) {
    v.emplace_back();
    for (const auto& e : r) v.back().push_back(parse_scalar<K>(e, c));
  }
  return Matrix<K>::from_rows(c, v);
}

}  // namespace detail

inline AnyGroup fixture_group(const std::string& name) {
  const RationalCtx q;
  auto mq = [&](const std::vector<std::vector<std::string>>& r) { return detail::fixture_matrix<Rational>(q, r); };
  if (name == "heisenberg")
    return MatGroup<Rational>{{mq({{"1", "1", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}),
                               mq({{"1", "0", "0"}, {"0", "1", "1"}, {"0", "0", "1"}})},
                              name};
  if (name == "bs12") return MatGroup<Rational>{{mq({{"1", "1"}, {"0", "1"}}), mq({{"2", "0"}, {"0", "1"}})}, name};
  if (name == "z2diag") return MatGroup<Rational>{{mq({{"2", "0"}, {"0", "1"}}), mq({{"1", "0"}, {"0", "2"}})}, name};
  if (name == "free2") return MatGroup<Rational>{{mq({{"1", "2"}, {"0", "1"}}), mq({{"1", "0"}, {"2", "1"}})}, name};
  const FpCtx f2(2);
  auto mt = [&](const std::vector<std::vector<std::string>>& r) { return detail::fixture_matrix<RatFunc<Fp>>(f2, r); };
  if (name == "lamplighter")
    return MatGroup<RatFunc<Fp>>{{mt({{"1", "1"}, {"0", "1"}}), mt({{"t", "0"}, {"0", "1"}})}, name};
  if (name == "sl2_f2_laurent")
    return MatGroup<RatFunc<Fp>>{{mt({{"t", "0"}, {"0", "1/t"}}), mt({{"1", "1"}, {"0", "1"}})}, name};
  throw DomainError("unknown fixture '" + name + "'");
}

/// Heisenberg commutator x y x^-1 y^-1 = I + E13.
inline Word heisenberg_center_word() { return {0, 2, 1, 3}; }

}  // namespace npc
