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

#include <cstdint>
#include <string>

#include "npc/error.hpp"
#include "npc/extension.hpp"
#include "npc/fp.hpp"
#include "npc/ratfunc.hpp"
#include "npc/rational.hpp"

namespace npc {

/// Describes where a family of scalars lives.
struct FieldDesc {
  std::uint64_t characteristic = 0;  // 0 or a prime
  int extension_degree = 1;          // k for GF(p^k)
  bool has_transcendental = false;   // scalars in F_p(t) / Q(t)
  int transcendence_degree = 0;
  std::uint64_t cyclotomic_order = 1;  // M when char-0 scalars were extended by a primitive M-th root of unity

  void validate() const {
    if (characteristic != 0 && !is_prime_u64(characteristic))
      throw DomainError("characteristic must be 0 or prime");
    if (extension_degree < 1) throw DomainError("extension degree must be positive");
    if (extension_degree > 1 && characteristic == 0)
      throw DomainError("finite extensions only in positive characteristic");
  }

  std::string str() const {
    std::string base;
    if (characteristic == 0)
      base = cyclotomic_order > 2 ? "Q(zeta_" + std::to_string(cyclotomic_order) + ")" : "Q";
    else if (extension_degree == 1)
      base = "F_" + std::to_string(characteristic);
    else
      base = "F_" + std::to_string(characteristic) + "^" + std::to_string(extension_degree);
    if (transcendence_degree == 1) return base + "(t)";
    if (transcendence_degree > 1) return base + "(" + std::to_string(transcendence_degree) + " transcendentals)";
    return base;
  }

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

template <class K>
FieldDesc field_desc_of(const typename K::ctx_type& c) {
  FieldDesc d;
  d.characteristic = characteristic(c);
  d.transcendence_degree = ratfunc_depth<K>::value;
  d.has_transcendental = d.transcendence_degree > 0;
  if constexpr (std::is_same_v<K, GF>) d.extension_degree = c.degree();
  return d;
}

}  // namespace npc
