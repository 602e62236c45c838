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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

namespace npc {

/// Variable names for printing and parsing, innermost transcendental first.
using Names = std::vector<std::string>;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_mpz(const mpz_class& z) noexcept {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = std::hash<int>{}(p->_mp_size);
  const int limbs = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
  for (int i = 0; i < limbs; ++i) h = hash_combine(h, static_cast<std::size_t>(p->_mp_d[i]));
  return h;
}

/// Exact field element: arithmetic, canonical equality, a total order, a hash.
template <class K>
concept FieldElement = requires(const K& a, const K& b, const typename K::ctx_type& c) {
  { K::zero(c) } -> std::same_as<K>;
  { K::one(c) } -> std::same_as<K>;
  { K::from_int(c, 1LL) } -> std::same_as<K>;
  { a.ctx() } -> std::convertible_to<typename K::ctx_type>;
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.inv() } -> std::same_as<K>;
  { a == b } -> std::convertible_to<bool>;
  { a < b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.is_one() } -> std::convertible_to<bool>;
  { a.hash() } -> std::convertible_to<std::size_t>;
};

template <class K>
struct Hasher {
  std::size_t operator()(const K& x) const noexcept { return x.hash(); }
};

/// x^e by repeated squaring; e >= 0.
template <class K>
K power(K base, mpz_class e) {
  K result = K::one(base.ctx());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

template <class K>
K power(const K& base, std::uint64_t e) {
  return power(base, mpz_class(static_cast<unsigned long>(e)));
}

/// Signed integer power; negative exponents invert.
template <class K>
K power_signed(const K& base, long long e) {
  if (e >= 0) return power(base, static_cast<std::uint64_t>(e));
  return power(base.inv(), static_cast<std::uint64_t>(-e));
}

}  // namespace npc
