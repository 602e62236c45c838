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
#include <random>
#include <string>
#include <vector>

#include "npc/error.hpp"
#include "npc/field.hpp"

namespace npc {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct FpCtx {
  std::uint32_t p = 0;

  FpCtx() = default;
  explicit FpCtx(std::uint64_t prime) : p(static_cast<std::uint32_t>(prime)) {
    if (prime >= (1ULL << 31) || !is_prime_u64(prime))
      throw DomainError("characteristic must be a prime below 2^31, got " + std::to_string(prime));
  }
  friend bool operator==(const FpCtx&, const FpCtx&) = default;
};

inline std::uint64_t characteristic(const FpCtx& c) { return c.p; }

/// Element of the prime field F_p.
class Fp {
 public:
  using ctx_type = FpCtx;

  Fp() = default;
  Fp(const FpCtx& c, std::uint64_t v) : v_(static_cast<std::uint32_t>(v % c.p)), p_(c.p) {}

  static Fp zero(const FpCtx& c) { return Fp(c, 0); }
  static Fp one(const FpCtx& c) { return Fp(c, 1); }
  static Fp from_int(const FpCtx& c, long long n) {
    long long r = n % static_cast<long long>(c.p);
    if (r < 0) r += c.p;
    return Fp(c, static_cast<std::uint64_t>(r));
  }
  static Fp from_mpz(const FpCtx& c, const mpz_class& n) {
    mpz_class r = n % c.p;
    if (r < 0) r += c.p;
    return Fp(c, r.get_ui());
  }

  FpCtx ctx() const { FpCtx c; c.p = p_; return c; }
  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator+(const Fp& o) const { return raw(v_ + o.v_ >= p_ ? v_ + o.v_ - p_ : v_ + o.v_); }
  Fp operator-(const Fp& o) const { return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }
  Fp operator*(const Fp& o) const {
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_));
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inv() const {
    if (v_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
    // extended Euclid on (v, p)
    long long a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      const long long q = a / b;
      long long t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    if (x0 < 0) x0 += p_;
    return raw(static_cast<std::uint32_t>(x0));
  }

  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }
  bool operator<(const Fp& o) const { return v_ < o.v_; }

  std::size_t hash() const { return std::hash<std::uint32_t>{}(v_) * 31 + p_; }
  std::string str(const Names& = {}) const { return std::to_string(v_); }

 private:
  Fp raw(std::uint32_t v) const { Fp r; r.v_ = v; r.p_ = p_; return r; }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline mpz_class field_order(const FpCtx& c) { return mpz_class(c.p); }

inline std::vector<Fp> all_elements(const FpCtx& c) {
  std::vector<Fp> out;
  out.reserve(c.p);
  for (std::uint32_t v = 0; v < c.p; ++v) out.emplace_back(c, v);
  return out;
}

template <class Rng>
Fp random_element(const FpCtx& c, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, c.p - 1);
  return Fp(c, d(rng));
}

/// Inverse of the Frobenius map; the identity on a prime field.
inline Fp pth_root(const Fp& a) { return a; }

}  // namespace npc
