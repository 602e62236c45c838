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

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "npc/error.hpp"
#include "npc/field.hpp"
#include "npc/fp.hpp"
#include "npc/poly.hpp"

namespace npc {

template <class K>
struct ExtData {
  typename K::ctx_type base;
  Poly<K> modulus;      // monic, irreducible over K
  std::string name;     // printed name of the adjoined root
};

/// Context of a simple extension K[z]/(m(z)); shared by all elements.
template <class K>
struct ExtCtx {
  std::shared_ptr<const ExtData<K>> data;

  ExtCtx() = default;
  ExtCtx(const Poly<K>& modulus, std::string name = "z")
      : data(std::make_shared<const ExtData<K>>(ExtData<K>{modulus.ctx(), modulus.monic(), std::move(name)})) {
    if (modulus.degree() < 1) throw DomainError("extension modulus must have positive degree");
  }

  const Poly<K>& modulus() const { return data->modulus; }
  const typename K::ctx_type& base() const { return data->base; }
  int degree() const { return data->modulus.degree(); }

  friend bool operator==(const ExtCtx& a, const ExtCtx& b) {
    if (a.data == b.data) return true;
    if (!a.data || !b.data) return false;
    return a.data->modulus == b.data->modulus;
  }
};

template <class K>
std::uint64_t characteristic(const ExtCtx<K>& c) {
  return characteristic(c.base());
}

/// Element of K[z]/(m(z)), stored as its reduced residue of degree < deg m.
template <class K>
class Ext {
 public:
  using base_type = K;
  using ctx_type = ExtCtx<K>;

  Ext() = default;
  Ext(const ctx_type& c, const Poly<K>& r) : r_(r % c.modulus()), ctx_(c) {}

  static Ext zero(const ctx_type& c) { return Ext(c, Poly<K>::zero(c.base())); }
  static Ext one(const ctx_type& c) { return Ext(c, Poly<K>::one(c.base())); }
  static Ext from_int(const ctx_type& c, long long n) {
    return Ext(c, Poly<K>::constant(K::from_int(c.base(), n)));
  }
  static Ext from_base(const ctx_type& c, const K& a) { return Ext(c, Poly<K>::constant(a)); }
  /// The adjoined root z.
  static Ext generator(const ctx_type& c) { return Ext(c, Poly<K>::x(c.base())); }

  const ctx_type& ctx() const { return ctx_; }
  const Poly<K>& residue() const { return r_; }

  bool is_zero() const { return r_.is_zero(); }
  bool is_one() const { return r_.is_one(); }
  bool in_base() const { return r_.is_constant(); }

  Ext operator+(const Ext& o) const { return raw(r_ + o.r_); }
  Ext operator-(const Ext& o) const { return raw(r_ - o.r_); }
  Ext operator-() const { return raw(-r_); }
  Ext operator*(const Ext& o) const { return raw((r_ * o.r_) % ctx_.modulus()); }
  Ext operator/(const Ext& o) const { return *this * o.inv(); }
  Ext& operator+=(const Ext& o) { return *this = *this + o; }
  Ext& operator-=(const Ext& o) { return *this = *this - o; }
  Ext& operator*=(const Ext& o) { return *this = *this * o; }

  Ext inv() const {
    if (is_zero()) throw DomainError("inverse of zero in extension field");
    auto [g, s, u] = xgcd(r_, ctx_.modulus());
    if (!g.is_one()) throw DomainError("extension modulus is not irreducible");
    return raw(s % ctx_.modulus());
  }

  bool operator==(const Ext& o) const { return r_ == o.r_; }
  bool operator!=(const Ext& o) const { return !(*this == o); }
  bool operator<(const Ext& o) const { return r_ < o.r_; }

  std::size_t hash() const { return r_.hash(); }
  std::string str(const Names& = {}) const { return r_.str(ctx_.data ? ctx_.data->name : "z"); }

 private:
  Ext raw(Poly<K> r) const {
    Ext e;
    e.r_ = std::move(r);
    e.ctx_ = ctx_;
    return e;
  }

  Poly<K> r_;
  ctx_type ctx_;
};

/// GF(p^k) realised as F_p[z]/(m).
using GF = Ext<Fp>;

inline mpz_class field_order(const ExtCtx<Fp>& c) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), c.base().p, static_cast<unsigned long>(c.degree()));
  return q;
}

inline std::vector<GF> all_elements(const ExtCtx<Fp>& c) {
  const std::uint32_t p = c.base().p;
  const int k = c.degree();
  std::vector<GF> out;
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<Fp> co;
    for (std::uint32_t d : digits) co.emplace_back(c.base(), d);
    out.emplace_back(c, Poly<Fp>(c.base(), co));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

template <class Rng>
GF random_element(const ExtCtx<Fp>& c, Rng& rng) {
  std::vector<Fp> co;
  for (int i = 0; i < c.degree(); ++i) co.push_back(random_element(c.base(), rng));
  return GF(c, Poly<Fp>(c.base(), co));
}

/// Inverse Frobenius: a^(q/p).
inline GF pth_root(const GF& a) {
  const mpz_class e = field_order(a.ctx()) / a.ctx().base().p;
  return power(a, e);
}

}  // namespace npc
