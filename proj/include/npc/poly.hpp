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

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "npc/error.hpp"
#include "npc/field.hpp"

namespace npc {

/// Dense univariate polynomial over a field K; coeffs()[i] multiplies t^i.
/// The zero polynomial has no coefficients and the leading coefficient is never zero.
template <class K>
class Poly {
 public:
  using coeff_type = K;
  using ctx_type = typename K::ctx_type;

  Poly() = default;
  explicit Poly(const ctx_type& c) : ctx_(c) {}
  Poly(const ctx_type& c, std::vector<K> coeffs) : c_(std::move(coeffs)), ctx_(c) { trim(); }

  static Poly constant(const K& a) { return Poly(a.ctx(), {a}); }
  static Poly monomial(const K& a, std::size_t deg) {
    std::vector<K> v(deg + 1, K::zero(a.ctx()));
    v[deg] = a;
    return Poly(a.ctx(), std::move(v));
  }
  static Poly x(const ctx_type& c) { return monomial(K::one(c), 1); }
  static Poly zero(const ctx_type& c) { return Poly(c); }
  static Poly one(const ctx_type& c) { return constant(K::one(c)); }

  const ctx_type& ctx() const { return ctx_; }
  const std::vector<K>& coeffs() const { return c_; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K::zero(ctx_); }
  const K& lead() const {
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
  }

  Poly operator+(const Poly& o) const {
    std::vector<K> r = c_.size() >= o.c_.size() ? c_ : o.c_;
    const std::vector<K>& s = c_.size() >= o.c_.size() ? o.c_ : c_;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
    return Poly(ctx_, std::move(r));
  }
  Poly operator-() const {
    std::vector<K> r;
    r.reserve(c_.size());
    for (const K& a : c_) r.push_back(-a);
    return Poly(ctx_, std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(ctx_);
    std::vector<K> r(c_.size() + o.c_.size() - 1, K::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(ctx_, std::move(r));
  }
  Poly operator*(const K& a) const {
    if (a.is_zero()) return Poly(ctx_);
    std::vector<K> r;
    r.reserve(c_.size());
    for (const K& b : c_) r.push_back(b * a);
    return Poly(ctx_, std::move(r));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Euclidean division; throws on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    if (degree() < d.degree()) return {Poly(ctx_), *this};
    std::vector<K> rem = c_;
    std::vector<K> quo(c_.size() - d.c_.size() + 1, K::zero(ctx_));
    const K lead_inv = d.lead().inv();
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t i = rem.size(); i-- > dd;) {
      if (rem[i].is_zero()) continue;
      const K q = rem[i] * lead_inv;
      quo[i - dd] = q;
      for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] = rem[i - dd + j] - q * d.c_[j];
    }
    rem.resize(dd);
    return {Poly(ctx_, std::move(quo)), Poly(ctx_, std::move(rem))};
  }
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  /// Exact division; throws if d does not divide *this.
  Poly exact_div(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    return q;
  }

  bool divisible_by(const Poly& d) const { return (*this % d).is_zero(); }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * lead().inv();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(ctx_);
    std::vector<K> r;
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.push_back(c_[i] * K::from_int(ctx_, static_cast<long long>(i)));
    return Poly(ctx_, std::move(r));
  }

  K eval(const K& x) const {
    K acc = K::zero(ctx_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Evaluate with the coefficients mapped into an algebra E (E * E, E + E, E from K).
  template <class E, class Lift>
  E eval_in(const E& x, const E& zero, Lift lift) const {
    E acc = zero;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + lift(c_[i]);
    return acc;
  }

  /// Reverse coefficient order relative to degree `n`: t^n f(1/t).
  Poly reversed(std::size_t n) const {
    std::vector<K> r(n + 1, K::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
    return Poly(ctx_, std::move(r));
  }

  /// Order of vanishing at t = 0 (index of the lowest nonzero coefficient).
  std::size_t low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return i;
    return 0;
  }

  Poly shift_down(std::size_t k) const {
    if (k >= c_.size()) return Poly(ctx_);
    return Poly(ctx_, std::vector<K>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  /// Canonical order: degree first, then coefficients from the top down.
  bool operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] < o.c_[i]) return true;
      if (o.c_[i] < c_[i]) return false;
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = c_.size();
    for (const K& a : c_) h = hash_combine(h, a.hash());
    return h;
  }

  /// Ascending-degree text "c0+c1*t+...+ck*t^k" in variable `var`.
  std::string str(const std::string& var, const Names& inner = {}) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      std::string term;
      std::string cs = c_[i].str(inner);
      const bool compound = needs_parens(cs);
      if (i == 0) {
        term = compound ? "(" + cs + ")" : cs;
      } else {
        std::string mono = var + (i == 1 ? "" : "^" + std::to_string(i));
        if (cs == "1")
          term = mono;
        else if (cs == "-1")
          term = "-" + mono;
        else
          term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
      }
      if (out.empty())
        out = term;
      else if (term[0] == '-')
        out += term;
      else
        out += "+" + term;
    }
    return out;
  }

 private:
  static bool needs_parens(const std::string& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] == '+' || s[i] == '-' || s[i] == '|' || s[i] == '*') return true;
    return s.find('|') != std::string::npos;
  }

  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<K> c_;
  ctx_type ctx_{};
};

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, u) with s*a + u*b = g, g monic.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> xgcd(const Poly<K>& a, const Poly<K>& b) {
  const auto& c = a.ctx();
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = Poly<K>::one(c), s1 = Poly<K>::zero(c);
  Poly<K> u0 = Poly<K>::zero(c), u1 = Poly<K>::one(c);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<K> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<K> u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  const K li = r0.lead().inv();
  return {r0 * li, s0 * li, u0 * li};
}

template <class K>
Poly<K> poly_pow(Poly<K> base, std::uint64_t e) {
  Poly<K> r = Poly<K>::one(base.ctx());
  while (e > 0) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return r;
}

/// base^e mod m for a big exponent.
template <class K>
Poly<K> powmod(Poly<K> base, mpz_class e, const Poly<K>& m) {
  Poly<K> r = Poly<K>::one(base.ctx()) % m;
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
    e >>= 1;
    if (e > 0) base = (base * base) % m;
  }
  return r;
}

}  // namespace npc
