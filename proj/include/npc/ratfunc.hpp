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

#include <string>
#include <type_traits>
#include <utility>

#include "npc/error.hpp"
#include "npc/field.hpp"
#include "npc/poly.hpp"

namespace npc {

/// Element num/den of the rational function field K(t), kept in canonical form:
/// den monic, gcd(num, den) = 1, zero is 0/1. Equality is structural.
template <class K>
class RatFunc {
 public:
  using base_type = K;
  using ctx_type = typename K::ctx_type;
  using poly_type = Poly<K>;

  RatFunc() = default;
  explicit RatFunc(const poly_type& p) : num_(p), den_(poly_type::one(p.ctx())) {}
  RatFunc(poly_type num, poly_type den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc zero(const ctx_type& c) { return RatFunc(poly_type::zero(c)); }
  static RatFunc one(const ctx_type& c) { return RatFunc(poly_type::one(c)); }
  static RatFunc from_int(const ctx_type& c, long long n) {
    return RatFunc(poly_type::constant(K::from_int(c, n)));
  }
  static RatFunc constant(const K& a) { return RatFunc(poly_type::constant(a)); }
  static RatFunc variable(const ctx_type& c) { return RatFunc(poly_type::x(c)); }

  const ctx_type& ctx() const { return num_.ctx(); }
  const poly_type& num() const { return num_; }
  const poly_type& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  /// The constant value; throws if the element involves t.
  K constant_value() const {
    if (!is_constant()) throw DomainError("rational function is not constant");
    return num_.coeff(0);
  }

  RatFunc operator+(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ - o.num_, den_);
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RatFunc operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return zero(ctx());
    if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ * o.num_);
    // cross-cancel before multiplying keeps the operands small
    const poly_type g1 = gcd(num_, o.den_);
    const poly_type g2 = gcd(o.num_, den_);
    RatFunc r;
    r.num_ = (num_ / g1) * (o.num_ / g2);
    r.den_ = (den_ / g2) * (o.den_ / g1);
    r.fix_sign();
    return r;
  }
  RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc inv() const {
    if (is_zero()) throw DomainError("inverse of zero rational function");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    r.fix_sign();
    return r;
  }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool operator<(const RatFunc& o) const {
    if (den_ != o.den_) return den_ < o.den_;
    return num_ < o.num_;
  }

  std::size_t hash() const { return hash_combine(num_.hash(), den_.hash()); }

  /// "P" for polynomials, "P | Q" otherwise; names[depth-1] is this level's variable.
  std::string str(const Names& names) const;
  std::string str() const;

  /// Sum of numerator and denominator degrees, a size measure for watchdogs.
  std::size_t bit_size() const {
    return static_cast<std::size_t>(num_.degree() + 1) + static_cast<std::size_t>(den_.degree());
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = poly_type::one(den_.ctx());
      return;
    }
    if (!den_.is_constant()) {
      const poly_type g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    fix_sign();
  }
  void fix_sign() {
    if (den_.is_monic()) return;
    const K li = den_.lead().inv();
    num_ = num_ * li;
    den_ = den_ * li;
  }

  poly_type num_;
  poly_type den_;
};

template <class T>
struct is_ratfunc : std::false_type {};
template <class K>
struct is_ratfunc<RatFunc<K>> : std::true_type {};
template <class T>
inline constexpr bool is_ratfunc_v = is_ratfunc<T>::value;

/// Number of nested transcendentals: 0 for F_p and Q, d for F_p(t_1)...(t_d).
template <class T>
struct ratfunc_depth : std::integral_constant<int, 0> {};
template <class K>
struct ratfunc_depth<RatFunc<K>> : std::integral_constant<int, 1 + ratfunc_depth<K>::value> {};

inline Names default_names(int depth) {
  switch (depth) {
    case 0: return {};
    case 1: return {"t"};
    case 2: return {"s", "t"};
    case 3: return {"r", "s", "t"};
    default: {
      Names n;
      for (int i = 1; i <= depth; ++i) n.push_back("t" + std::to_string(i));
      return n;
    }
  }
}

template <class K>
std::string RatFunc<K>::str(const Names& names) const {
  constexpr int d = ratfunc_depth<RatFunc<K>>::value;
  const Names use = names.size() >= static_cast<std::size_t>(d) ? names : default_names(d);
  const std::string& var = use[d - 1];
  if (den_.is_one()) return num_.str(var, use);
  return num_.str(var, use) + " | " + den_.str(var, use);
}

template <class K>
std::string RatFunc<K>::str() const {
  return str(default_names(ratfunc_depth<RatFunc<K>>::value));
}

}  // namespace npc
