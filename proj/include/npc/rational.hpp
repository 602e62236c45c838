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

#include <gmpxx.h>

#include "npc/error.hpp"
#include "npc/field.hpp"

namespace npc {

struct RationalCtx {
  friend bool operator==(const RationalCtx&, const RationalCtx&) = default;
};

inline std::uint64_t characteristic(const RationalCtx&) { return 0; }

/// Arbitrary-precision rational number; always in lowest terms with positive denominator.
class Rational {
 public:
  using ctx_type = RationalCtx;

  Rational() = default;
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(long long n) : q_(mpz_class(static_cast<long>(n))) {}

  static Rational zero(const RationalCtx& = {}) { return Rational(); }
  static Rational one(const RationalCtx& = {}) { return Rational(1LL); }
  static Rational from_int(const RationalCtx&, long long n) { return Rational(n); }
  static Rational from_mpz(const RationalCtx&, const mpz_class& n) { return Rational(mpq_class(n)); }

  RationalCtx ctx() const { return {}; }
  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }

  bool is_zero() const { return q_ == 0; }
  bool is_one() const { return q_ == 1; }

  Rational operator+(const Rational& o) const { return wrap(q_ + o.q_); }
  Rational operator-(const Rational& o) const { return wrap(q_ - o.q_); }
  Rational operator-() const { return wrap(-q_); }
  Rational operator*(const Rational& o) const { return wrap(q_ * o.q_); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw DomainError("division by zero rational");
    return wrap(q_ / o.q_);
  }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

  Rational inv() const {
    if (is_zero()) throw DomainError("inverse of zero rational");
    return wrap(1 / q_);
  }

  bool operator==(const Rational& o) const { return q_ == o.q_; }
  bool operator!=(const Rational& o) const { return q_ != o.q_; }
  bool operator<(const Rational& o) const { return q_ < o.q_; }
  bool operator<=(const Rational& o) const { return q_ <= o.q_; }
  bool operator>(const Rational& o) const { return q_ > o.q_; }
  bool operator>=(const Rational& o) const { return q_ >= o.q_; }

  std::size_t hash() const { return hash_combine(hash_mpz(q_.get_num()), hash_mpz(q_.get_den())); }

  /// "a" for integers, "a/b" otherwise.
  std::string str(const Names& = {}) const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  /// Total bits in numerator and denominator.
  std::size_t bit_size() const {
    return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
  }

 private:
  static Rational wrap(mpq_class q) {
    Rational r;
    r.q_ = std::move(q);
    return r;
  }

  mpq_class q_;
};

}  // namespace npc
