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

#include <cctype>
#include <string>
#include <vector>

#include "npc/error.hpp"
#include "npc/extension.hpp"
#include "npc/fp.hpp"
#include "npc/ratfunc.hpp"
#include "npc/rational.hpp"

namespace npc {

/// Integer constants and named transcendentals for each scalar type.
template <class K>
struct ScalarIO;

template <>
struct ScalarIO<Fp> {
  static Fp integer(const FpCtx& c, const mpz_class& n) { return Fp::from_mpz(c, n); }
  static std::vector<Fp> variables(const FpCtx&) { return {}; }
};

template <>
struct ScalarIO<Rational> {
  static Rational integer(const RationalCtx& c, const mpz_class& n) { return Rational::from_mpz(c, n); }
  static std::vector<Rational> variables(const RationalCtx&) { return {}; }
};

template <class B>
struct ScalarIO<RatFunc<B>> {
  using ctx_type = typename B::ctx_type;
  static RatFunc<B> integer(const ctx_type& c, const mpz_class& n) {
    return RatFunc<B>::constant(ScalarIO<B>::integer(c, n));
  }
  /// Inner variables first, this level's variable last.
  static std::vector<RatFunc<B>> variables(const ctx_type& c) {
    std::vector<RatFunc<B>> out;
    for (const B& v : ScalarIO<B>::variables(c)) out.push_back(RatFunc<B>::constant(v));
    out.push_back(RatFunc<B>::variable(c));
    return out;
  }
};

template <class B>
struct ScalarIO<Ext<B>> {
  static Ext<B> integer(const ExtCtx<B>& c, const mpz_class& n) {
    return Ext<B>::from_base(c, ScalarIO<B>::integer(c.base(), n));
  }
  static std::vector<Ext<B>> variables(const ExtCtx<B>& c) { return {Ext<B>::generator(c)}; }
};

namespace detail {

template <class K>
class ScalarParser {
 public:
  ScalarParser(const std::string& s, const typename K::ctx_type& c, const Names& names)
      : s_(s), ctx_(c), names_(names), vars_(ScalarIO<K>::variables(c)) {}

  K parse() {
    K v = top();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("cannot parse scalar \"" + s_ + "\": " + why + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  K top() {
    K num = sum();
    if (accept('|')) {
      K den = sum();
      if (den.is_zero()) fail("zero denominator");
      return num / den;
    }
    return num;
  }
  K sum() {
    K acc = product();
    while (true) {
      if (accept('+'))
        acc = acc + product();
      else if (accept('-'))
        acc = acc - product();
      else
        return acc;
    }
  }
  K product() {
    K acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        K d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }
  K unary() {
    if (accept('-')) return -unary();
    return power_expr();
  }
  K power_expr() {
    K base = primary();
    if (accept('^')) {
      const bool neg = accept('-');
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const long long e = std::stoll(s_.substr(start, pos_ - start));
      if (neg && base.is_zero()) fail("negative power of zero");
      return power_signed(base, neg ? -e : e);
    }
    return base;
  }
  K primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      K v = top();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ScalarIO<K>::integer(ctx_, mpz_class(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size() && i < vars_.size(); ++i)
        if (names_[i] == id) return vars_[i];
      pos_ = start;
      fail("unknown variable '" + id + "'");
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  std::string s_;
  typename K::ctx_type ctx_;
  Names names_;
  std::vector<K> vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses "a/b", "c0+c1*t+...+ck*t^k", "P | Q" and general +,-,*,/,^ expressions.
template <class K>
K parse_scalar(const std::string& s, const typename K::ctx_type& c, const Names& names) {
  return detail::ScalarParser<K>(s, c, names).parse();
}

template <class K>
K parse_scalar(const std::string& s, const typename K::ctx_type& c) {
  if constexpr (is_ratfunc_v<K>)
    return parse_scalar<K>(s, c, default_names(ratfunc_depth<K>::value));
  else if constexpr (std::is_same_v<K, GF> || std::is_same_v<K, Ext<Rational>>)
    return parse_scalar<K>(s, c, Names{c.data->name});
  else
    return parse_scalar<K>(s, c, Names{});
}

/// Canonical text of a scalar, the inverse of parse_scalar.
template <class K>
std::string scalar_str(const K& x) {
  if constexpr (is_ratfunc_v<K>)
    return x.str(default_names(ratfunc_depth<K>::value));
  else
    return x.str();
}

}  // namespace npc
