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
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <type_traits>
#include <unordered_set>
#include <variant>
#include <vector>

#include "npc/error.hpp"
#include "npc/factor.hpp"
#include "npc/field_desc.hpp"
#include "npc/fp.hpp"
#include "npc/matrix.hpp"
#include "npc/parse.hpp"
#include "npc/ratfunc.hpp"

namespace npc {

/// An integer or +infinity (the valuation of zero).
class ValuationValue {
 public:
  constexpr ValuationValue() = default;
  constexpr ValuationValue(std::int64_t v) : v_(v), inf_(false) {}  // NOLINT(google-explicit-constructor)
  static constexpr ValuationValue infinity() {
    ValuationValue r;
    r.inf_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr std::int64_t value() const {
    if (inf_) throw DomainError("valuation is infinite");
    return v_;
  }

  friend constexpr ValuationValue operator+(ValuationValue a, ValuationValue b) {
    if (a.inf_ || b.inf_) return infinity();
    return a.v_ + b.v_;
  }
  friend constexpr ValuationValue operator-(ValuationValue a, ValuationValue b) {
    if (b.inf_) throw DomainError("subtracting an infinite valuation");
    if (a.inf_) return infinity();
    return a.v_ - b.v_;
  }
  friend constexpr bool operator==(ValuationValue a, ValuationValue b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend constexpr bool operator<(ValuationValue a, ValuationValue b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend constexpr bool operator<=(ValuationValue a, ValuationValue b) { return !(b < a); }
  friend constexpr bool operator>=(ValuationValue a, ValuationValue b) { return !(a < b); }
  friend constexpr bool operator>(ValuationValue a, ValuationValue b) { return b < a; }

  std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

 private:
  std::int64_t v_ = 0;
  bool inf_ = true;
};

inline ValuationValue min(ValuationValue a, ValuationValue b) { return b < a ? b : a; }

template <class F>
class Valuation;

/// Discrete valuation on K(t): the t-adic order at a monic irreducible, the degree
/// valuation mu0 at infinity, or the Gauss extension of a valuation on K.
template <class C>
class Valuation<RatFunc<C>> {
 public:
  using field_type = RatFunc<C>;
  using inner_type = std::conditional_t<is_ratfunc_v<C>, Valuation<C>, void>;

  struct PrimePoly {
    Poly<C> prime;
    bool operator==(const PrimePoly&) const = default;
  };
  struct Degree {
    bool operator==(const Degree&) const = default;
  };
  struct Extension {
    std::shared_ptr<const inner_type> inner;
    bool operator==(const Extension& o) const {
      if constexpr (is_ratfunc_v<C>)
        return *inner == *o.inner;
      else
        return true;
    }
  };
  using Kind = std::variant<PrimePoly, Degree, Extension>;

  static Valuation prime(const Poly<C>& p) {
    if (p.degree() < 1 || !p.is_monic()) throw DomainError("prime valuation needs a monic nonconstant polynomial");
    if constexpr (std::is_same_v<C, Fp>) {
      if (!is_irreducible(p)) throw DomainError("prime valuation polynomial is reducible: " + p.str("t"));
    }
    return Valuation(p.ctx(), PrimePoly{p});
  }
  static Valuation degree(const typename C::ctx_type& c) { return Valuation(c, Degree{}); }

  /// Gauss extension: min over coefficient valuations on polynomials.
  template <class I = inner_type>
    requires(!std::is_void_v<I>)
  static Valuation extension(const I& inner) {
    return Valuation(inner.ctx(), Extension{std::make_shared<const I>(inner)});
  }

  const Kind& kind() const { return kind_; }
  const typename C::ctx_type& ctx() const { return ctx_; }
  bool is_prime() const { return std::holds_alternative<PrimePoly>(kind_); }
  bool is_degree() const { return std::holds_alternative<Degree>(kind_); }
  bool is_extension() const { return std::holds_alternative<Extension>(kind_); }
  const Poly<C>& prime_poly() const { return std::get<PrimePoly>(kind_).prime; }

  FieldDesc field() const { return field_desc_of<RatFunc<C>>(ctx_); }

  ValuationValue of_poly(const Poly<C>& a) const {
    if (a.is_zero()) return ValuationValue::infinity();
    if (const auto* pp = std::get_if<PrimePoly>(&kind_)) {
      std::int64_t n = 0;
      Poly<C> rest = a;
      while (true) {
        auto [q, r] = rest.divmod(pp->prime);
        if (!r.is_zero()) break;
        rest = std::move(q);
        ++n;
      }
      return n;
    }
    if (std::holds_alternative<Degree>(kind_)) return -static_cast<std::int64_t>(a.degree());
    if constexpr (is_ratfunc_v<C>) {
      const auto& inner = *std::get<Extension>(kind_).inner;
      ValuationValue best = ValuationValue::infinity();
      for (const C& co : a.coeffs()) best = min(best, inner(co));
      return best;
    } else {
      throw DomainError("extension valuation over a finite base");
    }
  }

  ValuationValue operator()(const RatFunc<C>& x) const {
    if (x.is_zero()) return ValuationValue::infinity();
    return of_poly(x.num()) - of_poly(x.den());
  }

  /// Element with valuation one.
  RatFunc<C> uniformizer() const {
    if (const auto* pp = std::get_if<PrimePoly>(&kind_)) return RatFunc<C>(pp->prime);
    if (std::holds_alternative<Degree>(kind_)) return RatFunc<C>::variable(ctx_).inv();
    if constexpr (is_ratfunc_v<C>) {
      return RatFunc<C>::constant(std::get<Extension>(kind_).inner->uniformizer());
    } else {
      throw DomainError("extension valuation over a finite base");
    }
  }

  std::string str(const Names& names) const {
    constexpr int d = ratfunc_depth<RatFunc<C>>::value;
    const Names use = names.size() >= static_cast<std::size_t>(d) ? names : default_names(d);
    const std::string& var = use[d - 1];
    if (const auto* pp = std::get_if<PrimePoly>(&kind_)) return "nu[" + pp->prime.str(var, use) + "]";
    if (std::holds_alternative<Degree>(kind_)) return "mu0[" + var + "]";
    if constexpr (is_ratfunc_v<C>) {
      return "ext[" + std::get<Extension>(kind_).inner->str(use) + "]";
    } else {
      return "ext[?]";
    }
  }
  std::string str() const { return str(default_names(ratfunc_depth<RatFunc<C>>::value)); }

  bool operator==(const Valuation& o) const { return kind_ == o.kind_; }
  bool operator!=(const Valuation& o) const { return !(*this == o); }

 private:
  Valuation(const typename C::ctx_type& c, Kind k) : kind_(std::move(k)), ctx_(c) {}

  Kind kind_;
  typename C::ctx_type ctx_;
};

template <class F>
using ValFamily = std::vector<Valuation<F>>;

/// Minimum entry valuation; +infinity for the zero matrix.
template <class C>
ValuationValue matrix_valuation_floor(const Valuation<RatFunc<C>>& v, const Matrix<RatFunc<C>>& g) {
  ValuationValue best = ValuationValue::infinity();
  for (const auto& x : g.entries()) best = min(best, v(x));
  return best;
}

/// Exponent e in the ultrametric d(x, y) = exp(-e); e = v(x - y).
template <class C>
ValuationValue ultrametric_exponent(const Valuation<RatFunc<C>>& v, const RatFunc<C>& x, const RatFunc<C>& y) {
  return v(x - y);
}

// ---------------------------------------------------------------------------
// Finitely generated rings F_p[t_1, 1/p..][t_2, 1/p..]...

/// Untyped ring description as read from ring.json.
struct RingDesc {
  std::uint64_t characteristic = 0;
  Names transcendentals;
  std::vector<std::string> inverted;
  std::vector<std::string> extra;
};

template <class C>
struct RingLevel;

/// The finite base ring F_p.
struct BaseRing {
  FpCtx ctx;
};

template <class C>
struct lower_ring {
  using type = BaseRing;
};
template <class B>
struct lower_ring<RatFunc<B>> {
  using type = RingLevel<B>;
};

/// S[t, 1/p_1, ..., 1/p_u] where S is the ring one level down and the p_i are
/// monic irreducible in C[t] with coefficients in S.
template <class C>
struct RingLevel {
  using field_type = RatFunc<C>;
  typename lower_ring<C>::type lower;
  std::vector<Poly<C>> inverted;  // canonical order
  typename C::ctx_type ctx;
};

template <class F>
struct ring_of;
template <class C>
struct ring_of<RatFunc<C>> {
  using type = RingLevel<C>;
};
template <class F>
using Ring = typename ring_of<F>::type;

namespace detail {

template <class C>
RingLevel<C> empty_ring(const FpCtx& c) {
  RingLevel<C> r;
  r.ctx = c;
  if constexpr (is_ratfunc_v<C>)
    r.lower = empty_ring<typename C::base_type>(c);
  else
    r.lower = BaseRing{c};
  return r;
}

inline bool contains_base(const BaseRing&, const Fp&) { return true; }

template <class C>
bool contains_in(const RingLevel<C>& ring, const RatFunc<C>& x);

template <class C>
bool coeff_in_lower(const RingLevel<C>& ring, const C& a) {
  if constexpr (is_ratfunc_v<C>)
    return contains_in(ring.lower, a);
  else
    return true;
}

template <class C>
bool contains_in(const RingLevel<C>& ring, const RatFunc<C>& x) {
  Poly<C> den = x.den();
  for (const auto& p : ring.inverted)
    while (den.degree() >= p.degree() && den.divisible_by(p)) den = den / p;
  if (!den.is_one()) return false;
  for (const C& a : x.num().coeffs())
    if (!coeff_in_lower(ring, a)) return false;
  return true;
}

template <class C>
void require_prime_shape(const Poly<C>& p) {
  if (p.degree() < 1 || !p.is_monic()) throw DomainError("inverted element must be a monic nonconstant polynomial");
  if constexpr (std::is_same_v<C, Fp>) {
    if (!is_irreducible(p)) throw DomainError("inverted polynomial is not irreducible: " + p.str("t"));
  } else {
    bool all_constant = true;
    for (const C& a : p.coeffs()) all_constant = all_constant && a.is_constant();
    if constexpr (std::is_same_v<typename C::base_type, Fp>) {
      if (all_constant) {
        // irreducible over F_p stays irreducible over F_p(s)
        std::vector<Fp> co;
        for (const C& a : p.coeffs()) co.push_back(a.constant_value());
        if (!is_irreducible(Poly<Fp>(co[0].ctx(), co))) throw DomainError("inverted polynomial is not irreducible");
        return;
      }
    }
    if (p.degree() != 1) throw Unsupported("irreducibility test over a transcendental base only for degree 1 or F_p coefficients");
  }
}

template <class C>
void add_prime(RingLevel<C>& ring, const Poly<C>& p, bool strict) {
  require_prime_shape(p);
  if (std::find(ring.inverted.begin(), ring.inverted.end(), p) != ring.inverted.end()) {
    if (strict) throw DomainError("inverted primes must be pairwise distinct");
    return;
  }
  ring.inverted.push_back(p);
}

/// Adds the primes of a polynomial's factorization at this level.
template <class C>
void add_denominator(RingLevel<C>& ring, const Poly<C>& den) {
  if (den.degree() < 1) return;
  if constexpr (std::is_same_v<C, Fp>) {
    for (const auto& f : poly_factor(den).factors) add_prime(ring, f.poly, false);
  } else {
    bool all_constant = true;
    for (const C& a : den.coeffs()) all_constant = all_constant && a.is_constant();
    if (all_constant) {
      if constexpr (std::is_same_v<typename C::base_type, Fp>) {
        std::vector<Fp> co;
        for (const C& a : den.coeffs()) co.push_back(a.constant_value());
        for (const auto& f : poly_factor(Poly<Fp>(co[0].ctx(), co)).factors) {
          std::vector<C> lifted;
          for (const Fp& b : f.poly.coeffs()) lifted.push_back(C::constant(b));
          add_prime(ring, Poly<C>(den.ctx(), lifted), false);
        }
        return;
      }
    }
    if (den.degree() == 1) {
      add_prime(ring, den, false);
      return;
    }
    throw Unsupported("cannot factor denominator with transcendental coefficients: " + den.str("t"));
  }
}

/// Coefficient denominators go one level down.
template <class C>
void add_coefficient_denominators(RingLevel<C>& ring, const Poly<C>& p) {
  if constexpr (is_ratfunc_v<C>) {
    for (const C& a : p.coeffs()) {
      add_coefficient_denominators(ring.lower, a.num());
      add_coefficient_denominators(ring.lower, a.den());
      add_denominator(ring.lower, a.den());
    }
  }
}

template <class C>
void add_inverted(RingLevel<C>& ring, const RatFunc<C>& x) {
  if (x.is_constant()) {
    if constexpr (is_ratfunc_v<C>) {
      add_inverted(ring.lower, x.constant_value());
      return;
    } else {
      throw DomainError("inverted element must be a nonconstant polynomial");
    }
  }
  if (!x.is_polynomial()) throw DomainError("inverted element must be a polynomial");
  add_prime(ring, x.num(), true);
}

template <class C>
void add_extra(RingLevel<C>& ring, const RatFunc<C>& x) {
  add_coefficient_denominators(ring, x.num());
  add_coefficient_denominators(ring, x.den());
  add_denominator(ring, x.den());
}

template <class C>
void finalize_ring(RingLevel<C>& ring) {
  std::sort(ring.inverted.begin(), ring.inverted.end());
  if constexpr (is_ratfunc_v<C>) {
    finalize_ring(ring.lower);
    for (const auto& p : ring.inverted)
      for (const C& a : p.coeffs())
        if (!detail::contains_in(ring.lower, a))
          throw DomainError("inverted prime has coefficients outside the coefficient ring");
  }
}

}  // namespace detail

template <class C>
bool ring_contains(const RingLevel<C>& ring, const RatFunc<C>& x) {
  return detail::contains_in(ring, x);
}

/// Builds the typed ring for field type F = RatFunc<...> (depth must match).
template <class F>
Ring<F> build_ring(const RingDesc& d) {
  constexpr int depth = ratfunc_depth<F>::value;
  if (d.transcendentals.size() != static_cast<std::size_t>(depth))
    throw DomainError("ring has " + std::to_string(d.transcendentals.size()) + " transcendentals, expected " +
                      std::to_string(depth));
  const FpCtx c(d.characteristic);
  Ring<F> ring = detail::empty_ring<typename F::base_type>(c);
  for (const auto& s : d.inverted) detail::add_inverted(ring, parse_scalar<F>(s, c, d.transcendentals));
  for (const auto& s : d.extra) detail::add_extra(ring, parse_scalar<F>(s, c, d.transcendentals));
  detail::finalize_ring(ring);
  return ring;
}

/// Family of valuations whose joint lower bounds cut out finite subsets of the
/// ring: extensions of the previous level's family, then mu0, then one prime
/// valuation per inverted polynomial in canonical order. F_p contributes none.
template <class C>
ValFamily<RatFunc<C>> build_valuation_family(const RingLevel<C>& ring) {
  using V = Valuation<RatFunc<C>>;
  ValFamily<RatFunc<C>> fam;
  if constexpr (is_ratfunc_v<C>) {
    for (const auto& inner : build_valuation_family(ring.lower)) fam.push_back(V::extension(inner));
  }
  fam.push_back(V::degree(ring.ctx));
  for (const auto& p : ring.inverted) fam.push_back(V::prime(p));
  return fam;
}

namespace detail {

inline std::vector<Fp> coefficient_choices(const BaseRing& base, std::int64_t, std::size_t) {
  return all_elements(base.ctx);
}

template <class C>
std::vector<RatFunc<C>> enumerate_level(const RingLevel<C>& ring, const ValFamily<RatFunc<C>>& fam,
                                        std::int64_t m, std::size_t cap);

template <class C>
std::vector<RatFunc<C>> coefficient_choices(const RingLevel<C>& lower, std::int64_t m, std::size_t cap) {
  return enumerate_level(lower, build_valuation_family(lower), m, cap);
}

template <class C>
std::vector<RatFunc<C>> enumerate_level(const RingLevel<C>& ring, const ValFamily<RatFunc<C>>& fam,
                                        std::int64_t m, std::size_t cap) {
  using F = RatFunc<C>;
  const std::size_t u = ring.inverted.size();
  const std::int64_t emax = std::max<std::int64_t>(0, -m);

  std::vector<const Valuation<F>*> ext_vals;
  for (const auto& v : fam)
    if (v.is_extension()) ext_vals.push_back(&v);

  // exponent vectors e_1..e_u in [0, emax]
  std::vector<std::vector<std::int64_t>> exps{{}};
  for (std::size_t k = 0; k < u; ++k) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& e : exps)
      for (std::int64_t i = 0; i <= emax; ++i) {
        auto f = e;
        f.push_back(i);
        next.push_back(std::move(f));
      }
    exps = std::move(next);
  }

  struct Plan {
    Poly<C> den;
    std::int64_t max_degree;
    std::vector<C> coeffs;
    std::vector<std::int64_t> e;
  };
  std::vector<Plan> plans;
  long double estimate = 0;
  for (const auto& e : exps) {
    Poly<C> den = Poly<C>::one(ring.ctx);
    std::int64_t dsum = 0;
    for (std::size_t k = 0; k < u; ++k) {
      den = den * poly_pow(ring.inverted[k], static_cast<std::uint64_t>(e[k]));
      dsum += e[k] * ring.inverted[k].degree();
    }
    const std::int64_t maxdeg = -m + dsum;  // from mu0(a / den) >= m
    if (maxdeg < 0) {
      plans.push_back({den, -1, {}, e});
      estimate += 1;
      continue;
    }
    // extension bound per coefficient: nu_i(s_j) >= m + sum_k e_k nu_i'(p_k)
    std::int64_t mcoef = m;
    bool first = true;
    for (const auto* v : ext_vals) {
      std::int64_t b = m;
      for (std::size_t k = 0; k < u; ++k)
        if (e[k] > 0) b += e[k] * v->of_poly(ring.inverted[k]).value();
      mcoef = first ? b : std::min(mcoef, b);
      first = false;
    }
    std::vector<C> choices = coefficient_choices(ring.lower, mcoef, cap);
    estimate += std::pow(static_cast<long double>(choices.size()), static_cast<long double>(maxdeg + 1));
    if (estimate > static_cast<long double>(cap))
      throw CapExceeded("enumeration needs about " + std::to_string(static_cast<double>(estimate)) +
                        " candidates, above the element cap " + std::to_string(cap));
    plans.push_back({den, maxdeg, std::move(choices), e});
  }

  std::unordered_set<F, Hasher<F>> seen;
  std::vector<F> out;
  auto accept = [&](const F& r) {
    for (const auto& v : fam)
      if (v(r) < ValuationValue(m)) return;
    if (seen.insert(r).second) out.push_back(r);
  };

  for (const auto& plan : plans) {
    if (plan.max_degree < 0) {
      accept(F::zero(ring.ctx));
      continue;
    }
    const std::size_t len = static_cast<std::size_t>(plan.max_degree + 1);
    const std::size_t nc = plan.coeffs.size();
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      std::vector<C> co;
      co.reserve(len);
      for (std::size_t i : idx) co.push_back(plan.coeffs[i]);
      Poly<C> a(ring.ctx, std::move(co));
      // the minimal representative has p_k not dividing a whenever e_k > 0
      bool reduced = true;
      for (std::size_t k = 0; k < u && reduced; ++k)
        if (plan.e[k] > 0 && !a.is_zero() && a.divisible_by(ring.inverted[k])) reduced = false;
      if (reduced && (!a.is_zero() || plan.den.is_one())) accept(F(a, plan.den));
      std::size_t i = 0;
      while (i < len && ++idx[i] == nc) idx[i++] = 0;
      if (i == len) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline constexpr std::size_t kDefaultElementCap = 1000000;

/// All r in the ring with v(r) >= m for every v in the family; sorted canonically.
template <class C>
std::vector<RatFunc<C>> enumerate_bounded(const RingLevel<C>& ring, const ValFamily<RatFunc<C>>& fam,
                                          std::int64_t m, std::size_t cap = kDefaultElementCap) {
  if (fam.empty()) throw DomainError("empty valuation family");
  return detail::enumerate_level(ring, fam, m, cap);
}

/// Closed-form size of the bounded set for a one-variable ring over F_q and m <= 0:
/// q^(1 - m) * prod_k q^(deg p_k * (-m)), by partial fractions.
inline mpz_class bounded_set_size(const RingLevel<Fp>& ring, std::int64_t m) {
  if (m > 0) return 1;
  const std::uint64_t q = ring.ctx.p;
  std::uint64_t exponent = static_cast<std::uint64_t>(1 - m);
  for (const auto& p : ring.inverted) exponent += static_cast<std::uint64_t>(p.degree()) * static_cast<std::uint64_t>(-m);
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, exponent);
  return r;
}

}  // namespace npc
