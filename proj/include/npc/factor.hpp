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
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "npc/error.hpp"
#include "npc/extension.hpp"
#include "npc/fp.hpp"
#include "npc/poly.hpp"

namespace npc {

inline constexpr std::uint64_t kDefaultSeed = 0x6e7063ULL;

template <class K>
struct Factor {
  Poly<K> poly;  // monic irreducible
  int multiplicity;
  bool operator==(const Factor&) const = default;
};

template <class K>
struct Factorization {
  K unit;  // leading coefficient of the input
  std::vector<Factor<K>> factors;

  Poly<K> product() const {
    Poly<K> r = Poly<K>::constant(unit);
    for (const auto& f : factors) r = r * poly_pow(f.poly, static_cast<std::uint64_t>(f.multiplicity));
    return r;
  }
};

namespace detail {

template <class K>
void sort_factors(std::vector<Factor<K>>& fs) {
  std::sort(fs.begin(), fs.end(), [](const Factor<K>& a, const Factor<K>& b) {
    if (a.poly != b.poly) return a.poly < b.poly;
    return a.multiplicity < b.multiplicity;
  });
  // merge equal irreducibles coming from different square-free layers
  std::vector<Factor<K>> out;
  for (auto& f : fs) {
    if (!out.empty() && out.back().poly == f.poly)
      out.back().multiplicity += f.multiplicity;
    else
      out.push_back(std::move(f));
  }
  fs = std::move(out);
}

template <class K>
Poly<K> poly_pth_root(const Poly<K>& f) {
  const std::uint64_t p = characteristic(f.ctx());
  std::vector<K> r;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(pth_root(f.coeffs()[i]));
  return Poly<K>(f.ctx(), std::move(r));
}

}  // namespace detail

/// Square-free decomposition of a monic polynomial over a finite field:
/// pairs (square-free factor, multiplicity) with pairwise coprime factors.
template <class K>
std::vector<std::pair<Poly<K>, int>> squarefree_decomposition(const Poly<K>& f_in) {
  std::vector<std::pair<Poly<K>, int>> out;
  const Poly<K> f = f_in.monic();
  if (f.degree() < 1) return out;
  const int p = static_cast<int>(characteristic(f.ctx()));
  const Poly<K> df = f.derivative();
  if (df.is_zero()) {
    for (auto& [g, m] : squarefree_decomposition(detail::poly_pth_root(f))) out.emplace_back(g, m * p);
    return out;
  }
  Poly<K> c = gcd(f, df);
  Poly<K> w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly<K> y = gcd(w, c);
    Poly<K> z = w / y;
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one()) {
    for (auto& [g, m] : squarefree_decomposition(detail::poly_pth_root(c))) out.emplace_back(g, m * p);
  }
  return out;
}

/// Splits a monic square-free polynomial into (product of all irreducible factors of degree d, d).
template <class K>
std::vector<std::pair<Poly<K>, int>> distinct_degree_factorization(Poly<K> f) {
  std::vector<std::pair<Poly<K>, int>> out;
  const mpz_class q = field_order(f.ctx());
  const Poly<K> x = Poly<K>::x(f.ctx());
  Poly<K> h = x % f;
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, q, f);
    Poly<K> g = gcd(h - x, f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree d.
template <class K, class Rng>
std::vector<Poly<K>> equal_degree_factorization(const Poly<K>& f, int d, Rng& rng) {
  if (f.degree() == d) return {f};
  const auto& c = f.ctx();
  const mpz_class q = field_order(c);
  const std::uint64_t p = characteristic(c);
  const int n = f.degree();
  mpz_class qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
  Poly<K> split;
  while (true) {
    std::vector<K> co;
    for (int i = 0; i < n; ++i) co.push_back(random_element(c, rng));
    Poly<K> a(c, co);
    if (a.degree() < 1) continue;
    Poly<K> b;
    if (p == 2) {
      // trace map a + a^2 + ... + a^(2^(kd-1)) with q^d = 2^(kd)
      const std::size_t bits = mpz_sizeinbase(qd.get_mpz_t(), 2) - 1;
      Poly<K> term = a % f;
      b = term;
      for (std::size_t i = 1; i < bits; ++i) {
        term = (term * term) % f;
        b = b + term;
      }
    } else {
      b = powmod(a, (qd - 1) / 2, f) - Poly<K>::one(c);
    }
    split = gcd(b, f);
    if (split.degree() > 0 && split.degree() < n) break;
  }
  std::vector<Poly<K>> out = equal_degree_factorization(split, d, rng);
  std::vector<Poly<K>> rest = equal_degree_factorization(f / split, d, rng);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

/// Complete factorization over a finite field, factors in canonical order
/// (degree, then coefficients from the top). Randomized splitting is seeded.
template <class K>
Factorization<K> factor_finite(const Poly<K>& f, std::uint64_t seed = kDefaultSeed) {
  if (f.is_zero()) throw DomainError("factorization of the zero polynomial");
  Factorization<K> out{f.lead(), {}};
  std::mt19937_64 rng(seed);
  for (auto& [sq, mult] : squarefree_decomposition(f))
    for (auto& [part, d] : distinct_degree_factorization(sq))
      for (auto& irr : equal_degree_factorization(part, d, rng)) out.factors.push_back({irr.monic(), mult});
  detail::sort_factors(out.factors);
  return out;
}

inline Factorization<Fp> poly_factor(const Poly<Fp>& f, std::uint64_t seed = kDefaultSeed) {
  return factor_finite(f, seed);
}

/// Rabin's test over a finite field.
template <class K>
bool is_irreducible(const Poly<K>& f_in) {
  if (f_in.degree() < 1) return false;
  const Poly<K> f = f_in.monic();
  const int k = f.degree();
  if (k == 1) return true;
  const mpz_class q = field_order(f.ctx());
  const Poly<K> x = Poly<K>::x(f.ctx());
  auto frob_iter = [&](int times) {
    Poly<K> h = x % f;
    for (int i = 0; i < times; ++i) h = powmod(h, q, f);
    return h;
  };
  if (frob_iter(k) != x % f) return false;
  for (int r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime_u64(static_cast<std::uint64_t>(r))) continue;
    if (!gcd(frob_iter(k / r) - x, f).is_one()) return false;
  }
  return true;
}

/// First monic irreducible of degree k over F_p in canonical polynomial order.
inline Poly<Fp> search_canonical_irreducible(std::uint32_t p, int k) {
  const FpCtx c(p);
  std::vector<std::uint32_t> low(static_cast<std::size_t>(k), 0);  // low[i] = coefficient of x^i
  while (true) {
    std::vector<Fp> co;
    for (std::uint32_t v : low) co.emplace_back(c, v);
    co.push_back(Fp::one(c));
    Poly<Fp> f(c, co);
    if (is_irreducible(f)) return f;
    // increment with x^(k-1) as the most significant digit
    std::size_t i = 0;
    while (i < low.size() && ++low[i] == p) low[i++] = 0;
    if (i == low.size()) throw DomainError("no irreducible polynomial found");
  }
}

namespace detail {

struct IrreducibleEntry {
  std::uint32_t p;
  int k;
  std::vector<std::uint32_t> coeffs;  // ascending, monic
};

// Canonical moduli for GF(p^k): the first monic irreducible in canonical order.
// Regenerated and checked against search_canonical_irreducible in the unit tests.
inline const std::vector<IrreducibleEntry>& irreducible_table() {
  static const std::vector<IrreducibleEntry> table = {
#include "npc/irreducible_table.inc"
  };
  return table;
}

}  // namespace detail

/// Fixed modulus used for GF(p^k); table lookup with a deterministic search fallback.
inline Poly<Fp> canonical_irreducible(std::uint32_t p, int k) {
  if (k < 1) throw DomainError("extension degree must be positive");
  const FpCtx c(p);
  for (const auto& e : detail::irreducible_table()) {
    if (e.p != p || e.k != k) continue;
    std::vector<Fp> co;
    for (std::uint32_t v : e.coeffs) co.emplace_back(c, v);
    return Poly<Fp>(c, co);
  }
  return search_canonical_irreducible(p, k);
}

inline ExtCtx<Fp> galois_field(std::uint32_t p, int k) { return ExtCtx<Fp>(canonical_irreducible(p, k), "z"); }

/// Distinct roots of f in the finite field K with multiplicities, sorted.
template <class K>
std::vector<std::pair<K, int>> roots_in(const Poly<K>& f, std::uint64_t seed = kDefaultSeed) {
  std::vector<std::pair<K, int>> out;
  for (const auto& fac : factor_finite(f, seed).factors)
    if (fac.poly.degree() == 1) out.emplace_back(-fac.poly.coeff(0), fac.multiplicity);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

inline Poly<GF> lift_to(const ExtCtx<Fp>& e, const Poly<Fp>& f) {
  std::vector<GF> co;
  for (const Fp& a : f.coeffs()) co.push_back(GF::from_base(e, a));
  return Poly<GF>(e, co);
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

struct SplittingField {
  ExtCtx<Fp> field;
  int degree;                          // k with the field GF(p^k)
  std::vector<std::pair<GF, int>> roots;  // with multiplicity
};

/// Smallest GF(p^k) containing all roots of f, with the roots.
inline SplittingField splitting_field_embed(const Poly<Fp>& f, std::uint64_t seed = kDefaultSeed) {
  if (f.is_zero()) throw DomainError("splitting field of the zero polynomial");
  std::uint64_t k = 1;
  for (const auto& fac : poly_factor(f, seed).factors) k = lcm_u64(k, static_cast<std::uint64_t>(fac.poly.degree()));
  const ExtCtx<Fp> e = galois_field(f.ctx().p, static_cast<int>(k));
  return {e, static_cast<int>(k), roots_in(lift_to(e, f), seed)};
}

}  // namespace npc
