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
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "npc/error.hpp"
#include "npc/extension.hpp"
#include "npc/factor.hpp"
#include "npc/field_desc.hpp"
#include "npc/fp.hpp"
#include "npc/poly.hpp"
#include "npc/rational.hpp"

namespace npc {

using QPoly = Poly<Rational>;

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

/// The M-th cyclotomic polynomial over Q.
inline QPoly cyclotomic(std::uint64_t m) {
  static std::mutex mu;
  static std::map<std::uint64_t, QPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  const RationalCtx c;
  QPoly f = QPoly::monomial(Rational::one(c), m) - QPoly::one(c);
  for (std::uint64_t d = 1; d < m; ++d)
    if (m % d == 0) f = f.exact_div(cyclotomic(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, f);
  return f;
}

namespace detail {

inline std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 62)
    throw Unsupported("integer too large for rational root search");
  std::uint64_t v = n.get_ui();
  std::vector<std::uint64_t> ds{1};
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p != 0) continue;
    int e = 0;
    while (v % p == 0) { v /= p; ++e; }
    const std::size_t cur = ds.size();
    std::uint64_t pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
    }
  }
  if (v > 1) {
    const std::size_t cur = ds.size();
    for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * v);
  }
  std::vector<mpz_class> out;
  for (auto d : ds) out.emplace_back(static_cast<unsigned long>(d));
  return out;
}

}  // namespace detail

/// Rational roots of f with multiplicity; `rest` receives the root-free cofactor (monic).
inline std::vector<std::pair<Rational, int>> rational_roots(const QPoly& f_in, QPoly* rest = nullptr) {
  if (f_in.is_zero()) throw DomainError("roots of the zero polynomial");
  QPoly f = f_in.monic();
  std::vector<std::pair<Rational, int>> out;
  const RationalCtx c;
  auto strip = [&](const Rational& r) {
    const QPoly lin = QPoly(c, {-r, Rational::one()});
    int m = 0;
    while (f.degree() > 0 && f.divisible_by(lin)) {
      f = f / lin;
      ++m;
    }
    if (m > 0) out.emplace_back(r, m);
  };
  strip(Rational::zero());
  if (f.degree() > 0) {
    mpz_class den = 1;
    for (const auto& a : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.den().get_mpz_t());
    const mpz_class lead = (f.lead() * Rational(mpq_class(den))).num();
    const mpz_class c0 = (f.coeff(0) * Rational(mpq_class(den))).num();
    for (const auto& a : detail::divisors(c0))
      for (const auto& b : detail::divisors(lead))
        for (int sgn : {1, -1}) {
          if (f.degree() < 1) break;
          const Rational r(mpz_class(sgn * a), b);
          if (f.eval(r).is_zero()) strip(r);
        }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (rest) *rest = f;
  return out;
}

/// Removes cyclotomic factors Phi_M (phi(M) <= deg f) and returns (M, multiplicity) pairs.
inline std::vector<std::pair<std::uint64_t, int>> strip_cyclotomic(const QPoly& f_in, QPoly* rest = nullptr) {
  QPoly f = f_in.monic();
  std::vector<std::pair<std::uint64_t, int>> out;
  const int n = std::max(f.degree(), 0);
  // phi(M) >= sqrt(M/2), so phi(M) <= n forces M <= 2 n^2
  const std::uint64_t bound = 2ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) + 2;
  for (std::uint64_t m = 1; m <= bound && f.degree() > 0; ++m) {
    if (euler_phi(m) > static_cast<std::uint64_t>(f.degree())) continue;
    const QPoly phi = cyclotomic(m);
    int k = 0;
    while (f.degree() >= phi.degree() && f.divisible_by(phi)) {
      f = f / phi;
      ++k;
    }
    if (k > 0) out.emplace_back(m, k);
  }
  if (rest) *rest = f;
  return out;
}

/// Roots of a list of polynomials inside one common computable field.
/// Specialised for F_p (roots in GF(p^k)) and Q (roots in Q(zeta_M)).
template <class B>
struct SpectralField;

template <>
struct SpectralField<Fp> {
  using base_type = Fp;
  using field_type = GF;

  ExtCtx<Fp> ctx;
  FieldDesc desc;
  std::uint64_t seed = kDefaultSeed;

  static SpectralField build(const std::vector<Poly<Fp>>& polys, std::uint64_t seed = kDefaultSeed) {
    if (polys.empty()) throw DomainError("no polynomials to split");
    std::uint64_t k = 1;
    for (const auto& f : polys)
      for (const auto& fac : poly_factor(f, seed).factors)
        k = lcm_u64(k, static_cast<std::uint64_t>(fac.poly.degree()));
    SpectralField s;
    s.ctx = galois_field(polys[0].ctx().p, static_cast<int>(k));
    s.desc.characteristic = polys[0].ctx().p;
    s.desc.extension_degree = static_cast<int>(k);
    s.seed = seed;
    return s;
  }

  GF lift(const Fp& a) const { return GF::from_base(ctx, a); }
  std::vector<std::pair<GF, int>> roots(const Poly<Fp>& f) const { return roots_in(lift_to(ctx, f), seed); }
};

template <>
struct SpectralField<Rational> {
  using base_type = Rational;
  using field_type = Ext<Rational>;

  ExtCtx<Rational> ctx;
  FieldDesc desc;
  std::uint64_t order = 1;  // M, the adjoined root z is a primitive M-th root of unity

  /// Throws Unsupported unless every polynomial is a product of linear and cyclotomic factors.
  static SpectralField build(const std::vector<QPoly>& polys) {
    std::uint64_t m = 1;
    for (const auto& f : polys) {
      QPoly rest;
      rational_roots(f, &rest);
      QPoly rest2;
      for (const auto& [d, k] : strip_cyclotomic(rest, &rest2)) m = lcm_u64(m, d);
      if (rest2.degree() > 0)
        throw Unsupported("characteristic polynomial does not split over Q or a cyclotomic field: " +
                          rest2.str("x"));
    }
    SpectralField s;
    s.order = m;
    // Q(zeta_1) = Q(zeta_2) = Q; keep a degree-one modulus so arithmetic is uniform
    s.ctx = ExtCtx<Rational>(cyclotomic(m), m <= 2 ? "q" : "zeta" + std::to_string(m));
    s.desc.characteristic = 0;
    s.desc.cyclotomic_order = m;
    return s;
  }

  Ext<Rational> lift(const Rational& a) const { return Ext<Rational>::from_base(ctx, a); }

  std::vector<std::pair<Ext<Rational>, int>> roots(const QPoly& f) const {
    std::vector<std::pair<Ext<Rational>, int>> out;
    QPoly rest;
    for (const auto& [r, k] : rational_roots(f, &rest)) out.emplace_back(lift(r), k);
    QPoly rest2;
    const Ext<Rational> z = Ext<Rational>::generator(ctx);
    for (const auto& [d, k] : strip_cyclotomic(rest, &rest2)) {
      if (order % d != 0) throw DomainError("cyclotomic index outside the spectral field");
      for (std::uint64_t j = 1; j <= d; ++j) {
        if (std::gcd(j, d) != 1) continue;
        out.emplace_back(power(z, j * (order / d)), k);
      }
    }
    if (rest2.degree() > 0) throw Unsupported("polynomial does not split in the spectral field");
    // merge equal roots (a rational root may coincide with a root of unity only for +-1, handled above)
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Ext<Rational>, int>> merged;
    for (auto& e : out) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(e);
    }
    return merged;
  }
};

}  // namespace npc
