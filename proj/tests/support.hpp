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

// Seeded generators and brute-force oracles shared by the tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "npc.hpp"

namespace npc::testing {

using Rng = std::mt19937_64;
using F1 = RatFunc<Fp>;

inline Poly<Fp> random_poly(const FpCtx& c, int max_deg, Rng& rng) {
  std::uniform_int_distribution<int> dd(0, max_deg);
  const int d = dd(rng);
  std::vector<Fp> co;
  for (int i = 0; i <= d; ++i) co.push_back(random_element(c, rng));
  return Poly<Fp>(c, co);
}

inline Poly<Fp> random_nonzero_poly(const FpCtx& c, int max_deg, Rng& rng) {
  while (true) {
    auto p = random_poly(c, max_deg, rng);
    if (!p.is_zero()) return p;
  }
}

inline F1 random_ratfunc(const FpCtx& c, int max_deg, Rng& rng) {
  return F1(random_poly(c, max_deg, rng), random_nonzero_poly(c, max_deg, rng));
}

inline F1 random_nonzero_ratfunc(const FpCtx& c, int max_deg, Rng& rng) {
  return F1(random_nonzero_poly(c, max_deg, rng), random_nonzero_poly(c, max_deg, rng));
}

inline Rational random_rational(Rng& rng, int range = 9) {
  std::uniform_int_distribution<int> num(-range, range), den(1, range);
  return Rational(mpz_class(num(rng)), mpz_class(den(rng)));
}

template <class K, class Gen>
Matrix<K> random_matrix(std::size_t n, const typename K::ctx_type& c, Gen&& gen) {
  Matrix<K> m(n, n, c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = gen();
  return m;
}

/// Random element of SL(2, F_p(t)) as a product of elementary matrices and diagonals.
inline Matrix<F1> random_sl2(const FpCtx& c, Rng& rng, int factors = 4, int max_deg = 2) {
  const F1 one = F1::one(c), zero = F1::zero(c);
  Matrix<F1> g = Matrix<F1>::identity(2, c);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int i = 0; i < factors; ++i) {
    const F1 x = random_ratfunc(c, max_deg, rng);
    switch (kind(rng)) {
      case 0:
        g = g * Matrix<F1>::from_rows(c, {{one, x}, {zero, one}});
        break;
      case 1:
        g = g * Matrix<F1>::from_rows(c, {{one, zero}, {x, one}});
        break;
      default: {
        const F1 y = random_nonzero_ratfunc(c, 1, rng);
        g = g * Matrix<F1>::from_rows(c, {{y, zero}, {zero, y.inv()}});
      }
    }
  }
  return g;
}

/// Random element of SL(2, O) for the t-adic valuation: polynomial entries.
inline Matrix<F1> random_sl2_integral(const FpCtx& c, Rng& rng, int factors = 4) {
  const F1 one = F1::one(c), zero = F1::zero(c);
  Matrix<F1> g = Matrix<F1>::identity(2, c);
  for (int i = 0; i < factors; ++i) {
    const F1 x(random_poly(c, 2, rng));
    g = g * (i % 2 ? Matrix<F1>::from_rows(c, {{one, x}, {zero, one}}) : Matrix<F1>::from_rows(c, {{one, zero}, {x, one}}));
  }
  return g;
}

/// det(xI - A) by the Leibniz formula over K[x].
template <class K>
Poly<K> leibniz_charpoly(const Matrix<K>& a) {
  const std::size_t n = a.rows();
  const auto& c = a.ctx();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Poly<K> total = Poly<K>::zero(c);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Poly<K> term = Poly<K>::one(c);
    for (std::size_t i = 0; i < n; ++i) {
      Poly<K> e = Poly<K>::constant(-a(i, perm[i]));
      if (perm[i] == i) e = e + Poly<K>::x(c);
      term = term * e;
    }
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Multiplicity of a monic p in a nonzero polynomial, by coefficient-level long division.
inline int naive_order(std::vector<Fp> a, const std::vector<Fp>& p) {
  int n = 0;
  while (true) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    if (a.size() < p.size()) return n;
    std::vector<Fp> rem = a, quo(a.size() - p.size() + 1, Fp::zero(p[0].ctx()));
    for (std::size_t i = rem.size(); i-- >= p.size();) {
      const Fp q = rem[i];
      quo[i - p.size() + 1] = q;
      for (std::size_t k = 0; k < p.size(); ++k) rem[i - p.size() + 1 + k] = rem[i - p.size() + 1 + k] - q * p[k];
      if (i == p.size() - 1) break;
    }
    for (const auto& x : rem)
      if (!x.is_zero()) return n;
    a = quo;
    ++n;
  }
}

/// Elements x = a / Q of F_q[t, 1/p_1..] with Q = prod p_k^|m|, deg a <= |m| + deg Q,
/// filtered by valuations computed from scratch. Covers the whole bounded set.
inline std::set<F1> brute_force_bounded(const FpCtx& c, const std::vector<Poly<Fp>>& primes, std::int64_t m) {
  const std::int64_t e = m < 0 ? -m : 0;
  Poly<Fp> q = Poly<Fp>::one(c);
  for (const auto& p : primes) q = q * poly_pow(p, static_cast<std::uint64_t>(e));
  const std::int64_t max_deg = e + q.degree();
  std::set<F1> out;
  const auto elems = all_elements(c);
  std::vector<std::size_t> idx(static_cast<std::size_t>(max_deg + 1), 0);
  while (true) {
    std::vector<Fp> co;
    for (auto i : idx) co.push_back(elems[i]);
    const F1 x(Poly<Fp>(c, co), q);
    bool ok = true;
    if (!x.is_zero()) {
      ok = static_cast<std::int64_t>(x.den().degree()) - x.num().degree() >= m;
      for (const auto& p : primes) {
        const int v = naive_order(x.num().coeffs(), p.coeffs()) - naive_order(x.den().coeffs(), p.coeffs());
        ok = ok && v >= m;
      }
    }
    if (ok) out.insert(x);
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == elems.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

/// Graph distances from vertex 0 by BFS over an edge list.
inline std::vector<int> bfs_distances(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                      std::size_t src = 0) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> d(n, -1);
  std::vector<std::size_t> q{src};
  d[src] = 0;
  for (std::size_t h = 0; h < q.size(); ++h)
    for (auto w : adj[q[h]])
      if (d[w] < 0) {
        d[w] = d[q[h]] + 1;
        q.push_back(w);
      }
  return d;
}

inline bool is_tree(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (edges.size() + 1 != n) return false;
  const auto d = bfs_distances(n, edges);
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

/// Random upper unitriangular n x n matrix over F_p.
inline Matrix<Fp> random_unipotent(const FpCtx& c, std::size_t n, Rng& rng) {
  Matrix<Fp> m = Matrix<Fp>::identity(n, c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = random_element(c, rng);
  return m;
}

/// A commuting family: polynomials in one random matrix, each invertible.
inline std::vector<Matrix<Fp>> random_commuting_family(const FpCtx& c, std::size_t n, std::size_t count, Rng& rng) {
  const auto x = random_matrix<Fp>(n, c, [&] { return random_element(c, rng); });
  std::vector<Matrix<Fp>> out;
  while (out.size() < count) {
    const auto p = random_poly(c, static_cast<int>(n), rng);
    Matrix<Fp> m(n, n, c);
    Matrix<Fp> pw = Matrix<Fp>::identity(n, c);
    for (const auto& co : p.coeffs()) {
      m = m + pw * co;
      pw = pw * x;
    }
    if (m.is_invertible()) out.push_back(std::move(m));
  }
  return out;
}

/// Index of the lattice spanned by the rows of an n x n integer matrix, by counting
/// its points in the box [0, D)^n where D = |det| (D Z^n lies in the lattice).
inline mpz_class coset_count_index(const IntMatrix& rows) {
  const std::size_t n = rows.size();
  Matrix<Rational> b(n, n, RationalCtx{});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = Rational(mpq_class(rows[i][j]));
  const Rational det = b.det();
  if (det.is_zero()) return 0;
  const long d = std::abs(det.num().get_si());
  const Matrix<Rational> binv = b.inverse();
  long total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= d;
  long inside = 0;
  std::vector<long> x(n, 0);
  for (long k = 0; k < total; ++k) {
    long r = k;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = r % d;
      r /= d;
    }
    bool integral = true;
    for (std::size_t j = 0; j < n && integral; ++j) {
      Rational y = Rational::zero();
      for (std::size_t i = 0; i < n; ++i) y = y + Rational(x[i]) * binv(i, j);
      integral = y.is_integer();
    }
    if (integral) ++inside;
  }
  return mpz_class(total / inside);
}

}  // namespace npc::testing
