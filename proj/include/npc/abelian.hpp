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

// Integer matrices: Smith and Hermite normal forms, and splitting a free abelian
// subgroup off as a finite-index image in Z^n.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "npc/error.hpp"

namespace npc {

using IntMatrix = std::vector<std::vector<mpz_class>>;

inline IntMatrix int_zero(std::size_t r, std::size_t c) { return IntMatrix(r, std::vector<mpz_class>(c, 0)); }

inline IntMatrix int_identity(std::size_t n) {
  IntMatrix m = int_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  IntMatrix out = int_zero(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

inline IntMatrix int_transpose(const IntMatrix& a) {
  const std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
  IntMatrix t = int_zero(c, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
  return t;
}

/// U * A * V = D with D diagonal, d_1 | d_2 | ..., d_i >= 0; U, V unimodular.
struct SmithForm {
  IntMatrix d, u, v;
  std::vector<mpz_class> divisors;  // nonzero diagonal entries
};

inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
  SmithForm s{a, int_identity(r), int_identity(c), {}};
  auto& m = s.d;
  auto row_op = [&](std::size_t i, std::size_t j, const mpz_class& f) {  // row_i -= f row_j
    for (std::size_t k = 0; k < c; ++k) m[i][k] -= f * m[j][k];
    for (std::size_t k = 0; k < r; ++k) s.u[i][k] -= f * s.u[j][k];
  };
  auto col_op = [&](std::size_t i, std::size_t j, const mpz_class& f) {  // col_i -= f col_j
    for (std::size_t k = 0; k < r; ++k) m[k][i] -= f * m[k][j];
    for (std::size_t k = 0; k < c; ++k) s.v[k][i] -= f * s.v[k][j];
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(m[i], m[j]);
    std::swap(s.u[i], s.u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
    for (auto& row : s.v) std::swap(row[i], row[j]);
  };
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    while (true) {
      // smallest nonzero entry in the lower-right block becomes the pivot
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (m[i][j] != 0 && (pi == r || abs(m[i][j]) < abs(m[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == r) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        if (q != 0) row_op(i, t, q);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        if (q != 0) col_op(j, t, q);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold a non-multiple into the pivot row
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c && divides; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = 0; k < c; ++k) m[t][k] += m[i][k];
            for (std::size_t k = 0; k < r; ++k) s.u[t][k] += s.u[i][k];
            divides = false;
          }
      if (divides) break;
    }
    if (t < r && t < c && m[t][t] < 0) {
      for (std::size_t k = 0; k < c; ++k) m[t][k] = -m[t][k];
      for (std::size_t k = 0; k < r; ++k) s.u[t][k] = -s.u[t][k];
    }
  }
  for (std::size_t t = 0; t < std::min(r, c); ++t)
    if (m[t][t] != 0) s.divisors.push_back(m[t][t]);
  return s;
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries above a
/// pivot reduced into [0, pivot). Zero rows dropped.
inline IntMatrix hermite_normal_form(IntMatrix m) {
  const std::size_t r = m.size(), c = m.empty() ? 0 : m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    while (true) {
      std::size_t best = r;
      for (std::size_t i = row; i < r; ++i)
        if (m[i][col] != 0 && (best == r || abs(m[i][col]) < abs(m[best][col]))) best = i;
      if (best == r) break;
      std::swap(m[row], m[best]);
      bool done = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (m[i][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
        for (std::size_t k = 0; k < c; ++k) m[i][k] -= q * m[row][k];
        if (m[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[row][col] == 0) continue;
    if (m[row][col] < 0)
      for (auto& x : m[row]) x = -x;
    for (std::size_t i = 0; i < row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
      for (std::size_t k = 0; k < c; ++k) m[i][k] -= q * m[row][k];
    }
    ++row;
  }
  m.resize(row);
  return m;
}

/// C = Z^rank + sum Z/torsion_i; images[i] is the image of the i-th basis element
/// of A, free coordinates first, then one residue per torsion factor.
struct AbelianPresentation {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;
  IntMatrix images;

  void validate() const {
    for (const auto& t : torsion)
      if (t < 2) throw DomainError("torsion orders must be at least 2");
    for (const auto& row : images)
      if (row.size() != rank + torsion.size())
        throw DomainError("image row has " + std::to_string(row.size()) + " entries, expected " +
                          std::to_string(rank + torsion.size()));
  }

  IntMatrix free_part() const {
    IntMatrix f;
    for (const auto& row : images) f.emplace_back(row.begin(), row.begin() + static_cast<long>(rank));
    return f;
  }
};

struct DirectFactorSplit {
  IntMatrix phi;  // n x (rank + #torsion), zero on torsion columns
  mpz_class index;
  std::vector<mpz_class> elementary_divisors;
};

/// A homomorphism phi from C onto Z^n with phi(theta(A)) of finite index, where
/// n = rank of A; the index is the product of the elementary divisors.
inline DirectFactorSplit split_direct_factor(const AbelianPresentation& p, std::size_t n) {
  p.validate();
  if (p.images.size() != n) throw DomainError("presentation lists " + std::to_string(p.images.size()) +
                                              " images for a rank " + std::to_string(n) + " group");
  if (n == 0) return {{}, 1, {}};
  const IntMatrix f = p.free_part();
  const SmithForm s = smith_normal_form(f);
  if (s.divisors.size() < n)
    throw DomainError("images have rank " + std::to_string(s.divisors.size()) + " < " + std::to_string(n) +
                      " in the free part; theta is not injective modulo torsion");
  // U F V = D: the first n coordinates of x V project the image onto diag(d) Z^n
  IntMatrix phi_free = int_zero(n, p.rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p.rank; ++j) phi_free[i][j] = s.v[j][i];
  phi_free = hermite_normal_form(phi_free);
  DirectFactorSplit out;
  out.phi = int_zero(n, p.rank + p.torsion.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p.rank; ++j) out.phi[i][j] = phi_free[i][j];
  out.elementary_divisors = s.divisors;
  out.index = 1;
  for (const auto& d : s.divisors) out.index *= d;
  return out;
}

}  // namespace npc
