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
#include <utility>
#include <vector>

#include "npc/error.hpp"
#include "npc/field.hpp"
#include "npc/poly.hpp"

namespace npc {

/// Dense row-major matrix over a field. Most of the library works with square
/// matrices; rectangular ones appear as subspace bases and kernels.
template <class K>
class Matrix {
 public:
  using value_type = K;
  using ctx_type = typename K::ctx_type;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const ctx_type& c)
      : rows_(rows), cols_(cols), a_(rows * cols, K::zero(c)), ctx_(c) {}

  static Matrix identity(std::size_t n, const ctx_type& c) {
    Matrix m(n, n, c);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K::one(c);
    return m;
  }
  static Matrix from_rows(const ctx_type& c, const std::vector<std::vector<K>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t cl = r == 0 ? 0 : rows[0].size();
    Matrix m(r, cl, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != cl) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < cl; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix diagonal(const std::vector<K>& d) {
    if (d.empty()) throw DomainError("empty diagonal");
    Matrix m(d.size(), d.size(), d[0].ctx());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_; }
  bool is_square() const { return rows_ == cols_; }
  const ctx_type& ctx() const { return ctx_; }
  const std::vector<K>& entries() const { return a_; }

  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix shape mismatch in product");
    Matrix r(rows_, o.cols_, ctx_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& x = (*this)(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const K& y = o(k, j);
          if (!y.is_zero()) r(i, j) = r(i, j) + x * y;
        }
      }
    return r;
  }
  Matrix operator*(const K& s) const {
    Matrix r = *this;
    for (K& x : r.a_) x = x * s;
    return r;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return std::lexicographical_compare(a_.begin(), a_.end(), o.a_.begin(), o.a_.end());
  }

  std::size_t hash() const {
    std::size_t h = hash_combine(rows_, cols_);
    for (const K& x : a_) h = hash_combine(h, x.hash());
    return h;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const K& x) { return x.is_zero(); });
  }
  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, ctx_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix r(nr, nc, ctx_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  /// Side-by-side concatenation [*this | o].
  Matrix hconcat(const Matrix& o) const {
    if (rows_ != o.rows_ && cols_ != 0) throw DomainError("row count mismatch in hconcat");
    if (cols_ == 0) return o;
    Matrix r(rows_, cols_ + o.cols_, ctx_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
  }

  /// Reduced row echelon form and pivot columns.
  std::pair<Matrix, std::vector<std::size_t>> rref() const {
    Matrix m = *this;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t piv = row;
      while (piv < rows_ && m(piv, col).is_zero()) ++piv;
      if (piv == rows_) continue;
      m.swap_rows(piv, row);
      const K inv = m(row, col).inv();
      for (std::size_t j = col; j < cols_; ++j) m(row, j) = m(row, j) * inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row || m(i, col).is_zero()) continue;
        const K f = m(i, col);
        for (std::size_t j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return {std::move(m), std::move(pivots)};
  }

  std::size_t rank() const { return rref().second.size(); }

  /// Basis of the right kernel, one column per basis vector (cols_ x d).
  Matrix kernel() const {
    auto [r, pivots] = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!is_pivot[j]) free.push_back(j);
    Matrix k(cols_, free.size(), ctx_);
    for (std::size_t f = 0; f < free.size(); ++f) {
      k(free[f], f) = K::one(ctx_);
      for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], f) = -r(i, free[f]);
    }
    return k;
  }

  K det() const {
    require_square("determinant");
    Matrix m = *this;
    K d = K::one(ctx_);
    for (std::size_t col = 0; col < cols_; ++col) {
      std::size_t piv = col;
      while (piv < rows_ && m(piv, col).is_zero()) ++piv;
      if (piv == rows_) return K::zero(ctx_);
      if (piv != col) {
        m.swap_rows(piv, col);
        d = -d;
      }
      d = d * m(col, col);
      const K inv = m(col, col).inv();
      for (std::size_t i = col + 1; i < rows_; ++i) {
        if (m(i, col).is_zero()) continue;
        const K f = m(i, col) * inv;
        for (std::size_t j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(col, j);
      }
    }
    return d;
  }

  /// Throws DomainError when singular.
  Matrix inverse() const {
    require_square("inverse");
    const std::size_t n = rows_;
    Matrix aug = hconcat(identity(n, ctx_));
    auto [r, pivots] = aug.rref();
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
    return r.block(0, n, n, n);
  }

  bool is_invertible() const { return is_square() && !det().is_zero(); }

  /// Characteristic polynomial det(xI - A) via reduction to Hessenberg form.
  Poly<K> charpoly() const {
    require_square("characteristic polynomial");
    const std::size_t n = rows_;
    Matrix h = *this;
    for (std::size_t j = 0; j + 2 < n; ++j) {
      std::size_t piv = j + 1;
      while (piv < n && h(piv, j).is_zero()) ++piv;
      if (piv == n) continue;
      if (piv != j + 1) {
        h.swap_rows(piv, j + 1);
        h.swap_cols(piv, j + 1);
      }
      const K inv = h(j + 1, j).inv();
      for (std::size_t k = j + 2; k < n; ++k) {
        if (h(k, j).is_zero()) continue;
        const K u = h(k, j) * inv;
        for (std::size_t c = 0; c < n; ++c) h(k, c) = h(k, c) - u * h(j + 1, c);
        for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = h(r, j + 1) + u * h(r, k);
      }
    }
    std::vector<Poly<K>> p;
    p.reserve(n + 1);
    p.push_back(Poly<K>::one(ctx_));
    const Poly<K> x = Poly<K>::x(ctx_);
    for (std::size_t m = 0; m < n; ++m) {
      Poly<K> next = (x - Poly<K>::constant(h(m, m))) * p[m];
      K prod = K::one(ctx_);
      for (std::size_t i = 1; i <= m; ++i) {
        prod = prod * h(m - i + 1, m - i);
        const K coeff = h(m - i, m) * prod;
        if (!coeff.is_zero()) next = next - p[m - i] * coeff;
      }
      p.push_back(std::move(next));
    }
    return p[n];
  }

  template <class F>
  auto map(F f) const {
    using E = decltype(f(std::declval<const K&>()));
    if (a_.empty()) throw DomainError("map over empty matrix");
    std::vector<E> out;
    out.reserve(a_.size());
    for (const K& x : a_) out.push_back(f(x));
    Matrix<E> r(rows_, cols_, out[0].ctx());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = out[i * cols_ + j];
    return r;
  }

  /// "[[a,b],[c,d]]" with entries printed by their own str().
  std::string str(const Names& names = {}) const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).str(names);
      s += "]";
    }
    return s + "]";
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  }
  void require_square(const char* what) const {
    if (!is_square()) throw DomainError(std::string(what) + " of a non-square matrix");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> a_;
  ctx_type ctx_{};
};

template <class K>
Matrix<K> matrix_power(Matrix<K> base, mpz_class e) {
  Matrix<K> r = Matrix<K>::identity(base.rows(), base.ctx());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

template <class K>
Matrix<K> matrix_power(const Matrix<K>& base, std::uint64_t e) {
  return matrix_power(base, mpz_class(static_cast<unsigned long>(e)));
}

template <class K>
Matrix<K> matrix_power_signed(const Matrix<K>& base, long long e) {
  if (e >= 0) return matrix_power(base, static_cast<std::uint64_t>(e));
  return matrix_power(base.inverse(), static_cast<std::uint64_t>(-e));
}

/// Largest entry size (bits for rationals, degrees for rational functions).
template <class K>
std::size_t max_entry_size(const Matrix<K>& m) {
  std::size_t best = 0;
  if constexpr (requires(const K& x) { x.bit_size(); }) {
    for (const K& x : m.entries()) best = std::max(best, x.bit_size());
  }
  return best;
}

}  // namespace npc
