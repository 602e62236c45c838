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

// Vertices of the Bruhat-Tits building of SL(n, k) for a discrete valuation on a
// rational function field, as homothety classes of O-lattices. The rank-one
// case n = 2 is a (q+1)-regular tree and gets balls, distances and isometry
// classification.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "npc/error.hpp"
#include "npc/matrix.hpp"
#include "npc/valuation.hpp"

namespace npc {

template <class F>
struct LatticeClass;

template <class C>
struct LatticeClass<RatFunc<C>> {
  using F = RatFunc<C>;
  Matrix<F> rep;  // canonical columns, original coordinates
  Valuation<F> val;

  std::size_t dim() const { return rep.rows(); }
  bool operator==(const LatticeClass& o) const { return rep == o.rep && val == o.val; }
  bool operator!=(const LatticeClass& o) const { return !(*this == o); }
  bool operator<(const LatticeClass& o) const { return rep < o.rep; }
  std::size_t hash() const { return rep.hash(); }
  std::string str(const Names& names = {}) const { return rep.str(names); }
};

template <class F>
struct LatticeHash {
  std::size_t operator()(const LatticeClass<F>& v) const { return v.hash(); }
};

template <class F>
using ProductPoint = std::vector<LatticeClass<F>>;

namespace detail {

/// t -> 1/t applied to a rational function; an involution.
template <class C>
RatFunc<C> invert_variable(const RatFunc<C>& x) {
  if (x.is_zero()) return x;
  const auto d = static_cast<std::size_t>(std::max(x.num().degree(), x.den().degree()));
  return RatFunc<C>(x.num().reversed(d), x.den().reversed(d));
}

/// Local coordinates in which the valuation is P-adic for a monic irreducible P.
/// mu0 becomes u-adic after u = 1/t.
template <class C>
class LocalFrame {
 public:
  using F = RatFunc<C>;

  explicit LocalFrame(const Valuation<F>& v) : val_(v) {
    if (v.is_extension()) throw Unsupported("lattice operations for extension valuations");
    flip_ = v.is_degree();
    prime_ = flip_ ? Poly<C>::x(v.ctx()) : v.prime_poly();
    pi_ = F(prime_);
  }

  bool flip() const { return flip_; }
  const Poly<C>& prime() const { return prime_; }
  const F& pi() const { return pi_; }

  // valuation in local coordinates
  ValuationValue v(const F& x) const {
    if (x.is_zero()) return ValuationValue::infinity();
    return order(x.num()) - order(x.den());
  }
  std::int64_t order(const Poly<C>& a) const {
    std::int64_t n = 0;
    Poly<C> r = a;
    while (true) {
      auto [q, rem] = r.divmod(prime_);
      if (!rem.is_zero()) return n;
      r = std::move(q);
      ++n;
    }
  }
  ValuationValue floor(const Matrix<F>& a) const {
    ValuationValue best = ValuationValue::infinity();
    for (const auto& x : a.entries()) best = min(best, v(x));
    return best;
  }

  F pi_pow(std::int64_t e) const { return power_signed(pi_, e); }

  Matrix<F> to_local(const Matrix<F>& a) const { return flip_ ? a.map(invert_variable<C>) : a; }
  Matrix<F> to_global(const Matrix<F>& a) const { return to_local(a); }

  /// Canonical representative of x + P^d O: the P-adic expansion truncated below d.
  F reduce_mod(const F& x, std::int64_t d) const {
    if (x.is_zero()) return x;
    const std::int64_t e0 = v(x).value();
    if (e0 >= d) return F::zero(x.ctx());
    const F y = x * pi_pow(-e0);
    const Poly<C> m = poly_pow(prime_, static_cast<std::uint64_t>(d - e0));
    auto [g, s, u] = xgcd(y.den() % m, m);
    (void)u;
    if (!g.is_one()) throw DomainError("internal: denominator not a local unit");
    const Poly<C> r = (y.num() * s) % m;
    return F(r) * pi_pow(e0);
  }

  /// Lower-triangular column form with diagonal P^{d_i}, d_1 = 0, entries below the
  /// diagonal reduced modulo the diagonal power of their row.
  Matrix<F> canonical_local(Matrix<F> a) const {
    const std::size_t n = a.rows();
    if (n == 0 || !a.is_square()) throw DomainError("lattice basis must be a nonempty square matrix");
    std::vector<std::int64_t> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = n;
      ValuationValue bv = ValuationValue::infinity();
      for (std::size_t j = i; j < n; ++j) {
        const ValuationValue w = v(a(i, j));
        if (w < bv) {
          bv = w;
          best = j;
        }
      }
      if (best == n) throw DomainError("lattice basis is singular");
      if (best != i) a.swap_cols(i, best);
      d[i] = bv.value();
      const F scale = pi_pow(d[i]) / a(i, i);
      for (std::size_t r = i; r < n; ++r) a(r, i) = a(r, i) * scale;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (a(i, j).is_zero()) continue;
        const F c = a(i, j) / a(i, i);
        for (std::size_t r = i; r < n; ++r) a(r, j) = a(r, j) - c * a(r, i);
      }
    }
    const std::int64_t shift = d[0];
    if (shift != 0) {
      const F s = pi_pow(-shift);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(i, j) * s;
      for (auto& x : d) x -= shift;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const F red = reduce_mod(a(i, j), d[i]);
        const F q = a(i, j) - red;
        if (q.is_zero()) continue;
        const F c = q / a(i, i);
        for (std::size_t r = i; r < n; ++r) a(r, j) = a(r, j) - c * a(r, i);
        a(i, j) = red;
      }
    }
    return a;
  }

  const Valuation<F>& valuation() const { return val_; }

 private:
  Valuation<F> val_;
  bool flip_ = false;
  Poly<C> prime_;
  F pi_;
};

template <class C>
void require_same_val(const Valuation<RatFunc<C>>& a, const Valuation<RatFunc<C>>& b) {
  if (a != b) throw DomainError("lattice classes for different valuations");
}

}  // namespace detail

template <class C>
LatticeClass<RatFunc<C>> normalize_lattice_class(const Matrix<RatFunc<C>>& columns, const Valuation<RatFunc<C>>& val) {
  const detail::LocalFrame<C> fr(val);
  return {fr.to_global(fr.canonical_local(fr.to_local(columns))), val};
}

template <class C>
LatticeClass<RatFunc<C>> standard_vertex(std::size_t n, const Valuation<RatFunc<C>>& val) {
  return normalize_lattice_class(Matrix<RatFunc<C>>::identity(n, val.ctx()), val);
}

/// L1 subset of L2 for the lattices spanned by the given bases (local coordinates).
template <class C>
bool lattice_contains(const detail::LocalFrame<C>& fr, const Matrix<RatFunc<C>>& outer,
                      const Matrix<RatFunc<C>>& inner) {
  return fr.floor(outer.inverse() * inner) >= ValuationValue(0);
}

/// True iff the classes span a simplex: after rescaling they form a chain
/// pi*L_j < L_0 < L_1 < ... < L_j. Order of the input does not matter.
template <class C>
bool simplex_test(const std::vector<LatticeClass<RatFunc<C>>>& classes) {
  using F = RatFunc<C>;
  if (classes.empty()) return true;
  const std::size_t n = classes[0].dim();
  for (const auto& c : classes) {
    detail::require_same_val(classes[0].val, c.val);
    if (c.dim() != n) throw DomainError("lattice classes of different rank");
  }
  if (classes.size() > n) {
    std::vector<LatticeClass<F>> uniq = classes;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    if (uniq.size() > n) return false;
  }
  const detail::LocalFrame<C> fr(classes[0].val);
  const Matrix<F> base = fr.to_local(classes[0].rep);
  const Matrix<F> base_inv = base.inverse();
  std::vector<Matrix<F>> scaled;
  for (std::size_t i = 1; i < classes.size(); ++i) {
    Matrix<F> b = fr.to_local(classes[i].rep);
    // smallest homothetic copy containing L_0
    const std::int64_t k = fr.floor(b.inverse() * base).value();
    b = b * fr.pi_pow(k);
    // must sit inside pi^{-1} L_0
    if (fr.floor(base_inv * b) < ValuationValue(-1)) return false;
    scaled.push_back(std::move(b));
  }
  for (std::size_t i = 0; i < scaled.size(); ++i)
    for (std::size_t j = i + 1; j < scaled.size(); ++j)
      if (!lattice_contains(fr, scaled[i], scaled[j]) && !lattice_contains(fr, scaled[j], scaled[i])) return false;
  return true;
}

/// g . [L] = [g L]; g must have determinant one.
template <class C>
LatticeClass<RatFunc<C>> act(const Matrix<RatFunc<C>>& g, const LatticeClass<RatFunc<C>>& v) {
  if (!g.is_square() || g.rows() != v.dim()) throw DomainError("matrix dimension does not match the lattice");
  if (!g.det().is_one()) throw DomainError("acting matrix must have determinant 1");
  return normalize_lattice_class(g * v.rep, v.val);
}

/// Graph distance of two vertices of the tree (n = 2): v(det M) - 2 min v(M_ij), M = B^{-1} B'.
template <class C>
std::int64_t tree_distance(const LatticeClass<RatFunc<C>>& a, const LatticeClass<RatFunc<C>>& b) {
  detail::require_same_val(a.val, b.val);
  if (a.dim() != 2 || b.dim() != 2) throw Unsupported("tree distance only for n = 2");
  const detail::LocalFrame<C> fr(a.val);
  const auto m = fr.to_local(a.rep).inverse() * fr.to_local(b.rep);
  return fr.v(m.det()).value() - 2 * fr.floor(m).value();
}

template <class C>
std::int64_t displacement(const Matrix<RatFunc<C>>& g, const LatticeClass<RatFunc<C>>& v) {
  return tree_distance(v, act(g, v));
}

/// Size of the residue field O/(pi).
template <class C>
std::uint64_t residue_field_size(const Valuation<RatFunc<C>>& val) {
  if constexpr (!std::is_same_v<C, Fp>) {
    throw Unsupported("residue field is infinite over a transcendental base");
  } else {
    const detail::LocalFrame<C> fr(val);
    std::uint64_t q = 1;
    for (int i = 0; i < fr.prime().degree(); ++i) q *= val.ctx().p;
    return q;
  }
}

/// The q+1 neighbours of a tree vertex, one per line in L/pi L.
template <class C>
std::vector<LatticeClass<RatFunc<C>>> tree_neighbors(const LatticeClass<RatFunc<C>>& v) {
  using F = RatFunc<C>;
  if (v.dim() != 2) throw Unsupported("neighbour enumeration only for n = 2");
  if constexpr (!std::is_same_v<C, Fp>) {
    throw Unsupported("residue field is infinite over a transcendental base");
  } else {
    const detail::LocalFrame<C> fr(v.val);
    const auto& c = v.val.ctx();
    const Matrix<F> a = fr.to_local(v.rep);
    const std::size_t deg = static_cast<std::size_t>(fr.prime().degree());
    // residues: polynomials of degree < deg P
    std::vector<F> residues;
    const auto elems = all_elements(c);
    std::vector<std::size_t> idx(deg, 0);
    while (true) {
      std::vector<Fp> co;
      for (std::size_t i : idx) co.push_back(elems[i]);
      residues.push_back(F(Poly<Fp>(c, co)));
      std::size_t i = 0;
      while (i < deg && ++idx[i] == elems.size()) idx[i++] = 0;
      if (i == deg) break;
    }
    std::vector<LatticeClass<F>> out;
    out.reserve(residues.size() + 1);
    const F one = F::one(c), zero = F::zero(c);
    for (const F& r : residues) {
      const auto step = Matrix<F>::from_rows(c, {{one, zero}, {r, fr.pi()}});
      out.push_back({fr.to_global(fr.canonical_local(a * step)), v.val});
    }
    const auto step = Matrix<F>::from_rows(c, {{fr.pi(), zero}, {zero, one}});
    out.push_back({fr.to_global(fr.canonical_local(a * step)), v.val});
    return out;
  }
}

template <class F>
struct BuildingBall {
  LatticeClass<F> center;
  std::int64_t radius = 0;
  std::vector<LatticeClass<F>> vertices;  // layer by layer
  std::vector<std::size_t> layer_sizes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (i, j), i < j
};

/// Vertices within distance r of the center, with all edges among them.
template <class C>
BuildingBall<RatFunc<C>> ball(const LatticeClass<RatFunc<C>>& center, std::int64_t r) {
  using F = RatFunc<C>;
  if (r < 0) throw DomainError("ball radius must be nonnegative");
  BuildingBall<F> b{center, r, {center}, {1}, {}};
  std::unordered_map<LatticeClass<F>, std::size_t, LatticeHash<F>> index{{center, 0}};
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::size_t layer_begin = 0;
  for (std::int64_t d = 0; d <= r; ++d) {
    const std::size_t layer_end = b.vertices.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (auto& w : tree_neighbors(b.vertices[i])) {
        auto it = index.find(w);
        if (it == index.end()) {
          if (d == r) continue;
          it = index.emplace(w, b.vertices.size()).first;
          b.vertices.push_back(std::move(w));
        }
        edges.emplace(std::min(i, it->second), std::max(i, it->second));
      }
    }
    if (d < r) b.layer_sizes.push_back(b.vertices.size() - layer_end);
    layer_begin = layer_end;
  }
  b.edges.assign(edges.begin(), edges.end());
  return b;
}

template <class F>
struct IsometryClass {
  bool elliptic = false;
  bool inverts_edge = false;
  std::int64_t translation_length = 0;  // 0 when elliptic
  LatticeClass<F> witness;               // fixed vertex, or a vertex on the axis
  LatticeClass<F> image;                 // g . witness
  std::int64_t radius_used = 0;
};

inline constexpr std::int64_t kDefaultSearchRadius = 6;

/// Searches the ball around the standard vertex for a fixed vertex, an inverted
/// edge, or an axis vertex x with d(x, g^2 x) = 2 d(x, g x) > 0.
template <class C>
IsometryClass<RatFunc<C>> classify_isometry(const Matrix<RatFunc<C>>& g, const Valuation<RatFunc<C>>& val,
                                            std::int64_t search_radius = kDefaultSearchRadius) {
  using F = RatFunc<C>;
  if (g.rows() != 2 || !g.is_square()) throw Unsupported("isometry classification only for SL(2)");
  if (!g.det().is_one()) throw DomainError("matrix must have determinant 1");
  const Matrix<F> g2 = g * g;
  const auto center = standard_vertex<C>(2, val);
  std::vector<LatticeClass<F>> layer{center};
  std::unordered_set<LatticeClass<F>, LatticeHash<F>> seen{center};
  for (std::int64_t d = 0; d <= search_radius; ++d) {
    for (const auto& x : layer) {
      const auto gx = act(g, x);
      if (gx == x) return {true, false, 0, x, gx, d};
      const std::int64_t dx = tree_distance(x, gx);
      if (dx == 1) {
        if (act(g, gx) == x) return {true, true, 0, x, gx, d};
      }
      if (tree_distance(x, act(g2, x)) == 2 * dx) return {false, false, dx, x, gx, d};
    }
    if (d == search_radius) break;
    std::vector<LatticeClass<F>> next;
    for (const auto& x : layer)
      for (auto& w : tree_neighbors(x))
        if (seen.insert(w).second) next.push_back(std::move(w));
    layer = std::move(next);
  }
  throw CapExceeded("isometry classification inconclusive within radius " + std::to_string(search_radius));
}

/// Sum of the lowest entry valuations of h^{-1} and h: every g fixing h^{-1}.[O^n]
/// has all entry valuations at least this.
template <class C>
std::int64_t stabilizer_entry_bound(const Matrix<RatFunc<C>>& h, const Valuation<RatFunc<C>>& val) {
  return matrix_valuation_floor(val, h.inverse()).value() + matrix_valuation_floor(val, h).value();
}

template <class C>
bool fixes_point(const Matrix<RatFunc<C>>& g, const ProductPoint<RatFunc<C>>& p) {
  for (const auto& x : p)
    if (act(g, x) != x) return false;
  return true;
}

/// All g in SL(2, R) fixing every coordinate of the point, where coordinate i is
/// a vertex for fam[i].
template <class C>
std::vector<Matrix<RatFunc<C>>> stabilizer_elements(const RingLevel<C>& ring, const ProductPoint<RatFunc<C>>& point,
                                                    const ValFamily<RatFunc<C>>& fam,
                                                    std::size_t cap = kDefaultElementCap) {
  using F = RatFunc<C>;
  if (point.size() != fam.size()) throw DomainError("product point arity does not match the valuation family");
  if (point.empty()) throw DomainError("empty product point");
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (point[i].val != fam[i]) throw DomainError("product point coordinate " + std::to_string(i) + " has the wrong valuation");
  if (point[0].dim() != 2) throw Unsupported("stabilizer enumeration only for SL(2)");
  std::int64_t m = 0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const std::int64_t b = stabilizer_entry_bound(point[i].rep.inverse(), fam[i]);
    m = i == 0 ? b : std::min(m, b);
  }
  const auto entries = enumerate_bounded(ring, fam, m, cap);
  const long double cube = static_cast<long double>(entries.size()) * entries.size() * entries.size();
  if (cube > static_cast<long double>(cap))
    throw CapExceeded("stabilizer search needs " + std::to_string(static_cast<double>(cube)) +
                      " candidates, above the element cap " + std::to_string(cap));
  std::unordered_set<F, Hasher<F>> in_box(entries.begin(), entries.end());
  const F one = F::one(ring.ctx);
  std::vector<Matrix<F>> out;
  auto consider = [&](const F& a, const F& b, const F& c, const F& d) {
    auto g = Matrix<F>::from_rows(ring.ctx, {{a, b}, {c, d}});
    if (fixes_point(g, point)) out.push_back(std::move(g));
  };
  for (const F& a : entries)
    for (const F& b : entries)
      for (const F& c : entries) {
        if (!a.is_zero()) {
          const F d = (one + b * c) / a;
          if (in_box.count(d)) consider(a, b, c, d);
        } else if (!b.is_zero() && (b * c) == -one) {
          for (const F& d : entries) consider(a, b, c, d);
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

/// Squared Euclidean displacement in the product of trees.
template <class C>
std::int64_t product_displacement_squared(const Matrix<RatFunc<C>>& g, const ProductPoint<RatFunc<C>>& p) {
  std::int64_t s = 0;
  for (const auto& x : p) {
    const std::int64_t d = displacement(g, x);
    s += d * d;
  }
  return s;
}

/// "k" when the squared value is a perfect square, else "sqrt(N)".
inline std::string sqrt_string(std::int64_t sq) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= sq) ++r;
  if (r * r == sq) return std::to_string(r);
  return "sqrt(" + std::to_string(sq) + ")";
}

}  // namespace npc
