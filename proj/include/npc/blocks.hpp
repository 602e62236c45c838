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

// Simultaneous block decomposition of a commuting family into single-eigenvalue
// blocks, per-block determinants, and the finite-order/unipotent classification.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "npc/error.hpp"
#include "npc/matrix.hpp"
#include "npc/spectrum.hpp"

namespace npc {

template <class B>
using SpectralScalar = typename SpectralField<B>::field_type;

namespace detail {

template <class B>
Matrix<SpectralScalar<B>> lift_matrix(const SpectralField<B>& sf, const Matrix<B>& a) {
  Matrix<SpectralScalar<B>> r(a.rows(), a.cols(), sf.ctx);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = sf.lift(a(i, j));
  return r;
}

template <class E>
Matrix<E> shifted(const Matrix<E>& m, const E& lambda) {
  Matrix<E> r = m;
  for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) = r(i, i) - lambda;
  return r;
}

/// Columns of `basis` extended by standard vectors to a basis of the whole space.
template <class E>
Matrix<E> complete_basis(const Matrix<E>& basis, std::size_t n, const typename E::ctx_type& c) {
  Matrix<E> cur = basis;
  const Matrix<E> id = Matrix<E>::identity(n, c);
  for (std::size_t j = 0; j < n && cur.cols() < n; ++j) {
    Matrix<E> trial = cur.cols() == 0 ? id.column(j) : cur.hconcat(id.column(j));
    if (trial.rank() == trial.cols()) cur = std::move(trial);
  }
  return cur;
}

template <class E>
Matrix<E> vstack(const std::vector<Matrix<E>>& ms) {
  std::size_t rows = 0;
  for (const auto& m : ms) rows += m.rows();
  Matrix<E> r(rows, ms[0].cols(), ms[0].ctx());
  std::size_t at = 0;
  for (const auto& m : ms) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) r(at + i, j) = m(i, j);
    at += m.rows();
  }
  return r;
}

/// Flag basis in which every (commuting, single-eigenvalue) operator is upper triangular.
template <class E>
Matrix<E> common_flag(const std::vector<Matrix<E>>& ops, const std::vector<E>& eig) {
  const std::size_t d = ops[0].rows();
  const auto& c = ops[0].ctx();
  Matrix<E> flag(d, 0, c);
  while (flag.cols() < d) {
    const std::size_t j = flag.cols();
    const Matrix<E> t = complete_basis(flag, d, c);
    const Matrix<E> ti = t.inverse();
    std::vector<Matrix<E>> shifted_quot;
    for (std::size_t g = 0; g < ops.size(); ++g) {
      const Matrix<E> q = (ti * ops[g] * t).block(j, j, d - j, d - j);
      shifted_quot.push_back(shifted(q, eig[g]));
    }
    const Matrix<E> k = vstack(shifted_quot).kernel();
    if (k.cols() == 0) throw DomainError("no common eigenvector: generators do not commute");
    const Matrix<E> y = k.column(0);
    Matrix<E> w(d, 1, c);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t r = 0; r < d - j; ++r) w(i, 0) = w(i, 0) + t(i, j + r) * y(r, 0);
    flag = j == 0 ? w : flag.hconcat(w);
  }
  return flag;
}

}  // namespace detail

template <class B>
struct EigenSpace {
  SpectralScalar<B> eigenvalue;
  Matrix<SpectralScalar<B>> basis;  // columns
};

template <class B>
std::vector<SpectralScalar<B>> distinct_roots(const SpectralField<B>& sf, const Poly<B>& f) {
  std::vector<SpectralScalar<B>> out;
  for (const auto& [r, k] : sf.roots(f)) out.push_back(r);
  return out;
}

template <class B>
SpectralField<B> spectral_field_for(const std::vector<Matrix<B>>& ms, std::uint64_t seed = kDefaultSeed) {
  std::vector<Poly<B>> polys;
  for (const auto& m : ms) polys.push_back(m.charpoly());
  if constexpr (std::is_same_v<B, Fp>)
    return SpectralField<Fp>::build(polys, seed);
  else
    return SpectralField<B>::build(polys);
}

/// Generalized eigenspaces ker (a - lambda)^n over the splitting field.
template <class B>
std::pair<SpectralField<B>, std::vector<EigenSpace<B>>> generalized_eigenspaces(const Matrix<B>& a,
                                                                                  std::uint64_t seed = kDefaultSeed) {
  if (!a.is_square() || a.rows() == 0) throw DomainError("eigenspaces of a non-square matrix");
  auto sf = spectral_field_for<B>({a}, seed);
  const auto ae = detail::lift_matrix(sf, a);
  std::vector<EigenSpace<B>> out;
  for (const auto& [lambda, mult] : sf.roots(a.charpoly())) {
    auto k = matrix_power(detail::shifted(ae, lambda), static_cast<std::uint64_t>(a.rows())).kernel();
    if (k.cols() != static_cast<std::size_t>(mult)) throw DomainError("internal: eigenspace dimension mismatch");
    out.push_back({lambda, std::move(k)});
  }
  return {std::move(sf), std::move(out)};
}

template <class B>
struct BlockDecomp {
  SpectralField<B> sf;
  Matrix<SpectralScalar<B>> basis;  // invertible, columns grouped by block
  std::vector<std::size_t> block_sizes;
  std::vector<std::vector<SpectralScalar<B>>> eigenvalues;  // [block][generator]
  FieldDesc field;

  std::size_t offset(std::size_t b) const {
    std::size_t o = 0;
    for (std::size_t i = 0; i < b; ++i) o += block_sizes[i];
    return o;
  }
};

template <class K>
bool commute(const Matrix<K>& a, const Matrix<K>& b) {
  return a * b == b * a;
}

/// Refines by generalized eigenspaces of each generator in input order, then sorts
/// blocks by eigenvalue tuple and triangularizes each block along a common flag.
template <class B>
BlockDecomp<B> simultaneous_blocks(const std::vector<Matrix<B>>& gens, std::uint64_t seed = kDefaultSeed) {
  using E = SpectralScalar<B>;
  if (gens.empty()) throw DomainError("no generators");
  const std::size_t n = gens[0].rows();
  for (const auto& g : gens)
    if (!g.is_square() || g.rows() != n || n == 0) throw DomainError("generators must be square of equal size");
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commute(gens[i], gens[j]))
        throw DomainError("generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");

  auto sf = spectral_field_for(gens, seed);
  std::vector<Matrix<E>> lifted;
  std::vector<std::vector<E>> candidates;
  for (const auto& g : gens) {
    lifted.push_back(detail::lift_matrix(sf, g));
    candidates.push_back(distinct_roots(sf, g.charpoly()));
  }

  struct Block {
    Matrix<E> basis;
    std::vector<E> eig;
  };
  std::vector<Block> blocks{{Matrix<E>::identity(n, sf.ctx), {}}};
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<Block> next;
    for (const auto& blk : blocks) {
      const std::size_t d = blk.basis.cols();
      // restriction of the generator to the invariant subspace
      const Matrix<E> full = detail::complete_basis(blk.basis, n, sf.ctx);
      const Matrix<E> m = (full.inverse() * lifted[g] * full).block(0, 0, d, d);
      std::size_t covered = 0;
      for (const E& lambda : candidates[g]) {
        const Matrix<E> k = matrix_power(detail::shifted(m, lambda), static_cast<std::uint64_t>(d)).kernel();
        if (k.cols() == 0) continue;
        covered += k.cols();
        auto eig = blk.eig;
        eig.push_back(lambda);
        next.push_back({blk.basis * k, std::move(eig)});
      }
      if (covered != d) throw DomainError("internal: eigenspaces do not span a block");
    }
    blocks = std::move(next);
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    return std::lexicographical_compare(a.eig.begin(), a.eig.end(), b.eig.begin(), b.eig.end());
  });

  BlockDecomp<B> out{sf, Matrix<E>(n, 0, sf.ctx), {}, {}, sf.desc};
  out.field.transcendence_degree = 0;
  for (const auto& blk : blocks) {
    const std::size_t d = blk.basis.cols();
    const Matrix<E> full = detail::complete_basis(blk.basis, n, sf.ctx);
    const Matrix<E> fi = full.inverse();
    std::vector<Matrix<E>> ops;
    for (const auto& l : lifted) ops.push_back((fi * l * full).block(0, 0, d, d));
    const Matrix<E> flag = blk.basis * detail::common_flag(ops, blk.eig);
    out.basis = out.basis.cols() == 0 ? flag : out.basis.hconcat(flag);
    out.block_sizes.push_back(d);
    out.eigenvalues.push_back(blk.eig);
  }
  return out;
}

/// g in the decomposition basis; throws unless block diagonal.
template <class B>
Matrix<SpectralScalar<B>> in_block_basis(const Matrix<B>& g, const BlockDecomp<B>& dec) {
  const auto q = dec.basis.inverse() * detail::lift_matrix(dec.sf, g) * dec.basis;
  std::vector<std::size_t> owner;
  for (std::size_t b = 0; b < dec.block_sizes.size(); ++b)
    for (std::size_t i = 0; i < dec.block_sizes[b]; ++i) owner.push_back(b);
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j)
      if (owner[i] != owner[j] && !q(i, j).is_zero())
        throw DomainError("matrix does not preserve the block decomposition");
  return q;
}

template <class B>
bool preserves_blocks(const Matrix<B>& g, const BlockDecomp<B>& dec) {
  try {
    in_block_basis(g, dec);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

/// Per-block determinants.
template <class B>
std::vector<SpectralScalar<B>> theta(const Matrix<B>& g, const BlockDecomp<B>& dec) {
  const auto q = in_block_basis(g, dec);
  std::vector<SpectralScalar<B>> out;
  for (std::size_t b = 0; b < dec.block_sizes.size(); ++b) {
    const std::size_t o = dec.offset(b), d = dec.block_sizes[b];
    out.push_back(q.block(o, o, d, d).det());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Element classification

namespace detail {

/// Prime factorization by trial division and Pollard-Brent; Unsupported if stuck.
inline void factor_into(mpz_class n, std::vector<std::pair<mpz_class, int>>& out) {
  if (n <= 1) return;
  auto push = [&](const mpz_class& p) {
    for (auto& [q, e] : out)
      if (q == p) {
        ++e;
        return;
      }
    out.emplace_back(p, 1);
  };
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    if (p * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      push(mpz_class(p));
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    push(n);
    return;
  }
  for (unsigned long c = 1; c < 20; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    for (long it = 0; it < 2000000 && d == 1; ++it) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
  throw Unsupported("could not factor the order bound " + n.get_str());
}

}  // namespace detail

inline std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n) {
  std::vector<std::pair<mpz_class, int>> out;
  detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

enum class ElementKind { identity, finite_order, infinite_order_unipotent, virtually_unipotent_infinite, other_infinite };

struct ElementClass {
  ElementKind kind = ElementKind::identity;
  mpz_class order = 1;   // exact order when kind is finite_order
  bool order_exceeds_cap = false;

  bool has_finite_order() const { return kind == ElementKind::identity || kind == ElementKind::finite_order; }
  std::string str() const {
    switch (kind) {
      case ElementKind::identity:
        return "identity";
      case ElementKind::finite_order:
        return order_exceeds_cap ? "finite_order(>cap)" : "finite_order(" + order.get_str() + ")";
      case ElementKind::infinite_order_unipotent:
        return "infinite_order_unipotent";
      case ElementKind::virtually_unipotent_infinite:
        return "virtually_unipotent_infinite";
      case ElementKind::other_infinite:
        return "other_infinite";
    }
    return "?";
  }
};

inline const mpz_class kDefaultOrderCap{1000000000};

namespace detail {

/// Coefficients pushed down to the prime field when they are all constants.
template <class K>
std::optional<Poly<Fp>> constant_poly(const Poly<K>& f) {
  if constexpr (std::is_same_v<K, Fp>) {
    return f;
  } else if constexpr (is_ratfunc_v<K>) {
    std::vector<typename K::base_type> co;
    for (const K& a : f.coeffs()) {
      if (!a.is_constant()) return std::nullopt;
      co.push_back(a.constant_value());
    }
    if (co.empty()) return std::nullopt;
    return constant_poly(Poly<typename K::base_type>(co[0].ctx(), co));
  } else {
    return std::nullopt;
  }
}

template <class K>
mpz_class minimize_order(const Matrix<K>& g, mpz_class n) {
  for (const auto& [p, e] : factor_integer(n)) {
    (void)e;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) && matrix_power(g, mpz_class(n / p)).is_identity()) n /= p;
  }
  return n;
}

template <class K>
bool is_unipotent_charpoly(const Poly<K>& f) {
  const auto& c = f.ctx();
  const Poly<K> x1 = Poly<K>::x(c) - Poly<K>::one(c);
  return f == poly_pow(x1, static_cast<std::uint64_t>(f.degree()));
}

}  // namespace detail

/// identity / finite order / unipotent of infinite order / virtually unipotent / other.
template <class K>
ElementClass classify_element(const Matrix<K>& g, const mpz_class& cap = kDefaultOrderCap,
                              std::uint64_t seed = kDefaultSeed) {
  if (!g.is_square() || g.rows() == 0) throw DomainError("classify needs a square matrix");
  if (!g.is_invertible()) throw DomainError("classify needs an invertible matrix");
  ElementClass out;
  if (g.is_identity()) return out;
  const auto cp = g.charpoly();
  const std::size_t n = g.rows();
  const bool unip = detail::is_unipotent_charpoly(cp);

  if constexpr (std::is_same_v<K, Rational>) {
    for (const auto& a : cp.coeffs())
      if (!a.is_integer()) {
        out.kind = ElementKind::other_infinite;
        return out;
      }
    QPoly rest;
    std::uint64_t m = 1;
    for (const auto& [d, k] : strip_cyclotomic(cp, &rest)) {
      (void)k;
      m = lcm_u64(m, d);
    }
    if (rest.degree() > 0) {
      out.kind = ElementKind::other_infinite;
      return out;
    }
    const auto h = matrix_power(g, static_cast<std::uint64_t>(m));
    if (h.is_identity()) {
      out.kind = ElementKind::finite_order;
      out.order = detail::minimize_order(g, mpz_class(static_cast<unsigned long>(m)));
      out.order_exceeds_cap = out.order > cap;
      return out;
    }
    out.kind = unip ? ElementKind::infinite_order_unipotent : ElementKind::virtually_unipotent_infinite;
    return out;
  } else {
    const auto low = detail::constant_poly(cp);
    if (!low) {
      // an eigenvalue is transcendental over F_p
      out.kind = ElementKind::other_infinite;
      return out;
    }
    const std::uint64_t p = low->ctx().p;
    mpz_class bound = 1;
    std::vector<int> seen;
    for (const auto& f : poly_factor(*low, seed).factors) {
      const int d = f.poly.degree();
      if (f.poly == Poly<Fp>::x(low->ctx()) - Poly<Fp>::one(low->ctx())) continue;
      if (std::find(seen.begin(), seen.end(), d) != seen.end()) continue;
      seen.push_back(d);
      mpz_class q;
      mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
      bound = lcm(bound, mpz_class(q - 1));
    }
    mpz_class pe = 1;
    while (pe < n) pe *= p;
    bound *= pe;
    if (!matrix_power(g, bound).is_identity()) throw DomainError("internal: order bound does not kill the element");
    out.kind = ElementKind::finite_order;
    out.order = detail::minimize_order(g, bound);
    out.order_exceeds_cap = out.order > cap;
    return out;
  }
}

// ---------------------------------------------------------------------------

template <class K>
std::vector<Matrix<K>> words_up_to(const std::vector<Matrix<K>>& gens, std::size_t length) {
  std::vector<Matrix<K>> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  const auto id = Matrix<K>::identity(gens[0].rows(), gens[0].ctx());
  std::unordered_set<Matrix<K>, Hasher<Matrix<K>>> seen{id};
  std::vector<Matrix<K>> all{id}, frontier{id};
  for (std::size_t l = 0; l < length; ++l) {
    std::vector<Matrix<K>> next;
    for (const auto& w : frontier)
      for (const auto& s : letters) {
        auto x = w * s;
        if (seen.insert(x).second) {
          all.push_back(x);
          next.push_back(std::move(x));
        }
      }
    frontier = std::move(next);
  }
  return all;
}

template <class B>
struct TorsionReport {
  std::size_t words = 0;
  std::size_t trivial_theta = 0;
  std::vector<std::pair<Matrix<B>, ElementClass>> kernel_elements;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Words of length <= L in A with trivial theta: checks mu_i^{d_i} = 1 and that
/// the element is torsion or unipotent.
template <class B>
TorsionReport<B> kernel_torsion_check(const std::vector<Matrix<B>>& gens, const BlockDecomp<B>& dec,
                                      std::size_t length = 4) {
  TorsionReport<B> rep;
  const auto words = words_up_to(gens, length);
  rep.words = words.size();
  // char p has no unipotents of infinite order, so the kernel must be torsion outright
  const bool positive_char = dec.field.characteristic != 0;
  for (const auto& w : words) {
    const auto th = theta(w, dec);
    bool trivial = true;
    for (const auto& x : th) trivial = trivial && x.is_one();
    if (!trivial) continue;
    ++rep.trivial_theta;
    const auto q = in_block_basis(w, dec);
    for (std::size_t b = 0; b < dec.block_sizes.size(); ++b) {
      const std::size_t o = dec.offset(b);
      const auto mu = q(o, o);
      if (!power(mu, static_cast<std::uint64_t>(dec.block_sizes[b])).is_one())
        rep.violations.push_back("mu^d != 1 in block " + std::to_string(b) + " of " + w.str());
    }
    const auto cls = classify_element(w);
    const bool allowed = cls.has_finite_order() || cls.kind == ElementKind::infinite_order_unipotent;
    if (!allowed) rep.violations.push_back("kernel element " + w.str() + " classified " + cls.str());
    if (positive_char && !cls.has_finite_order())
      rep.violations.push_back("kernel element " + w.str() + " has infinite order");
    rep.kernel_elements.emplace_back(w, cls);
  }
  return rep;
}

}  // namespace npc
