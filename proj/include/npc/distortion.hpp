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

// Word metrics on matrix groups: exact Cayley balls, word length by meeting two
// balls in the middle, translation-length estimates and abelian distortion.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "npc/blocks.hpp"
#include "npc/error.hpp"
#include "npc/field_desc.hpp"
#include "npc/matrix.hpp"
#include "npc/rational.hpp"

namespace npc {

template <class K>
struct MatGroup {
  std::vector<Matrix<K>> gens;
  std::string name;

  std::size_t dim() const { return gens.at(0).rows(); }
  const typename K::ctx_type& ctx() const { return gens.at(0).ctx(); }
  FieldDesc field() const { return field_desc_of<K>(ctx()); }

  /// Generators and inverses interleaved: s0, s0^-1, s1, s1^-1, ...
  std::vector<Matrix<K>> letters() const {
    std::vector<Matrix<K>> out;
    for (const auto& g : gens) {
      out.push_back(g);
      out.push_back(g.inverse());
    }
    return out;
  }

  void validate() const {
    if (gens.empty()) throw DomainError("group has no generators");
    for (const auto& g : gens) {
      if (!g.is_square() || g.rows() != dim()) throw DomainError("generators must be square of one size");
      if (!g.is_invertible()) throw DomainError("generator is not invertible: " + g.str());
    }
  }
};

inline std::int64_t default_word_cap(std::size_t ngens) { return ngens <= 2 ? 10 : 8; }
inline constexpr std::int64_t kDefaultTauN = 16;
inline constexpr std::size_t kDefaultBitLimit = 1 << 16;

/// Letter indices: generator i is 2i, its inverse 2i+1.
using Word = std::vector<std::size_t>;

/// Space-separated generator indices, '-' marks an inverse: "0 1 -0 -1".
inline Word parse_word(const std::string& s, std::size_t ngens) {
  Word w;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    bool inv = false;
    std::string body = tok;
    if (!body.empty() && body[0] == '-') {
      inv = true;
      body = body.substr(1);
    }
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("bad word token '" + tok + "'");
    const std::size_t i = std::stoul(body);
    if (i >= ngens) throw DomainError("generator index " + body + " out of range");
    w.push_back(2 * i + (inv ? 1 : 0));
  }
  return w;
}

inline std::string word_str(const Word& w) {
  std::string s;
  for (std::size_t l : w) {
    if (!s.empty()) s += ' ';
    s += (l % 2 ? "-" : "") + std::to_string(l / 2);
  }
  return s;
}

template <class K>
Matrix<K> eval_word(const MatGroup<K>& g, const Word& w) {
  const auto letters = g.letters();
  Matrix<K> r = Matrix<K>::identity(g.dim(), g.ctx());
  for (std::size_t l : w) r = r * letters.at(l);
  return r;
}

namespace detail {

template <class K>
void watch_size(const Matrix<K>& m, std::size_t limit) {
  const std::size_t s = max_entry_size(m);
  if (s > limit) throw CapExceeded("matrix entry size " + std::to_string(s) + " exceeds the limit " + std::to_string(limit));
}

}  // namespace detail

/// Ball of radius r in the Cayley graph, built by BFS over exact matrices.
template <class K>
class CayleyBall {
 public:
  struct Node {
    Matrix<K> elem;
    Matrix<K> inv;
    std::int64_t length;
    std::size_t parent;  // index of the predecessor, self for the identity
    std::size_t letter;  // last letter of a geodesic word
  };

  CayleyBall(const MatGroup<K>& g, std::int64_t r, std::size_t bit_limit = kDefaultBitLimit) : radius_(r) {
    g.validate();
    if (r < 0) throw DomainError("ball radius must be nonnegative");
    const auto letters = g.letters();
    std::vector<Matrix<K>> letter_inv;
    for (std::size_t i = 0; i < letters.size(); ++i) letter_inv.push_back(letters[i ^ 1]);
    const auto id = Matrix<K>::identity(g.dim(), g.ctx());
    add({id, id, 0, 0, 0});
    layers_.push_back(1);
    std::size_t begin = 0;
    for (std::int64_t d = 0; d < r; ++d) {
      const std::size_t end = nodes_.size();
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t l = 0; l < letters.size(); ++l) {
          Matrix<K> x = nodes_[i].elem * letters[l];
          if (index_.count(x)) continue;
          detail::watch_size(x, bit_limit);
          Matrix<K> xi = letter_inv[l] * nodes_[i].inv;
          add({std::move(x), std::move(xi), d + 1, i, l});
        }
      layers_.push_back(nodes_.size() - end);
      begin = end;
    }
  }

  std::int64_t radius() const { return radius_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::size_t>& layer_sizes() const { return layers_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  std::optional<std::size_t> find(const Matrix<K>& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::int64_t> length(const Matrix<K>& m) const {
    auto i = find(m);
    if (!i) return std::nullopt;
    return nodes_[*i].length;
  }
  Word word(std::size_t i) const {
    Word w;
    while (i != 0) {
      w.push_back(nodes_[i].letter);
      i = nodes_[i].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

 private:
  void add(Node n) {
    index_.emplace(n.elem, nodes_.size());
    nodes_.push_back(std::move(n));
  }

  std::int64_t radius_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> layers_;
  std::unordered_map<Matrix<K>, std::size_t, Hasher<Matrix<K>>> index_;
};

/// Exact word length up to a cap. A geodesic of length L <= cap splits as u v with
/// |u| = floor(L/2), |v| = ceil(L/2); both lie in the ball of radius ceil(cap/2).
template <class K>
class WordMetric {
 public:
  WordMetric(const MatGroup<K>& g, std::int64_t cap, std::size_t bit_limit = kDefaultBitLimit)
      : group_(g), cap_(cap), bit_limit_(bit_limit), ball_(g, (cap + 1) / 2, bit_limit) {
    if (cap < 0) throw DomainError("word length cap must be nonnegative");
  }

  const MatGroup<K>& group() const { return group_; }
  std::int64_t cap() const { return cap_; }
  std::size_t bit_limit() const { return bit_limit_; }
  const CayleyBall<K>& ball() const { return ball_; }

  /// nullopt means the length exceeds the cap.
  std::optional<std::int64_t> length(const Matrix<K>& m) const {
    if (auto l = ball_.length(m)) return *l <= cap_ ? l : std::nullopt;
    std::optional<std::int64_t> best;
    for (const auto& u : ball_.nodes()) {
      if (best && u.length >= *best) continue;
      if (auto r = ball_.length(u.inv * m)) {
        const std::int64_t total = u.length + *r;
        if (!best || total < *best) best = total;
      }
    }
    if (best && *best <= cap_) return best;
    return std::nullopt;
  }

 private:
  MatGroup<K> group_;
  std::int64_t cap_;
  std::size_t bit_limit_;
  CayleyBall<K> ball_;
};

template <class K>
std::optional<std::int64_t> word_length(const MatGroup<K>& g, const Matrix<K>& m, std::int64_t cap) {
  return WordMetric<K>(g, cap).length(m);
}

template <class K>
std::vector<Matrix<K>> powers(const Matrix<K>& g, std::int64_t n, std::size_t bit_limit) {
  std::vector<Matrix<K>> out;
  Matrix<K> cur = Matrix<K>::identity(g.rows(), g.ctx());
  for (std::int64_t i = 1; i <= n; ++i) {
    cur = cur * g;
    detail::watch_size(cur, bit_limit);
    out.push_back(cur);
  }
  return out;
}

template <class K>
struct TauEstimate {
  Matrix<K> element;
  std::vector<std::pair<std::int64_t, std::optional<std::int64_t>>> samples;  // (n, l(g^n))
  Rational tau_hat;
  std::int64_t best_n = 0;
};

/// min over n <= N of l(g^n)/n, an upper bound for the translation length.
template <class K>
TauEstimate<K> estimate_tau(const WordMetric<K>& wm, const Matrix<K>& g, std::int64_t n_max) {
  if (n_max < 1) throw DomainError("N must be at least 1");
  TauEstimate<K> t{g, {}, Rational(0), 0};
  bool any = false;
  const auto pw = powers(g, n_max, wm.bit_limit());
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto l = wm.length(pw[static_cast<std::size_t>(n - 1)]);
    t.samples.emplace_back(n, l);
    if (!l) continue;
    const Rational r(*l, n);
    if (!any || r < t.tau_hat) {
      t.tau_hat = r;
      t.best_n = n;
    }
    any = true;
  }
  if (!any) throw CapExceeded("no power of the element has word length within the cap " + std::to_string(wm.cap()));
  return t;
}

template <class K>
struct ScanResult {
  Rational min_tau_hat;
  Matrix<K> witness;
  Word witness_word;
  std::size_t scanned = 0;
  std::size_t skipped_finite = 0;
  bool found = false;
};

/// Minimal tau estimate over infinite-order elements of the ball of the given radius.
template <class K>
ScanResult<K> uniform_lower_bound_scan(const WordMetric<K>& wm, std::int64_t ball_radius, std::int64_t n_max) {
  const CayleyBall<K> b(wm.group(), ball_radius, wm.bit_limit());
  ScanResult<K> res{Rational(0), Matrix<K>(), {}, 0, 0, false};
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& node = b.nodes()[i];
    ++res.scanned;
    if (classify_element(node.elem).has_finite_order()) {
      ++res.skipped_finite;
      continue;
    }
    const auto t = estimate_tau(wm, node.elem, n_max);
    if (!res.found || t.tau_hat < res.min_tau_hat) {
      res.min_tau_hat = t.tau_hat;
      res.witness = node.elem;
      res.witness_word = b.word(i);
      res.found = true;
    }
  }
  return res;
}

/// Free abelian subgroup given by commuting basis elements.
template <class K>
struct AbelianEmbedding {
  std::vector<Matrix<K>> basis;

  void validate() const {
    if (basis.empty()) throw DomainError("empty abelian basis");
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        if (!commute(basis[i], basis[j]))
          throw DomainError("basis elements " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
  }

  Matrix<K> at(const std::vector<std::int64_t>& n) const {
    Matrix<K> r = Matrix<K>::identity(basis[0].rows(), basis[0].ctx());
    for (std::size_t i = 0; i < basis.size(); ++i) r = r * matrix_power_signed(basis[i], n[i]);
    return r;
  }
};

/// Lattice points of [-b, b]^m in lexicographic order.
inline std::vector<std::vector<std::int64_t>> box_points(std::size_t m, std::int64_t b) {
  std::vector<std::vector<std::int64_t>> pts{{}};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& p : pts)
      for (std::int64_t v = -b; v <= b; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

inline std::int64_t l1_norm(const std::vector<std::int64_t>& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x < 0 ? -x : x;
  return s;
}

template <class K>
struct DistortionRow {
  std::vector<std::int64_t> point;
  std::int64_t l1 = 0;
  std::optional<std::int64_t> word_length;
};

template <class K>
struct DistortionTable {
  std::vector<DistortionRow<K>> rows;
  std::optional<Rational> k;  // min l_S / l1 over computed nonzero points
};

template <class K>
void check_injective_on_box(const AbelianEmbedding<K>& a, const std::vector<std::vector<std::int64_t>>& pts) {
  std::unordered_map<Matrix<K>, std::size_t, Hasher<Matrix<K>>> seen;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!seen.emplace(a.at(pts[i]), i).second) throw DomainError("abelian basis is not free on the sampled box");
}

template <class K>
DistortionTable<K> abelian_distortion(const WordMetric<K>& wm, const AbelianEmbedding<K>& a, std::int64_t box) {
  a.validate();
  const auto pts = box_points(a.basis.size(), box);
  check_injective_on_box(a, pts);
  DistortionTable<K> t;
  for (const auto& p : pts) {
    const std::int64_t l1 = l1_norm(p);
    if (l1 == 0) continue;
    const auto m = a.at(p);
    detail::watch_size(m, wm.bit_limit());
    DistortionRow<K> row{p, l1, wm.length(m)};
    if (row.word_length) {
      const Rational r(*row.word_length, l1);
      if (!t.k || r < *t.k) t.k = r;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct ZNormReport {
  std::size_t checks = 0;
  std::size_t tight = 0;
  std::size_t skipped = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Estimator-level seminorm laws on the box: l(g^n h^n) <= l(g^n) + l(h^n) and
/// l(g^{nm}) <= n l(g^m). A violation means the word metric is wrong.
template <class K>
ZNormReport znorm_check(const WordMetric<K>& wm, const AbelianEmbedding<K>& a, std::int64_t box, std::int64_t n_max) {
  a.validate();
  const auto pts = box_points(a.basis.size(), box);
  check_injective_on_box(a, pts);
  ZNormReport rep;
  std::vector<std::vector<std::optional<std::int64_t>>> len;  // [point][n-1] = l(g^n)
  std::vector<std::vector<Matrix<K>>> pw;
  for (const auto& p : pts) {
    pw.push_back(powers(a.at(p), n_max, wm.bit_limit()));
    std::vector<std::optional<std::int64_t>> ls;
    for (const auto& m : pw.back()) ls.push_back(wm.length(m));
    len.push_back(std::move(ls));
  }
  auto note = [&](bool computable, std::int64_t lhs, std::int64_t rhs, const std::string& what) {
    if (!computable) {
      ++rep.skipped;
      return;
    }
    ++rep.checks;
    if (lhs == rhs) ++rep.tight;
    if (lhs > rhs) rep.violations.push_back(what);
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      for (std::int64_t n = 1; n <= n_max; ++n) {
        const auto& lg = len[i][static_cast<std::size_t>(n - 1)];
        const auto& lh = len[j][static_cast<std::size_t>(n - 1)];
        if (!lg || !lh) {
          ++rep.skipped;
          continue;
        }
        const auto lgh = wm.length(pw[i][static_cast<std::size_t>(n - 1)] * pw[j][static_cast<std::size_t>(n - 1)]);
        note(lgh.has_value(), lgh.value_or(0), *lg + *lh, "subadditivity at n=" + std::to_string(n));
      }
    }
    for (std::int64_t m = 1; m <= n_max; ++m)
      for (std::int64_t n = 2; n * m <= n_max; ++n) {
        const auto& lm = len[i][static_cast<std::size_t>(m - 1)];
        const auto& lnm = len[i][static_cast<std::size_t>(n * m - 1)];
        note(lm && lnm, lnm.value_or(0), n * lm.value_or(0),
             "homogeneity n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
  }
  return rep;
}

}  // namespace npc
