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

// Acceptance run: one PASS/FAIL line per criterion with its wall time and limit.
// Exits nonzero when any criterion fails or runs over its limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "golden_runner.hpp"
#include "support.hpp"

using namespace npc;
using namespace npc::testing;

namespace {

using V1 = Valuation<F1>;
using M = Matrix<F1>;
using LC = LatticeClass<F1>;
using QG = MatGroup<Rational>;
using QM = Matrix<Rational>;
using PM = Matrix<Fp>;

// Collects failures; only the first few are printed.
struct Check {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  void operator()(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

V1 nu_t(const FpCtx& c) { return V1::prime(Poly<Fp>::x(c)); }

RingLevel<Fp> ring1(std::uint64_t p, std::vector<std::string> inverted) {
  return build_ring<F1>(RingDesc{p, {"t"}, std::move(inverted), {}});
}

LC random_vertex(const V1& v, Rng& rng) {
  const FpCtx& c = v.ctx();
  while (true) {
    const M a = random_matrix<F1>(2, c, [&] { return random_ratfunc(c, 2, rng); });
    if (a.is_invertible()) return normalize_lattice_class(a, v);
  }
}

std::vector<M> word_ball(const std::string& fixture, std::int64_t r) {
  const auto g = std::get<MatGroup<F1>>(fixture_group(fixture));
  CayleyBall<F1> b(g, r);
  std::vector<M> out;
  for (const auto& n : b.nodes()) out.push_back(n.elem);
  return out;
}

std::int64_t trace_oracle(const M& g, const V1& v) {
  const auto w = v(g(0, 0) + g(1, 1));
  return w >= ValuationValue(0) ? 0 : -2 * w.value();
}

void bounded_sets(Check& ck) {
  struct Case {
    std::uint64_t p;
    std::vector<std::string> primes;
  };
  for (const Case& k : {Case{2, {}}, Case{2, {"t"}}, Case{3, {"t+1", "t"}}}) {
    const FpCtx c(k.p);
    const auto r = ring1(k.p, k.primes);
    const auto fam = build_valuation_family(r);
    for (std::int64_t m = -1; m >= -3; --m) {
      const auto got = enumerate_bounded(r, fam, m);
      const auto want = brute_force_bounded(c, r.inverted, m);
      const std::string tag = "p=" + std::to_string(k.p) + " primes=" + std::to_string(k.primes.size()) +
                              " m=" + std::to_string(m);
      ck(std::set<F1>(got.begin(), got.end()) == want && got.size() == want.size(), "oracle mismatch " + tag);
    }
  }
  ck(enumerate_bounded(ring1(2, {}), build_valuation_family(ring1(2, {})), -1).size() == 4, "F_2[t] count");
  ck(enumerate_bounded(ring1(2, {"t"}), build_valuation_family(ring1(2, {"t"})), -1).size() == 8, "F_2[t,1/t] count");
}

void unipotents(Check& ck) {
  Rng rng(1001);
  int count = 0;
  for (std::uint64_t p : {2, 3, 5})
    for (std::size_t n = 1; n <= 6; ++n)
      for (int i = 0; i < 12; ++i, ++count) {
        const FpCtx c(p);
        const auto g = random_unipotent(c, n, rng);
        std::uint64_t e = 1;
        while (e < n) e *= p;
        ck(matrix_power(g, e).is_identity(), "g^(p^k) != I for " + g.str());
      }
  ck(count >= 200, "fewer than 200 matrices");
}

void building_structure(Check& ck) {
  for (std::uint64_t p : {2, 3}) {
    const FpCtx c(p);
    const V1 v = nu_t(c);
    for (std::int64_t r = 0; r <= 4; ++r) {
      const auto b = ball(standard_vertex<Fp>(2, v), r);
      std::vector<std::size_t> want{1};
      for (std::int64_t d = 1; d <= r; ++d) want.push_back(d == 1 ? p + 1 : want.back() * p);
      ck(b.layer_sizes == want, "layer sizes p=" + std::to_string(p) + " r=" + std::to_string(r));
      ck(is_tree(b.vertices.size(), b.edges), "ball is not a tree");
      const auto dist = bfs_distances(b.vertices.size(), b.edges);
      std::size_t i = 0;
      for (std::int64_t d = 0; d <= r; ++d)
        for (std::size_t k = 0; k < b.layer_sizes[static_cast<std::size_t>(d)]; ++k, ++i)
          ck(dist[i] == d && tree_distance(b.center, b.vertices[i]) == d, "vertex depth");
    }
  }
  Rng rng(1003);
  int pairs = 0;
  for (std::uint64_t p : {2, 3})
    for (int i = 0; i < 250; ++i, ++pairs) {
      const FpCtx c(p);
      const V1 v = nu_t(c);
      const LC x = random_vertex(v, rng);
      const M g = random_sl2(c, rng, 3), h = random_sl2(c, rng, 3);
      ck(act(M::identity(2, c), x) == x, "identity acts trivially");
      ck(act(g * h, x) == act(g, act(h, x)), "compatibility");
      ck(act(g.inverse(), act(g, x)) == x, "inverse");
      ck(tree_distance(act(g, x), act(g, tree_neighbors(x).front())) == 1, "adjacency preserved");
      ck(tree_distance(act(g, x), act(g, act(h, x))) == tree_distance(x, act(h, x)), "isometry");
    }
  ck(pairs == 500, "pair count");
  const FpCtx c(2);
  const auto elems = word_ball("sl2_f2_laurent", 3);
  const auto b = ball(standard_vertex<Fp>(2, nu_t(c)), 3);
  std::size_t preserved = 0;
  for (const M& g : elems)
    for (auto [i, j] : b.edges) {
      const LC gi = act(g, b.vertices[i]), gj = act(g, b.vertices[j]);
      if (!((gi == b.vertices[i] && gj == b.vertices[j]) || (gi == b.vertices[j] && gj == b.vertices[i]))) continue;
      ++preserved;
      ck(gi == b.vertices[i] && gj == b.vertices[j], "edge inverted by " + g.str());
    }
  ck(preserved > 0, "no edge-preserving elements sampled");
}

void properness(Check& ck) {
  const FpCtx c(2);
  const auto ring = build_ring<F1>(RingDesc{2, {"t"}, {"t"}, {}});
  const auto fam = build_valuation_family(ring);
  ProductPoint<F1> pt;
  for (const auto& v : fam) pt.push_back(standard_vertex<Fp>(2, v));
  const auto stab = stabilizer_elements(ring, pt, fam);
  ck(!stab.empty() && stab.size() == 6, "stabilizer size " + std::to_string(stab.size()));
  const std::set<M> set(stab.begin(), stab.end());
  std::int64_t bound = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) bound = std::min(bound, stabilizer_entry_bound(pt[i].rep.inverse(), fam[i]));
  for (const M& g : stab) {
    ck(g.det().is_one() && fixes_point(g, pt), "member does not fix the point");
    ck(set.count(g.inverse()) == 1, "not closed under inverse");
    for (const M& h : stab) ck(set.count(g * h) == 1, "not closed under product");
    for (const auto& v : fam) ck(matrix_valuation_floor(v, g) >= ValuationValue(bound), "entry bound violated");
  }
}

void semisimplicity(Check& ck) {
  const FpCtx c(2);
  const auto elems = word_ball("sl2_f2_laurent", 3);
  for (const V1& v : {nu_t(c), V1::degree(c)}) {
    const auto probe = ball(standard_vertex<Fp>(2, v), 3);
    for (const M& g : elems) {
      const auto iso = classify_isometry(g, v);
      const std::int64_t best = iso.elliptic ? 0 : iso.translation_length;
      ck(best == trace_oracle(g, v), "trace oracle disagrees on " + g.str());
      ck(displacement(g, iso.witness) == best, "witness displacement not attained");
      for (const auto& x : probe.vertices) ck(displacement(g, x) >= best, "smaller displacement found");
    }
  }
}

template <class B>
void expect_sound(Check& ck, const std::vector<Matrix<B>>& gens, const BlockDecomp<B>& dec) {
  const std::size_t n = gens[0].rows();
  std::size_t total = 0;
  for (auto d : dec.block_sizes) total += d;
  ck(total == n && dec.basis.is_invertible(), "blocks do not cover the space");
  if (total != n) return;
  std::vector<std::size_t> owner;
  for (std::size_t b = 0; b < dec.block_sizes.size(); ++b) owner.insert(owner.end(), dec.block_sizes[b], b);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto q = in_block_basis(gens[g], dec);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (owner[i] != owner[j] || i > j) ck(q(i, j).is_zero(), "not block upper triangular");
        if (i == j) ck(q(i, i) == dec.eigenvalues[owner[i]][g], "diagonal is not the block eigenvalue");
      }
  }
}

void commuting_blocks(Check& ck) {
  Rng rng(1006);
  const FpCtx c(5);
  std::uniform_int_distribution<std::size_t> dim(1, 6), cnt(1, 3);
  std::size_t kernel = 0;
  for (int i = 0; i < 200; ++i) {
    auto fam = random_commuting_family(c, dim(rng), cnt(rng) + 1, rng);
    const PM extra = fam.back();
    fam.pop_back();
    const auto dec = simultaneous_blocks(fam);
    expect_sound(ck, fam, dec);
    const auto tg = theta(fam[0], dec), th = theta(extra, dec), tgh = theta(fam[0] * extra, dec);
    auto prod = SpectralScalar<Fp>::one(dec.sf.ctx);
    for (std::size_t b = 0; b < tg.size(); ++b) {
      ck(tgh[b] == tg[b] * th[b], "theta is not multiplicative");
      prod = prod * tg[b];
    }
    ck(prod == dec.sf.lift(fam[0].det()), "theta components do not multiply to det");
    const auto rep = kernel_torsion_check(fam, dec, 4);
    ck(rep.ok(), rep.violations.empty() ? "kernel check" : rep.violations[0]);
    for (const auto& [w, cls] : rep.kernel_elements)
      ck(cls.has_finite_order() && matrix_power(w, cls.order).is_identity(), "kernel element with unverified order");
    kernel += rep.trivial_theta;
  }
  ck(kernel > 0, "no kernel elements sampled");
}

void direct_factor(Check& ck) {
  const auto z = [](long v) { return mpz_class(v); };
  ck(split_direct_factor(AbelianPresentation{1, {}, {{z(2)}}}, 1).index == 2, "index 2");
  ck(split_direct_factor(AbelianPresentation{2, {z(2)}, {{z(0), z(3), z(1)}}}, 1).index == 3, "index 3");
  ck(split_direct_factor(AbelianPresentation{2, {}, {{z(2), z(0)}, {z(0), z(3)}}}, 2).index == 6, "index 6");
  Rng rng(1007);
  std::uniform_int_distribution<int> rk(1, 3), ent(-4, 4), tor(2, 5), ntor(0, 2);
  int checked = 0;
  while (checked < 50) {
    const std::size_t rank = static_cast<std::size_t>(rk(rng));
    std::uniform_int_distribution<std::size_t> nn(1, rank);
    const std::size_t n = nn(rng);
    AbelianPresentation p;
    p.rank = rank;
    for (int k = ntor(rng); k > 0; --k) p.torsion.push_back(tor(rng));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t j = 0; j < rank; ++j) row.push_back(ent(rng));
      for (const auto& t : p.torsion) row.push_back(mpz_class(ent(rng) + 4) % t);
      p.images.push_back(row);
    }
    DirectFactorSplit s;
    try {
      s = split_direct_factor(p, n);
    } catch (const DomainError&) {
      continue;
    }
    if (s.index > 50) continue;
    ck(coset_count_index(int_mul(p.images, int_transpose(s.phi))) == s.index, "coset count disagrees");
    for (const auto& d : smith_normal_form(s.phi).divisors) ck(d == 1, "phi is not onto");
    ++checked;
  }
}

template <class K>
std::map<Matrix<K>, std::int64_t> direct_bfs(const MatGroup<K>& g, std::int64_t r) {
  std::vector<Matrix<K>> letters;
  for (const auto& x : g.gens) {
    letters.push_back(x);
    letters.push_back(x.inverse());
  }
  std::map<Matrix<K>, std::int64_t> dist{{Matrix<K>::identity(g.dim(), g.ctx()), 0}};
  std::vector<Matrix<K>> frontier{Matrix<K>::identity(g.dim(), g.ctx())};
  for (std::int64_t d = 1; d <= r; ++d) {
    std::vector<Matrix<K>> next;
    for (const auto& x : frontier)
      for (const auto& s : letters)
        if (dist.emplace(x * s, d).second) next.push_back(x * s);
    frontier = std::move(next);
  }
  return dist;
}

void estimators(Check& ck) {
  const auto qgroup = [](const char* n) { return std::get<QG>(fixture_group(n)); };
  ck(CayleyBall<Rational>(qgroup("free2"), 3).layer_sizes() == std::vector<std::size_t>{1, 4, 12, 36}, "free2 layers");

  const QG z = qgroup("z2diag");
  const WordMetric<Rational> wz(z, default_word_cap(2));
  for (const auto& g : z.gens)
    for (std::int64_t n = 1; n <= 16; ++n) ck(estimate_tau(wz, g, n).tau_hat == Rational(1), "Z^2 tau_hat != 1");
  for (std::int64_t box = 1; box <= 4; ++box) {
    const auto t = abelian_distortion(wz, AbelianEmbedding<Rational>{z.gens}, box);
    ck(t.k.has_value() && *t.k == Rational(1), "Z^2 k != 1 at box " + std::to_string(box));
  }

  const QG h = qgroup("heisenberg");
  const WordMetric<Rational> wh(h, default_word_cap(3));
  const QM c = eval_word(h, heisenberg_center_word());
  ck(wh.length(c) == std::optional<std::int64_t>(4), "l(c) != 4");
  ck(estimate_tau(wh, c, 4).tau_hat <= Rational(2), "Heisenberg tau_hat > 2");

  const QG bs = qgroup("bs12");
  const WordMetric<Rational> wb(bs, default_word_cap(2));
  ck(estimate_tau(wb, bs.gens[0], 8).tau_hat <= Rational(mpz_class(7), mpz_class(8)), "BS tau_hat > 7/8");

  for (const char* name : {"free2", "heisenberg", "bs12", "z2diag"}) {
    const QG g = qgroup(name);
    const std::int64_t cap = 6;
    const WordMetric<Rational> wm(g, cap);
    // lengths against a plain BFS
    for (const auto& [m, d] : direct_bfs(g, cap)) ck(wm.length(m) == std::optional<std::int64_t>(d), "length != BFS depth");
    const CayleyBall<Rational> b(g, 3);
    for (const auto& x : b.nodes()) {
      ck(wm.length(x.elem) == wm.length(x.inv), std::string("asymmetric length in ") + name);
      for (const auto& y : b.nodes()) {
        const auto l = wm.length(x.elem * y.elem);
        ck(l.has_value() && *l <= x.length + y.length, std::string("subadditivity fails in ") + name);
      }
      if (x.length == 0) continue;
      const auto t = estimate_tau(wm, x.elem, 6);
      ck(t.tau_hat >= Rational(0) && t.tau_hat <= Rational(x.length), "tau_hat outside [0, l]");
    }
  }
}

void determinism(Check& ck) {
  const auto cases = read_cases(NPC_GOLDEN_DIR);
  ck(!cases.empty(), "no golden cases");
  for (const auto& k : cases) {
    const auto a = run_cli(k.args).out, b = run_cli(k.args).out;
    ck(a == b, "runs differ: " + k.name);
    ck(a == read_file(std::string(NPC_GOLDEN_DIR) + "/" + k.name + ".out"), "golden mismatch: " + k.name);
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "bounded sets match brute force", 10, bounded_sets},
      {2, "char-p unipotents have p-power order", 5, unipotents},
      {3, "tree balls, action laws, edge stabilizers", 30, building_structure},
      {4, "finite closed bounded stabilizer", 60, properness},
      {5, "isometry certificates vs trace oracle", 60, semisimplicity},
      {6, "F_5 commuting blocks, theta, kernel torsion", 120, commuting_blocks},
      {7, "direct factor index vs coset counting", 10, direct_factor},
      {8, "word metric and distortion estimators", 120, estimators},
      {9, "golden CLI suite deterministic", 120, determinism},
  };
  bool all_ok = true;
  for (const auto& c : all) {
    Check ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = ck.failures.empty() && s < c.limit_s;
    all_ok = all_ok && ok;
    std::printf("criterion %d %s: %s (%zu checks, %.2f s, limit %.0f s)\n", c.id, c.name, ok ? "PASS" : "FAIL", ck.checks,
                s, c.limit_s);
    for (std::size_t i = 0; i < ck.failures.size() && i < 5; ++i) std::printf("  %s\n", ck.failures[i].c_str());
    if (ck.failures.size() > 5) std::printf("  ... %zu more\n", ck.failures.size() - 5);
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
