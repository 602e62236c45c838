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

#include <gtest/gtest.h>

#include "support.hpp"

using namespace npc;
using namespace npc::testing;

TEST(Fp, RejectsCompositeModulus) {
  EXPECT_THROW(FpCtx(4), DomainError);
  EXPECT_THROW(FpCtx(1), DomainError);
  EXPECT_NO_THROW(FpCtx(2147483647));
}

TEST(Fp, FieldAxiomsOnRandomTriples) {
  Rng rng(1);
  for (std::uint64_t p : {2, 3, 5, 7, 101}) {
    const FpCtx c(p);
    for (int i = 0; i < 200; ++i) {
      const Fp a = random_element(c, rng), b = random_element(c, rng), d = random_element(c, rng);
      EXPECT_EQ((a + b) * d, a * d + b * d);
      EXPECT_EQ(a - a, Fp::zero(c));
      if (!a.is_zero()) { EXPECT_TRUE((a * a.inv()).is_one()); }
    }
  }
}

TEST(Rational, TextAndErrors) {
  EXPECT_EQ(Rational(mpz_class(6), mpz_class(-4)).str(), "-3/2");
  EXPECT_EQ(Rational(5).str(), "5");
  EXPECT_THROW(Rational(1) / Rational(0), DomainError);
}

TEST(Poly, DivisionIdentityAndGcd) {
  Rng rng(2);
  const FpCtx c(5);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_poly(c, 7, rng);
    const auto d = random_nonzero_poly(c, 4, rng);
    const auto [q, r] = a.divmod(d);
    EXPECT_EQ(q * d + r, a);
    EXPECT_LT(r.degree(), d.degree() == 0 ? 0 : d.degree());
    const auto [g, s, u] = xgcd(a, d);
    EXPECT_EQ(a * s + d * u, g);
    EXPECT_TRUE(g.is_monic());
    EXPECT_TRUE(a.divisible_by(g));
    EXPECT_TRUE(d.divisible_by(g));
  }
}

TEST(RatFunc, CanonicalFormAndFieldLaws) {
  Rng rng(3);
  const FpCtx c(3);
  for (int i = 0; i < 300; ++i) {
    const F1 x = random_ratfunc(c, 4, rng), y = random_ratfunc(c, 4, rng), z = random_nonzero_ratfunc(c, 3, rng);
    for (const F1& e : {x, y, x * y, x + y, x / z}) {
      EXPECT_TRUE(e.den().is_monic());
      EXPECT_TRUE(gcd(e.num(), e.den()).is_one() || e.is_zero());
    }
    EXPECT_EQ((x + y) * z, x * z + y * z);
    EXPECT_EQ(x / z * z, x);
  }
}

TEST(Parse, RoundTripsCanonicalText) {
  Rng rng(4);
  const FpCtx c(7);
  for (int i = 0; i < 200; ++i) {
    const F1 x = random_ratfunc(c, 5, rng);
    EXPECT_EQ(parse_scalar<F1>(scalar_str(x), c), x) << scalar_str(x);
  }
  using F2 = RatFunc<F1>;
  const F2 s = F2::constant(F1::variable(c)), t = F2::variable(c);
  for (const F2& x : {s / (t + s), t * t / s + F2::one(c), (s * s + s * t) / (t + s.inv())})
    EXPECT_EQ(parse_scalar<F2>(scalar_str(x), c), x) << scalar_str(x);
  EXPECT_EQ(scalar_str(parse_scalar<F1>("(t^2-1)/(t+1)", c)), "6+t");
  EXPECT_EQ(scalar_str(parse_scalar<F1>("t^-2", c)), "1 | t^2");
  EXPECT_THROW(parse_scalar<F1>("t+", c), DomainError);
  EXPECT_THROW(parse_scalar<F1>("1/0", c), DomainError);
  EXPECT_EQ(scalar_str(parse_scalar<Rational>("-6/4", RationalCtx{})), "-3/2");
}

namespace {

// Irreducible iff no monic factor of degree <= d/2, by exhaustive trial division.
bool brute_irreducible(const Poly<Fp>& f) {
  const auto& c = f.ctx();
  const auto elems = all_elements(c);
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<Fp> co;
      for (auto i : idx) co.push_back(elems[i]);
      co.push_back(Fp::one(c));
      if (f.divisible_by(Poly<Fp>(c, co))) return false;
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == elems.size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  return f.degree() >= 1;
}

}  // namespace

TEST(Factor, ReconstructsAndFactorsAreIrreducible) {
  Rng rng(5);
  for (std::uint64_t p : {2, 3, 5}) {
    const FpCtx c(p);
    for (int i = 0; i < 120; ++i) {
      const auto f = random_nonzero_poly(c, 8, rng);
      if (f.degree() < 1) continue;
      const auto fac = poly_factor(f);
      EXPECT_EQ(fac.product(), f);
      for (const auto& x : fac.factors) {
        EXPECT_TRUE(x.poly.is_monic());
        EXPECT_TRUE(brute_irreducible(x.poly)) << x.poly.str("t");
        EXPECT_EQ(is_irreducible(x.poly), true);
      }
    }
  }
}

TEST(Factor, IrreducibilityAgreesWithTrialDivision) {
  for (std::uint64_t p : {2, 3}) {
    const FpCtx c(p);
    const auto elems = all_elements(c);
    for (int d = 1; d <= 5; ++d) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
      while (true) {
        std::vector<Fp> co;
        for (auto i : idx) co.push_back(elems[i]);
        co.push_back(Fp::one(c));
        const Poly<Fp> f(c, co);
        EXPECT_EQ(is_irreducible(f), brute_irreducible(f)) << f.str("t");
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == elems.size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
  }
}

TEST(Factor, SquareOverF2) {
  const FpCtx c(2);
  const auto f = parse_scalar<F1>("1+t^2", c).num();
  const auto fac = poly_factor(f);
  ASSERT_EQ(fac.factors.size(), 1u);
  EXPECT_EQ(fac.factors[0].poly.str("t"), "1+t");
  EXPECT_EQ(fac.factors[0].multiplicity, 2);
}

TEST(Factor, ShippedModulusTableMatchesSearch) {
  for (const auto& e : detail::irreducible_table()) {
    const auto found = search_canonical_irreducible(e.p, e.k);
    EXPECT_EQ(canonical_irreducible(e.p, e.k), found) << e.p << "^" << e.k;
    EXPECT_TRUE(is_irreducible(found));
  }
}

TEST(Extension, RootsOfXSquaredPlusXPlusOneInF4) {
  const FpCtx c(2);
  const auto sf = splitting_field_embed(parse_scalar<F1>("t^2+t+1", c).num());
  EXPECT_EQ(sf.degree, 2);
  ASSERT_EQ(sf.roots.size(), 2u);
  for (const auto& [r, k] : sf.roots) {
    EXPECT_EQ(k, 1);
    EXPECT_TRUE((r * r + r + GF::one(sf.field)).is_zero());
  }
  EXPECT_EQ(field_order(sf.field), 4);
}

TEST(Matrix, CharpolyAndDetMatchLeibniz) {
  Rng rng(6);
  const FpCtx c(5);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int i = 0; i < 20; ++i) {
      const auto a = random_matrix<Fp>(n, c, [&] { return random_element(c, rng); });
      const auto cp = leibniz_charpoly(a);
      EXPECT_EQ(a.charpoly(), cp);
      const Fp sign = n % 2 ? -Fp::one(c) : Fp::one(c);
      EXPECT_EQ(a.det(), cp.coeff(0) * sign);
    }
  for (std::size_t n = 1; n <= 4; ++n)
    for (int i = 0; i < 10; ++i) {
      const auto a = random_matrix<Rational>(n, RationalCtx{}, [&] { return random_rational(rng); });
      EXPECT_EQ(a.charpoly(), leibniz_charpoly(a));
    }
}

TEST(Matrix, InverseKernelRank) {
  Rng rng(7);
  const FpCtx c(3);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_matrix<Fp>(4, c, [&] { return random_element(c, rng); });
    const auto k = a.kernel();
    EXPECT_EQ(k.cols() + a.rank(), 4u);
    if (k.cols() > 0) { EXPECT_TRUE((a * k).is_zero()); }
    if (a.is_invertible())
      EXPECT_TRUE((a * a.inverse()).is_identity());
    else
      EXPECT_THROW(a.inverse(), DomainError);
  }
}

TEST(Cyclotomic, DegreesAndProductFormula) {
  for (std::uint64_t n = 1; n <= 30; ++n) {
    EXPECT_EQ(static_cast<std::uint64_t>(cyclotomic(n).degree()), euler_phi(n));
    QPoly prod = QPoly::one(RationalCtx{});
    for (std::uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic(d);
    EXPECT_EQ(prod, QPoly::monomial(Rational(1), n) - QPoly::one(RationalCtx{}));
  }
}

TEST(Spectrum, CyclotomicRootsOverQ) {
  const RationalCtx q;
  const QPoly f = QPoly(q, {Rational(1), Rational(1), Rational(1)});
  const auto sf = SpectralField<Rational>::build({f});
  EXPECT_EQ(sf.order, 3u);
  const auto roots = sf.roots(f);
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& [r, k] : roots) EXPECT_TRUE(power(r, std::uint64_t{3}).is_one());
  const QPoly g = QPoly(q, {Rational(-2), Rational(0), Rational(1)});
  EXPECT_THROW(SpectralField<Rational>::build({g}), Unsupported);
}

TEST(RatFunc, DocumentedExamples) {
  const FpCtx c2(2), c5(5);
  const F1 t = F1::variable(c5), one = F1::one(c5);
  EXPECT_EQ(t / (t + one) * (t + one), t);
  EXPECT_TRUE((parse_scalar<F1>("t+1", c2) + parse_scalar<F1>("t+1", c2)).is_zero());
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const F1 x = random_ratfunc(c5, 4, rng);
    EXPECT_EQ(x + F1::zero(c5), x);
  }
  EXPECT_THROW(F1::zero(c5).inv(), DomainError);
}

TEST(RatFunc, EqualityIsStructural) {
  Rng rng(9);
  const FpCtx c(3);
  for (int i = 0; i < 200; ++i) {
    const F1 x = random_ratfunc(c, 3, rng), y = random_ratfunc(c, 3, rng);
    // x = y as field elements iff x - y = 0 iff the canonical forms coincide
    EXPECT_EQ((x - y).is_zero(), x == y);
    const auto k = random_nonzero_poly(c, 2, rng);
    EXPECT_EQ(F1(x.num() * k, x.den() * k), x);
  }
}

TEST(Factor, DocumentedExamples) {
  const FpCtx c2(2), c3(3);
  const auto f = poly_factor(parse_scalar<F1>("t^2+t+1", c2).num());
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].poly.str("t"), "1+t+t^2");
  const auto g = poly_factor(parse_scalar<F1>("t^2-1", c3).num());
  ASSERT_EQ(g.factors.size(), 2u);
  EXPECT_EQ(g.factors[0].poly.str("t"), "1+t");
  EXPECT_EQ(g.factors[1].poly.str("t"), "2+t");
  EXPECT_THROW(poly_factor(Poly<Fp>::zero(c3)), DomainError);
}

TEST(Factor, RoundTripFiveHundred) {
  Rng rng(10);
  const FpCtx cs[] = {FpCtx(2), FpCtx(3), FpCtx(5)};
  for (int i = 0; i < 500; ++i) {
    const FpCtx& c = cs[i % 3];
    const auto f = random_nonzero_poly(c, 8, rng);
    const auto fac = poly_factor(f);
    EXPECT_EQ(fac.product(), f);
    for (std::size_t k = 1; k < fac.factors.size(); ++k) EXPECT_LT(fac.factors[k - 1].poly, fac.factors[k].poly);
  }
}

TEST(Matrix, CharpolyExamples) {
  const RationalCtx q;
  const Rational o(1), z(0);
  const auto x_minus_1_sq = QPoly(q, {Rational(1), Rational(-2), Rational(1)});
  EXPECT_EQ(Matrix<Rational>::identity(2, q).charpoly(), x_minus_1_sq);
  EXPECT_EQ(Matrix<Rational>::from_rows(q, {{o, o}, {z, o}}).charpoly(), x_minus_1_sq);
  EXPECT_EQ(Matrix<Rational>::from_rows(q, {{z, -o}, {o, z}}).charpoly(), QPoly(q, {o, z, o}));
}

TEST(Matrix, ConjugationInvarianceAndDetMultiplicativity) {
  Rng rng(11);
  const FpCtx c(7);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_matrix<Fp>(4, c, [&] { return random_element(c, rng); });
    const auto h = random_matrix<Fp>(4, c, [&] { return random_element(c, rng); });
    EXPECT_EQ((g * h).det(), g.det() * h.det());
    if (h.is_invertible()) { EXPECT_EQ((h * g * h.inverse()).charpoly(), g.charpoly()); }
  }
}

TEST(Extension, SplittingExamples) {
  const FpCtx c2(2), c3(3);
  const auto a = splitting_field_embed(parse_scalar<F1>("(t+1)^2", c2).num());
  EXPECT_EQ(a.degree, 1);
  ASSERT_EQ(a.roots.size(), 1u);
  EXPECT_TRUE(a.roots[0].first.is_one());
  EXPECT_EQ(a.roots[0].second, 2);
  const auto b = splitting_field_embed(parse_scalar<F1>("t^3-t", c3).num());
  EXPECT_EQ(b.degree, 1);
  ASSERT_EQ(b.roots.size(), 3u);
  // roots multiply out to f inside the splitting field
  const auto f = parse_scalar<F1>("t^2+t+1", c2).num();
  const auto s = splitting_field_embed(f);
  Poly<GF> prod = Poly<GF>::one(s.field);
  for (const auto& [r, k] : s.roots)
    for (int j = 0; j < k; ++j) prod = prod * Poly<GF>(s.field, {-r, GF::one(s.field)});
  EXPECT_EQ(prod, lift_to(s.field, f));
}
