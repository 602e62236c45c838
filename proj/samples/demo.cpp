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

// A short tour: bounded sets in F_3[t, 1/t], the tree of SL(2, F_2((t))), a
// subdeterminant table, and the distorted centre of the Heisenberg group.

#include <iostream>

#include "npc.hpp"

int main() {
  using namespace npc;
  using F = RatFunc<Fp>;

  const auto ring = build_ring<F>(RingDesc{3, {"t"}, {"t"}, {}});
  const auto fam = build_valuation_family(ring);
  for (std::int64_t m = 0; m >= -2; --m)
    std::cout << "|{r : v(r) >= " << m << "}| = " << enumerate_bounded(ring, fam, m).size() << "\n";

  const FpCtx f2(2);
  const auto nu_t = Valuation<F>::prime(Poly<Fp>::x(f2));
  const auto b = ball(standard_vertex<Fp>(2, nu_t), 3);
  std::cout << "tree ball layers:";
  for (auto s : b.layer_sizes) std::cout << " " << s;
  std::cout << "\n";

  const auto g = std::get<MatGroup<F>>(fixture_group("sl2_f2_laurent"));
  const auto iso = classify_isometry(g.gens[0], nu_t);
  std::cout << "diag(t, 1/t) translation length " << iso.translation_length << "\n";

  const std::vector<Matrix<Rational>> a{Matrix<Rational>::diagonal({Rational(2), Rational(2), Rational(3)})};
  const auto dec = simultaneous_blocks(a);
  std::cout << "theta(diag(2,2,3)) =";
  for (const auto& x : theta(a[0], dec)) std::cout << " " << x.str();
  std::cout << "\n";

  const auto h = std::get<MatGroup<Rational>>(fixture_group("heisenberg"));
  const WordMetric<Rational> wm(h, default_word_cap(2));
  const auto c = eval_word(h, heisenberg_center_word());
  for (std::uint64_t j : {1, 2, 4}) std::cout << "l(c^" << j << ") = " << *wm.length(matrix_power(c, j)) << "\n";
  return 0;
}
