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

// npc: command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "npc.hpp"

namespace {

using namespace npc;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::string format;
  // valuate / enumerate
  std::string ring;
  long long m = 0;
  bool list = false;
  bool count = false;
  std::size_t element_cap = kDefaultElementCap;
  std::vector<std::string> values;
  // building
  std::uint64_t characteristic = 2;
  std::string val = "t";
  long long radius = -1;
  std::string dot;
  // groups
  std::string group;
  std::string word;
  std::string matrix;
  std::string presentation;
  long long n = -1;
  std::string basis;
  long long n_max = kDefaultTauN;
  long long cap = -1;
  long long box = 4;
  bool znorm = false;
  std::size_t bit_limit = kDefaultBitLimit;
  std::string order_cap = "1000000000";
};

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string rational_text(const Rational& r) { return r.str(); }

// ---- valuations -----------------------------------------------------------

template <class F>
void run_valuate(const Options& o, const RingDesc& d) {
  const auto ring = build_ring<F>(d);
  const auto fam = build_valuation_family(ring);
  const auto elems = enumerate_bounded(ring, fam, o.m, o.element_cap);
  if (o.count) {
    std::cout << elems.size() << "\n";
    return;
  }
  Json arr = Json::array();
  for (const auto& x : elems) arr.push_back(x.str(d.transcendentals));
  print_json(arr);
}

template <class F>
void run_enumerate(const Options& o, const RingDesc& d) {
  const auto ring = build_ring<F>(d);
  const auto fam = build_valuation_family(ring);
  const FpCtx c(d.characteristic);
  Json out;
  out["field"] = field_desc_of<F>(c).str();
  Json vals = Json::array();
  for (const auto& v : fam) vals.push_back(v.str(d.transcendentals));
  out["family"] = vals;
  if (!o.values.empty()) {
    Json table = Json::array();
    for (const auto& s : o.values) {
      const F x = parse_scalar<F>(s, c, d.transcendentals);
      Json row;
      row["element"] = x.str(d.transcendentals);
      Json vs = Json::array();
      for (const auto& v : fam) vs.push_back(v(x).str());
      row["valuations"] = vs;
      row["in_ring"] = ring_contains(ring, x);
      table.push_back(row);
    }
    out["values"] = table;
  }
  print_json(out);
}

template <class Fn>
void with_ring_depth(const RingDesc& d, Fn&& fn) {
  switch (d.transcendentals.size()) {
    case 1:
      return fn(RatFunc<Fp>{});
    case 2:
      return fn(RatFunc<RatFunc<Fp>>{});
    case 3:
      return fn(RatFunc<RatFunc<RatFunc<Fp>>>{});
    default:
      throw Unsupported("rings with more than three transcendentals");
  }
}

// ---- building -------------------------------------------------------------

using F1 = RatFunc<Fp>;

Valuation<F1> parse_valuation(const std::string& s, const FpCtx& c, const Names& names) {
  if (s == "mu0") return Valuation<F1>::degree(c);
  const F1 p = parse_scalar<F1>(s, c, names.empty() ? default_names(1) : names);
  if (!p.is_polynomial()) throw DomainError("valuation must be 'mu0' or a monic irreducible polynomial");
  return Valuation<F1>::prime(p.num());
}

const Names& names_or_default(const Names& n) {
  static const Names t = default_names(1);
  return n.empty() ? t : n;
}

void run_building_ball(const Options& o) {
  const FpCtx c(o.characteristic);
  const auto v = parse_valuation(o.val, c, {});
  const auto b = ball(standard_vertex<Fp>(2, v), o.radius < 0 ? 2 : o.radius);
  std::vector<std::string> labels;
  for (const auto& x : b.vertices) labels.push_back(x.str());
  if (!o.dot.empty()) write_text(o.dot, emit_graph("ball", labels, b.edges));
  if (o.dot == "-") return;
  Json out;
  out["field"] = field_desc_of<F1>(c).str();
  out["valuation"] = v.str();
  out["radius"] = b.radius;
  out["residue_field_size"] = residue_field_size(v);
  out["layer_sizes"] = b.layer_sizes;
  out["vertices"] = b.vertices.size();
  out["edges"] = b.edges.size();
  out["acyclic"] = b.edges.size() + 1 == b.vertices.size();
  print_json(out);
}

void run_building_classify(const Options& o) {
  const auto in = load_group(o.group);
  const auto* g = std::get_if<MatGroup<F1>>(&in.group);
  if (!g) throw Unsupported("tree classification needs a group over F_p(t)");
  const auto& names = names_or_default(in.names);
  const auto v = parse_valuation(o.val, g->ctx().p == 0 ? FpCtx(2) : g->ctx(), names);
  const auto x = eval_word(*g, parse_word(o.word, g->gens.size()));
  const auto r = classify_isometry(x, v, o.radius < 0 ? kDefaultSearchRadius : o.radius);
  const auto tv = v(x(0, 0) + x(1, 1));
  Json out;
  out["element"] = matrix_to_json(x, names);
  out["valuation"] = v.str(names);
  out["verdict"] = r.elliptic ? "elliptic" : "hyperbolic";
  out["translation_length"] = r.translation_length;
  out["witness"] = matrix_to_json(r.witness.rep, names);
  out["image"] = matrix_to_json(r.image.rep, names);
  out["search_radius"] = r.radius_used;
  out["trace_valuation"] = tv.str();
  const bool oracle_elliptic = tv >= ValuationValue(0);
  out["trace_oracle_agrees"] =
      oracle_elliptic == r.elliptic && (r.elliptic || r.translation_length == -2 * tv.value());
  print_json(out);
}

void run_building_stabilizer(const Options& o) {
  const RingDesc d = load_ring(o.ring);
  if (d.transcendentals.size() != 1) throw Unsupported("stabilizers only over one transcendental");
  const auto ring = build_ring<F1>(d);
  const auto fam = build_valuation_family(ring);
  ProductPoint<F1> point;
  for (const auto& v : fam) point.push_back(standard_vertex<Fp>(2, v));
  const auto st = stabilizer_elements(ring, point, fam, o.element_cap);
  std::int64_t m = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto b = stabilizer_entry_bound(point[i].rep.inverse(), fam[i]);
    m = i == 0 ? b : std::min(m, b);
  }
  std::unordered_set<Matrix<F1>, Hasher<Matrix<F1>>> set(st.begin(), st.end());
  bool closed = true;
  for (const auto& a : st) {
    closed = closed && set.count(a.inverse());
    for (const auto& b : st) closed = closed && set.count(a * b);
  }
  Json out;
  Json vals = Json::array();
  for (const auto& v : fam) vals.push_back(v.str(d.transcendentals));
  out["family"] = vals;
  out["entry_bound"] = m;
  out["count"] = st.size();
  out["closed_under_product_and_inverse"] = closed;
  Json els = Json::array();
  for (const auto& g : st) els.push_back(matrix_to_json(g, d.transcendentals));
  out["elements"] = els;
  print_json(out);
}

// ---- blocks ---------------------------------------------------------------

template <class B>
void run_decompose_typed(const MatGroup<B>& g, std::uint64_t seed) {
  const auto dec = simultaneous_blocks(g.gens, seed);
  Json out;
  out["field"] = dec.field.str();
  out["block_sizes"] = dec.block_sizes;
  Json eig = Json::array();
  for (const auto& row : dec.eigenvalues) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.str());
    eig.push_back(r);
  }
  out["eigenvalues"] = eig;
  out["basis"] = matrix_to_json(dec.basis, {});
  Json th = Json::array();
  for (const auto& x : g.gens) {
    Json r = Json::array();
    for (const auto& e : theta(x, dec)) r.push_back(e.str());
    th.push_back(r);
  }
  out["theta"] = th;
  print_json(out);
}

void run_decompose(const Options& o) {
  const auto in = load_group(o.group);
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, MatGroup<F1>>)
          throw Unsupported("block decomposition needs a finite field or Q");
        else
          run_decompose_typed(g, o.seed);
      },
      in.group);
}

void run_classify(const Options& o) {
  const auto in = load_matrix(o.matrix);
  const mpz_class cap(o.order_cap);
  const auto cls = std::visit([&](const auto& m) { return classify_element(m, cap, o.seed); }, in.matrix);
  if (o.format == "json") {
    Json out;
    out["verdict"] = cls.str();
    out["finite_order"] = cls.has_finite_order();
    if (cls.kind == ElementKind::finite_order) out["order"] = cls.order.get_str();
    print_json(out);
  } else {
    std::cout << cls.str() << "\n";
  }
}

void run_split(const Options& o) {
  const auto p = load_presentation(o.presentation);
  const std::size_t n = o.n < 0 ? p.images.size() : static_cast<std::size_t>(o.n);
  const auto s = split_direct_factor(p, n);
  Json out, phi = Json::array(), ed = Json::array();
  for (const auto& row : s.phi) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    phi.push_back(r);
  }
  for (const auto& d : s.elementary_divisors) ed.push_back(d.get_str());
  out["phi"] = phi;
  out["index"] = s.index.get_str();
  out["elementary_divisors"] = ed;
  print_json(out);
}

// ---- distortion -----------------------------------------------------------

template <class K>
std::int64_t cap_for(const Options& o, const MatGroup<K>& g) {
  return o.cap < 0 ? default_word_cap(g.gens.size()) : o.cap;
}

std::string opt_text(const std::optional<std::int64_t>& l) { return l ? std::to_string(*l) : ""; }

Json opt_json(const std::optional<std::int64_t>& l) { return l ? Json(*l) : Json(nullptr); }

template <class K>
void run_tau_typed(const Options& o, const MatGroup<K>& g, const Names& names) {
  const WordMetric<K> wm(g, cap_for(o, g), o.bit_limit);
  const auto x = eval_word(g, parse_word(o.word, g.gens.size()));
  const auto t = estimate_tau(wm, x, o.n_max);
  if (o.format == "csv") {
    std::cout << "n,length\n";
    for (const auto& [n, l] : t.samples) std::cout << n << "," << opt_text(l) << "\n";
    return;
  }
  Json out;
  out["group"] = g.name;
  out["element"] = matrix_to_json(x, names);
  out["cap"] = wm.cap();
  Json samples = Json::array();
  for (const auto& [n, l] : t.samples) samples.push_back(Json::array({n, opt_json(l)}));
  out["samples"] = samples;
  out["tau_hat"] = rational_text(t.tau_hat);
  out["tau_hat_at"] = t.best_n;
  print_json(out);
}

template <class K>
void run_abelian_typed(const Options& o, const MatGroup<K>& g, const Names& names) {
  const WordMetric<K> wm(g, cap_for(o, g), o.bit_limit);
  const auto a = load_basis_json(read_json_file(o.basis), g, names, o.basis);
  const auto t = abelian_distortion(wm, a, o.box);
  if (o.format == "csv") {
    std::cout << "point,l1,length\n";
    for (const auto& r : t.rows) {
      std::string p;
      for (auto x : r.point) p += (p.empty() ? "" : " ") + std::to_string(x);
      std::cout << p << "," << r.l1 << "," << opt_text(r.word_length) << "\n";
    }
    return;
  }
  Json out;
  out["group"] = g.name;
  out["cap"] = wm.cap();
  out["box"] = o.box;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["point"] = r.point;
    row["l1"] = r.l1;
    row["length"] = opt_json(r.word_length);
    rows.push_back(row);
  }
  out["rows"] = rows;
  out["k"] = t.k ? Json(rational_text(*t.k)) : Json(nullptr);
  if (o.znorm) {
    const auto z = znorm_check(wm, a, o.box, o.n_max);
    Json zr;
    zr["checks"] = z.checks;
    zr["tight"] = z.tight;
    zr["skipped"] = z.skipped;
    zr["violations"] = z.violations;
    out["znorm"] = zr;
  }
  print_json(out);
}

template <class K>
void run_scan_typed(const Options& o, const MatGroup<K>& g, const Names& names) {
  const WordMetric<K> wm(g, cap_for(o, g), o.bit_limit);
  const auto s = uniform_lower_bound_scan(wm, o.radius < 0 ? 2 : o.radius, o.n_max);
  Json out;
  out["group"] = g.name;
  out["scanned"] = s.scanned;
  out["skipped_finite_order"] = s.skipped_finite;
  if (s.found) {
    out["min_tau_hat"] = rational_text(s.min_tau_hat);
    out["witness"] = matrix_to_json(s.witness, names);
    out["witness_word"] = word_str(s.witness_word);
  } else {
    out["min_tau_hat"] = nullptr;
  }
  print_json(out);
}

template <class K>
void run_cayley_typed(const Options& o, const MatGroup<K>& g, const Names& names) {
  const CayleyBall<K> b(g, o.radius < 0 ? 2 : o.radius, o.bit_limit);
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const auto letters = g.letters();
  for (std::size_t i = 0; i < b.size(); ++i) {
    labels.push_back(b.nodes()[i].elem.str(names));
    for (const auto& s : letters)
      if (auto j = b.find(b.nodes()[i].elem * s); j && *j != i) edges.emplace_back(i, *j);
  }
  if (!o.dot.empty()) write_text(o.dot, emit_graph(g.name.empty() ? "cayley" : g.name, labels, edges));
  if (o.dot == "-") return;
  Json out;
  out["group"] = g.name;
  out["radius"] = b.radius();
  out["layer_sizes"] = b.layer_sizes();
  out["size"] = b.size();
  print_json(out);
}

template <class Fn>
void with_group(const Options& o, Fn&& fn) {
  const auto in = load_group(o.group);
  std::visit([&](const auto& g) { fn(g, in.names); }, in.group);
}

void run_fixtures_list() {
  for (const auto& f : fixture_list()) std::cout << f.name << "\t" << f.field << "\t" << f.description << "\n";
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("NPC_SEED");
  if (!s || !*s) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 0);
  if (*end != '\0') throw UsageError(std::string("NPC_SEED is not an integer: ") + s);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact computations with valuations, trees, commuting matrices and word metrics", "npc"};
  app.require_subcommand(1);
  auto* seed_opt = app.add_option("--seed", o.seed, "Seed for randomized routines (NPC_SEED if unset)");

  auto* valuate = app.add_subcommand("valuate", "Ring elements with every family valuation >= m");
  valuate->add_option("--ring", o.ring, "ring.json")->required();
  valuate->add_option("--m", o.m, "Lower bound")->required();
  auto* lst = valuate->add_flag("--list", o.list, "Print the elements (default)");
  valuate->add_flag("--count", o.count, "Print only the number of elements")->excludes(lst);
  valuate->add_option("--element-cap", o.element_cap, "Refuse enumerations above this many candidates");

  auto* enumerate = app.add_subcommand("enumerate", "Valuation family of a ring, and valuations of given elements");
  enumerate->add_option("--ring", o.ring, "ring.json")->required();
  enumerate->add_option("--value", o.values, "Element to valuate (repeatable)");

  auto* building = app.add_subcommand("building", "Bruhat-Tits tree of SL(2)");
  building->require_subcommand(1);
  auto* b_ball = building->add_subcommand("ball", "Ball around the standard vertex");
  b_ball->add_option("--char", o.characteristic, "Characteristic p")->required();
  b_ball->add_option("--val", o.val, "'mu0' or a monic irreducible polynomial in t");
  b_ball->add_option("--radius", o.radius, "Radius (default 2)");
  b_ball->add_option("--dot", o.dot, "Write DOT to this file ('-' for stdout)");
  auto* b_cls = building->add_subcommand("classify", "Elliptic or hyperbolic, with a certificate");
  b_cls->add_option("--group", o.group, "group.json or fixture:NAME")->required();
  b_cls->add_option("--word", o.word, "Word in the generators, e.g. \"0 1 -0\"")->required();
  b_cls->add_option("--val", o.val, "'mu0' or a monic irreducible polynomial in t");
  b_cls->add_option("--radius", o.radius, "Search radius (default 6)");
  auto* b_stab = building->add_subcommand("stabilizer", "Stabilizer in SL(2,R) of the standard product point");
  b_stab->add_option("--ring", o.ring, "ring.json")->required();
  b_stab->add_option("--element-cap", o.element_cap, "Candidate cap");

  auto* decompose = app.add_subcommand("decompose", "Simultaneous block decomposition of commuting generators");
  decompose->add_option("--group", o.group, "group.json or fixture:NAME")->required();

  auto* classify = app.add_subcommand("classify", "Finite order, unipotent, virtually unipotent or other");
  classify->add_option("--matrix", o.matrix, "matrix.json")->required();
  classify->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  classify->add_option("--order-cap", o.order_cap, "Report orders above this as exceeding the cap");

  auto* split = app.add_subcommand("split", "Project an abelian image onto Z^n with finite index");
  split->add_option("--presentation", o.presentation, "presentation.json")->required();
  split->add_option("--n", o.n, "Rank of A (default: number of images)");

  auto* dist = app.add_subcommand("distortion", "Word lengths and translation length estimates");
  dist->require_subcommand(1);
  auto add_common = [&](CLI::App* s) {
    s->add_option("--group", o.group, "group.json or fixture:NAME")->required();
    s->add_option("--cap", o.cap, "Largest certified word length (default 10, or 8 with 3+ generators)");
    s->add_option("--bit-limit", o.bit_limit, "Abort when matrix entries grow beyond this size");
  };
  auto* d_tau = dist->add_subcommand("tau", "min l(g^n)/n over n <= N");
  add_common(d_tau);
  d_tau->add_option("--word", o.word, "Word in the generators")->required();
  d_tau->add_option("--N", o.n_max, "Largest power");
  d_tau->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* d_ab = dist->add_subcommand("abelian", "Word length against the l1 norm on a box");
  add_common(d_ab);
  d_ab->add_option("--basis", o.basis, "basis.json")->required();
  d_ab->add_option("--box", o.box, "Half-width of the box");
  d_ab->add_option("--N", o.n_max, "Largest power for --znorm");
  d_ab->add_flag("--znorm", o.znorm, "Also check the seminorm inequalities");
  d_ab->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* d_scan = dist->add_subcommand("scan", "Smallest tau estimate over infinite-order elements of a ball");
  add_common(d_scan);
  d_scan->add_option("--radius", o.radius, "Ball radius (default 2)");
  d_scan->add_option("--N", o.n_max, "Largest power");
  auto* d_ball = dist->add_subcommand("ball", "Cayley ball layer sizes");
  add_common(d_ball);
  d_ball->add_option("--radius", o.radius, "Ball radius (default 2)");
  d_ball->add_option("--dot", o.dot, "Write DOT to this file ('-' for stdout)");

  auto* fixtures = app.add_subcommand("fixtures", "Shipped groups");
  fixtures->require_subcommand(1);
  auto* f_list = fixtures->add_subcommand("list", "Names and descriptions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return 0;
    std::cerr << app.help();
    return static_cast<int>(ExitCode::usage);
  }

  try {
    if (seed_opt->count() == 0) o.seed = seed_from_env(o.seed);
    if (valuate->parsed()) {
      const RingDesc d = load_ring(o.ring);
      with_ring_depth(d, [&](auto tag) { run_valuate<decltype(tag)>(o, d); });
    } else if (enumerate->parsed()) {
      const RingDesc d = load_ring(o.ring);
      with_ring_depth(d, [&](auto tag) { run_enumerate<decltype(tag)>(o, d); });
    } else if (b_ball->parsed()) {
      run_building_ball(o);
    } else if (b_cls->parsed()) {
      run_building_classify(o);
    } else if (b_stab->parsed()) {
      run_building_stabilizer(o);
    } else if (decompose->parsed()) {
      run_decompose(o);
    } else if (classify->parsed()) {
      run_classify(o);
    } else if (split->parsed()) {
      run_split(o);
    } else if (d_tau->parsed()) {
      with_group(o, [&](const auto& g, const Names& n) { run_tau_typed(o, g, names_or_default(n)); });
    } else if (d_ab->parsed()) {
      with_group(o, [&](const auto& g, const Names& n) { run_abelian_typed(o, g, names_or_default(n)); });
    } else if (d_scan->parsed()) {
      with_group(o, [&](const auto& g, const Names& n) { run_scan_typed(o, g, names_or_default(n)); });
    } else if (d_ball->parsed()) {
      with_group(o, [&](const auto& g, const Names& n) { run_cayley_typed(o, g, names_or_default(n)); });
    } else if (f_list->parsed()) {
      run_fixtures_list();
    }
  } catch (const npc::Error& e) {
    std::cerr << "npc: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "npc: " << e.what() << "\n";
    return static_cast<int>(ExitCode::domain);
  }
  return 0;
}
