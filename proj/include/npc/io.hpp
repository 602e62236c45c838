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

// JSON input files. Every file may carry "schema": 1; unknown keys are rejected.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "npc/abelian.hpp"
#include "npc/distortion.hpp"
#include "npc/error.hpp"
#include "npc/fixtures.hpp"
#include "npc/parse.hpp"
#include "npc/valuation.hpp"

namespace npc {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
}

inline void check_object(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw DomainError(what + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!allowed.count(k)) throw DomainError(what + ": unknown field '" + k + "'");
  }
  if (j.contains("schema") && j["schema"] != 1) throw DomainError(what + ": unsupported schema version");
}

inline const Json& require(const Json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw DomainError(what + ": missing field '" + key + "'");
  return j[key];
}

/// Scalars may be written as JSON integers or as strings.
inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw DomainError("matrix entries must be strings or integers, got " + j.dump());
}

inline mpz_class integer_from_json(const Json& j) {
  const std::string s = scalar_text(j);
  mpz_class z;
  if (s.empty() || z.set_str(s, 10) != 0) throw DomainError("not an integer: " + j.dump());
  return z;
}

struct FieldSpec {
  std::uint64_t characteristic = 0;
  Names names;
};

inline FieldSpec field_from_json(const Json& j) {
  check_object(j, {"char", "transcendentals"}, "field");
  FieldSpec f;
  const Json& c = require(j, "char", "field");
  if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<long long>() >= 0))
    throw DomainError("field: char must be a nonnegative integer");
  f.characteristic = c.get<std::uint64_t>();
  if (j.contains("transcendentals")) f.names = j["transcendentals"].get<Names>();
  return f;
}

template <class K>
std::string scalar_text_of(const K& x, const Names& names) {
  if constexpr (is_ratfunc_v<K>)
    return names.empty() ? scalar_str(x) : x.str(names);
  else
    return scalar_str(x);
}

template <class K>
Matrix<K> matrix_from_json(const Json& j, const typename K::ctx_type& c, const Names& names) {
  if (!j.is_array() || j.empty()) throw DomainError("matrix must be a nonempty array of rows");
  std::vector<std::vector<K>> rows;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != j[0].size()) throw DomainError("matrix rows must be arrays of equal length");
    rows.emplace_back();
    for (const auto& e : r) {
      if constexpr (is_ratfunc_v<K>)
        rows.back().push_back(parse_scalar<K>(scalar_text(e), c, names.empty() ? default_names(1) : names));
      else
        rows.back().push_back(parse_scalar<K>(scalar_text(e), c));
    }
  }
  return Matrix<K>::from_rows(c, rows);
}

template <class K>
Json matrix_to_json(const Matrix<K>& m, const Names& names) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_text_of(m(i, j), names));
    rows.push_back(std::move(row));
  }
  return rows;
}

using AnyMatrix = std::variant<Matrix<Rational>, Matrix<Fp>, Matrix<RatFunc<Fp>>>;

struct MatrixInput {
  AnyMatrix matrix;
  Names names;
};

inline MatrixInput load_matrix_json(const Json& j, const std::string& what = "matrix file") {
  check_object(j, {"schema", "field", "matrix"}, what);
  const FieldSpec f = field_from_json(require(j, "field", what));
  const Json& m = require(j, "matrix", what);
  if (f.names.size() > 1) throw Unsupported("more than one transcendental in matrix input");
  if (f.characteristic == 0) {
    if (!f.names.empty()) throw Unsupported("rational function fields over Q");
    return {matrix_from_json<Rational>(m, RationalCtx{}, {}), {}};
  }
  const FpCtx c(f.characteristic);
  if (f.names.empty()) return {matrix_from_json<Fp>(m, c, {}), {}};
  return {matrix_from_json<RatFunc<Fp>>(m, c, f.names), f.names};
}

inline MatrixInput load_matrix(const std::string& path) { return load_matrix_json(read_json_file(path), path); }

struct GroupInput {
  AnyGroup group;
  Names names;
};

namespace detail {

template <class K>
MatGroup<K> group_from_json(const Json& gens, const typename K::ctx_type& c, const Names& names,
                            const std::string& name) {
  MatGroup<K> g{{}, name};
  for (const auto& m : gens) g.gens.push_back(matrix_from_json<K>(m, c, names));
  g.validate();
  return g;
}

}  // namespace detail

inline GroupInput load_group_json(const Json& j, const std::string& what) {
  check_object(j, {"schema", "name", "field", "gens"}, what);
  const FieldSpec f = field_from_json(require(j, "field", what));
  const Json& gens = require(j, "gens", what);
  if (!gens.is_array() || gens.empty()) throw DomainError(what + ": gens must be a nonempty array");
  const std::string name = j.contains("name") ? j["name"].get<std::string>() : "";
  if (f.names.size() > 1) throw Unsupported("more than one transcendental in group input");
  if (f.characteristic == 0) {
    if (!f.names.empty()) throw Unsupported("rational function fields over Q");
    return {detail::group_from_json<Rational>(gens, RationalCtx{}, {}, name), {}};
  }
  const FpCtx c(f.characteristic);
  if (f.names.empty()) return {detail::group_from_json<Fp>(gens, c, {}, name), {}};
  return {detail::group_from_json<RatFunc<Fp>>(gens, c, f.names, name), f.names};
}

/// A file path, or "fixture:NAME" for a shipped group.
inline GroupInput load_group(const std::string& arg) {
  const std::string prefix = "fixture:";
  if (arg.rfind(prefix, 0) == 0) return {fixture_group(arg.substr(prefix.size())), {}};
  return load_group_json(read_json_file(arg), arg);
}

inline RingDesc load_ring_json(const Json& j, const std::string& what) {
  check_object(j, {"schema", "char", "transcendentals", "inverted", "extra"}, what);
  RingDesc d;
  const Json& c = require(j, "char", what);
  if (!c.is_number_integer() || c.get<long long>() < 2) throw DomainError(what + ": char must be a prime");
  d.characteristic = c.get<std::uint64_t>();
  d.transcendentals = require(j, "transcendentals", what).get<Names>();
  if (d.transcendentals.empty()) throw DomainError(what + ": at least one transcendental is required");
  std::set<std::string> uniq(d.transcendentals.begin(), d.transcendentals.end());
  if (uniq.size() != d.transcendentals.size()) throw DomainError(what + ": transcendental names must differ");
  if (j.contains("inverted")) d.inverted = j["inverted"].get<std::vector<std::string>>();
  if (j.contains("extra")) d.extra = j["extra"].get<std::vector<std::string>>();
  return d;
}

inline RingDesc load_ring(const std::string& path) { return load_ring_json(read_json_file(path), path); }

inline AbelianPresentation load_presentation_json(const Json& j, const std::string& what) {
  check_object(j, {"schema", "rank", "torsion", "images"}, what);
  AbelianPresentation p;
  p.rank = require(j, "rank", what).get<std::size_t>();
  if (j.contains("torsion"))
    for (const auto& t : j["torsion"]) p.torsion.push_back(integer_from_json(t));
  for (const auto& row : require(j, "images", what)) {
    std::vector<mpz_class> r;
    for (const auto& x : row) r.push_back(integer_from_json(x));
    p.images.push_back(std::move(r));
  }
  p.validate();
  for (auto& row : p.images)
    for (std::size_t k = 0; k < p.torsion.size(); ++k) {
      mpz_class& x = row[p.rank + k];
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.torsion[k].get_mpz_t());
    }
  return p;
}

inline AbelianPresentation load_presentation(const std::string& path) {
  return load_presentation_json(read_json_file(path), path);
}

/// Basis of an abelian subgroup as words in the generators or as matrices.
template <class K>
AbelianEmbedding<K> load_basis_json(const Json& j, const MatGroup<K>& g, const Names& names, const std::string& what) {
  check_object(j, {"schema", "words", "matrices"}, what);
  if (j.contains("words") == j.contains("matrices")) throw DomainError(what + ": give exactly one of words, matrices");
  AbelianEmbedding<K> a;
  if (j.contains("words")) {
    for (const auto& w : j["words"]) a.basis.push_back(eval_word(g, parse_word(w.get<std::string>(), g.gens.size())));
  } else {
    for (const auto& m : j["matrices"]) a.basis.push_back(matrix_from_json<K>(m, g.ctx(), names));
  }
  a.validate();
  return a;
}

}  // namespace npc
