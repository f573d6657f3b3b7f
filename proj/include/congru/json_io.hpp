// JSON interchange for fields, matrices, tuples, invariants, algebras and labels.
#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "congru/algebras.hpp"
#include "congru/mobius.hpp"
#include "congru/skew_pencil.hpp"
#include "congru/tuples.hpp"

namespace congru::json {

using nlohmann::json;

namespace detail {

inline const json& at(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::MalformedInput, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline long long as_int(const json& j, const char* what) {
  require(j.is_number_integer(), ErrorKind::MalformedInput, std::string(what) + " must be an integer");
  return j.get<long long>();
}

inline std::size_t as_size(const json& j, const char* what) {
  const auto v = as_int(j, what);
  require(v >= 0, ErrorKind::MalformedInput, std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

inline const json& as_array(const json& j, const char* what) {
  require(j.is_array(), ErrorKind::MalformedInput, std::string(what) + " must be an array");
  return j;
}

inline std::vector<std::size_t> size_list(const json& j, const char* what) {
  std::vector<std::size_t> out;
  for (const auto& e : as_array(j, what)) out.push_back(as_size(e, what));
  return out;
}

inline mpz_class parse_integer(const std::string& s) {
  mpz_class z;
  require(!s.empty() && z.set_str(s, 10) == 0, ErrorKind::MalformedInput, "bad integer \"" + s + "\"");
  return z;
}

}  // namespace detail

inline json field_to_json(const FieldSpec& s) {
  if (!s.is_finite()) return {{"kind", "Q"}};
  return {{"kind", "Fp"}, {"p", s.p}, {"k", s.k}, {"modulus", s.modulus}};
}

inline FieldSpec field_from_json(const json& j) {
  const auto& kind = detail::at(j, "kind");
  require(kind.is_string(), ErrorKind::MalformedInput, "field kind must be a string");
  if (kind == "Q") return FieldSpec::rationals();
  require(kind == "Fp", ErrorKind::MalformedInput, "field kind must be \"Q\" or \"Fp\"");
  const auto p = detail::as_int(detail::at(j, "p"), "p");
  require(p > 0 && p < (1ll << 31), ErrorKind::InvalidField, "p out of range");
  const auto k = j.contains("k") ? detail::as_int(j.at("k"), "k") : 1;
  require(k >= 1 && k <= 64, ErrorKind::InvalidField, "k out of range");
  std::vector<std::uint32_t> modulus;
  if (j.contains("modulus"))
    for (const auto& c : detail::as_array(j.at("modulus"), "modulus")) {
      const auto v = detail::as_int(c, "modulus coefficient");
      require(v >= 0 && v < p, ErrorKind::InvalidField, "modulus coefficients must lie in [0, p)");
      modulus.push_back(static_cast<std::uint32_t>(v));
    }
  return FieldSpec::finite(static_cast<std::uint32_t>(p), static_cast<unsigned>(k), std::move(modulus));
}

/// Rationals as "a/b" (or "a"); finite-field elements as coefficient lists.
template <Field F>
json element_to_json(const F& f, const typename F::Element& e) {
  if constexpr (std::is_same_v<F, Rationals>) {
    return f.to_string(e);
  } else {
    return f.coefficients(e);
  }
}

template <Field F>
typename F::Element element_from_json(const F& f, const json& j) {
  if constexpr (std::is_same_v<F, Rationals>) {
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    require(j.is_string(), ErrorKind::MalformedInput, "rational entries must be strings \"a/b\" or integers");
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    const mpz_class num = detail::parse_integer(s.substr(0, slash));
    const mpz_class den = slash == std::string::npos ? mpz_class(1) : detail::parse_integer(s.substr(slash + 1));
    require(den != 0, ErrorKind::MalformedInput, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  } else {
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    std::vector<long long> c;
    for (const auto& x : detail::as_array(j, "finite-field entry")) c.push_back(detail::as_int(x, "coefficient"));
    return f.from_coefficients(c);
  }
}

template <Field F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m.field(), m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"field", field_to_json(m.field().spec())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

template <Field F>
Matrix<F> matrix_from_json(const F& f, const json& j) {
  if (j.contains("field"))
    require(field_from_json(j.at("field")) == f.spec(), ErrorKind::MalformedInput, "matrix field differs from the active field");
  const auto rows = detail::as_size(detail::at(j, "rows"), "rows");
  const auto cols = detail::as_size(detail::at(j, "cols"), "cols");
  const auto& entries = detail::as_array(detail::at(j, "entries"), "entries");
  require(entries.size() == rows, ErrorKind::MalformedInput, "entries must have one array per row");
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = detail::as_array(entries[i], "entry row");
    require(row.size() == cols, ErrorKind::MalformedInput, "entry row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = element_from_json(f, row[k]);
  }
  return m;
}

/// The field declared by a matrix, tuple, algebra or label document.
inline FieldSpec document_field(const json& j) {
  if (j.is_object() && j.contains("field")) return field_from_json(j.at("field"));
  if (j.is_object() && j.contains("members")) {
    const auto& members = detail::as_array(j.at("members"), "members");
    require(!members.empty(), ErrorKind::MalformedInput, "tuple has no members");
    return document_field(members.front());
  }
  if (j.is_object() && j.contains("a")) return document_field(j.at("a"));
  fail(ErrorKind::MalformedInput, "document does not declare a field");
}

template <Field F>
json tuple_to_json(const MatrixTuple<F>& t) {
  json members = json::array();
  for (const auto& m : t.members()) members.push_back(matrix_to_json(m));
  return {{"members", members}};
}

template <Field F>
MatrixTuple<F> tuple_from_json(const F& f, const json& j) {
  std::vector<Matrix<F>> members;
  for (const auto& m : detail::as_array(detail::at(j, "members"), "members")) members.push_back(matrix_from_json(f, m));
  require(!members.empty(), ErrorKind::MalformedInput, "tuple has no members");
  return MatrixTuple<F>(std::move(members));
}

/// Pairs are tuples with two members.
template <Field F>
MatrixPair<F> pair_from_json(const F& f, const json& j) {
  const auto t = tuple_from_json(f, j);
  require(t.arity() == 2, ErrorKind::ArityMismatch, "a pair needs exactly two members");
  return MatrixPair<F>::from_tuple(t);
}

template <Field F>
json poly_to_json(const Polynomial<F>& q) {
  json c = json::array();
  for (const auto& e : q.coeffs()) c.push_back(element_to_json(q.field(), e));
  return c;
}

template <Field F>
Polynomial<F> poly_from_json(const F& f, const json& j) {
  std::vector<typename F::Element> c;
  for (const auto& e : detail::as_array(j, "polynomial")) c.push_back(element_from_json(f, e));
  return Polynomial<F>(f, std::move(c));
}

template <Field F>
json invariants_to_json(const SkewPencilInvariants<F>& inv) {
  json finite = json::array();
  for (const auto& [q, m] : inv.finite) finite.push_back({{"poly", poly_to_json(q)}, {"m", m}});
  return {{"finite", finite}, {"infinite", inv.infinite}, {"minimal", inv.minimal}};
}

template <Field F>
SkewPencilInvariants<F> invariants_from_json(const F& f, const json& j) {
  SkewPencilInvariants<F> inv;
  if (j.contains("finite"))
    for (const auto& d : detail::as_array(j.at("finite"), "finite")) {
      auto q = poly_from_json(f, detail::at(d, "poly"));
      require(q.degree() >= 1 && q.is_monic(), ErrorKind::MalformedInput, "finite divisors must be monic of degree >= 1");
      require(q.degree() == 1 || factor(q).size() == 1, ErrorKind::MalformedInput, "finite divisors must be irreducible");
      inv.finite.emplace_back(std::move(q), detail::as_size(detail::at(d, "m"), "m"));
    }
  if (j.contains("infinite")) inv.infinite = detail::size_list(j.at("infinite"), "infinite");
  if (j.contains("minimal")) inv.minimal = detail::size_list(j.at("minimal"), "minimal");
  inv.normalize();
  return inv;
}

template <Field F>
json structure_to_json(const StructureConstants<F>& r) {
  json table = json::array();
  for (std::size_t i = 0; i < r.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < r.dim(); ++j) {
      json v = json::array();
      for (const auto& e : r(i, j)) v.push_back(element_to_json(r.field(), e));
      row.push_back(std::move(v));
    }
    table.push_back(std::move(row));
  }
  return {{"field", field_to_json(r.field().spec())}, {"dim", r.dim()}, {"table", table}};
}

template <Field F>
StructureConstants<F> structure_from_json(const F& f, const json& j) {
  if (j.contains("field"))
    require(field_from_json(j.at("field")) == f.spec(), ErrorKind::MalformedInput, "algebra field differs from the active field");
  const auto n = detail::as_size(detail::at(j, "dim"), "dim");
  const auto& table = detail::as_array(detail::at(j, "table"), "table");
  require(table.size() == n, ErrorKind::MalformedInput, "table must have dim rows");
  StructureConstants<F> r(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = detail::as_array(table[i], "table row");
    require(row.size() == n, ErrorKind::MalformedInput, "table row must have dim products");
    for (std::size_t k = 0; k < n; ++k) {
      const auto& v = detail::as_array(row[k], "product");
      require(v.size() == n, ErrorKind::MalformedInput, "products must have dim coordinates");
      for (std::size_t l = 0; l < n; ++l) r(i, k)[l] = element_from_json(f, v[l]);
    }
  }
  return r;
}

template <Field F>
json place_to_json(const Place<F>& p) {
  if (p.is_infinity()) return "inf";
  if (p.is_point()) return element_to_json(p.poly().field(), p.value());
  return {{"poly", poly_to_json(p.poly())}};
}

template <Field F>
Place<F> place_from_json(const F& f, const json& j) {
  if (j.is_string() && j == "inf") return Place<F>::infinity(f);
  if (j.is_object()) return Place<F>::of_factor(poly_from_json(f, detail::at(j, "poly")));
  return Place<F>::point(f, element_from_json(f, j));
}

template <Field F>
json label_to_json(const F& f, const LieLabel<F>& l) {
  json out = {{"field", field_to_json(f.spec())}, {"t", l.t}, {"dim", l.dim}};
  if (l.t == 1) {
    out["p"] = l.p;
    out["q"] = l.q;
    return out;
  }
  json points = json::array();
  for (const auto& [p, sizes] : l.points.entries()) points.push_back({{"point", place_to_json(p)}, {"sizes", sizes}});
  out["minimal"] = l.minimal;
  out["points"] = points;
  out["split"] = l.split;
  return out;
}

template <Field F>
LieLabel<F> label_from_json(const F& f, const json& j) {
  LieLabel<F> l;
  l.t = detail::as_size(detail::at(j, "t"), "t");
  l.dim = detail::as_size(detail::at(j, "dim"), "dim");
  if (l.t == 1) {
    l.p = detail::as_size(detail::at(j, "p"), "p");
    l.q = detail::as_size(detail::at(j, "q"), "q");
    return l;
  }
  if (j.contains("minimal")) l.minimal = detail::size_list(j.at("minimal"), "minimal");
  std::sort(l.minimal.begin(), l.minimal.end());
  std::vector<typename PointConfiguration<F>::Entry> entries;
  if (j.contains("points"))
    for (const auto& e : detail::as_array(j.at("points"), "points"))
      entries.emplace_back(place_from_json(f, detail::at(e, "point")), detail::size_list(detail::at(e, "sizes"), "sizes"));
  l.points = PointConfiguration<F>(std::move(entries));
  l.split = !l.points.has_closed();
  return l;
}

template <Field F>
json split_to_json(const std::vector<SplitComponent<F>>& parts) {
  json comps = json::array();
  for (const auto& c : parts) comps.push_back({{"rows", c.rows}, {"cols", c.cols}, {"tuple", tuple_to_json(c.tuple)}});
  return {{"components", comps}};
}

}  // namespace congru::json
