// Brute-force deciders over small finite fields. They enumerate groups
// directly and share no logic with the invariant-based deciders.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "congru/gadgets.hpp"
#include "congru/tuples.hpp"

namespace congru {

struct EnumerationBudget {
  std::uint64_t max_group_order = 10'000'000;
  std::uint64_t seed = 0;
};

/// |GL_n(F_q)|, or nullopt once it exceeds cap.
inline std::optional<std::uint64_t> gl_order(std::uint64_t q, std::size_t n, std::uint64_t cap) {
  long double qn = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= static_cast<long double>(q);
  long double total = 1, qi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= qn - qi;
    qi *= static_cast<long double>(q);
    if (total > static_cast<long double>(cap)) return std::nullopt;
  }
  return static_cast<std::uint64_t>(total);
}

/// Visits every invertible n x n matrix once. Order: row-major over entry
/// encodings with the first entry most significant. fn returns true to stop.
/// Returns true if fn stopped the enumeration.
template <FiniteField F>
bool gl_for_each(const F& f, std::size_t n, const EnumerationBudget& budget,
                 const std::function<bool(const Matrix<F>&)>& fn) {
  const std::uint64_t q = f.order();
  require(gl_order(q, n, budget.max_group_order).has_value(), ErrorKind::DeskScaleExceeded,
          "general linear group exceeds the enumeration budget");
  Matrix<F> m(f, n, n);
  if (n == 0) return fn(m);
  std::uint64_t row_count = 1;
  for (std::size_t j = 0; j < n; ++j) row_count *= q;

  // echelon[r] holds the rows 0..r-1 reduced; a candidate row is independent
  // iff it does not reduce to zero against them.
  std::vector<std::vector<typename F::Element>> echelon;
  std::vector<std::size_t> pivots;

  auto reduce = [&](std::vector<typename F::Element> v) {
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      const auto c = v[pivots[r]];
      if (f.is_zero(c)) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = f.sub(v[j], f.mul(c, echelon[r][j]));
    }
    return v;
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t row) -> bool {
    if (row == n) return fn(m);
    std::vector<typename F::Element> v(n);
    for (std::uint64_t code = 0; code < row_count; ++code) {
      std::uint64_t c = code;
      for (std::size_t j = n; j-- > 0;) {
        v[j] = f.element_at(c % q);
        c /= q;
      }
      auto red = reduce(v);
      std::size_t piv = n;
      for (std::size_t j = 0; j < n && piv == n; ++j)
        if (!f.is_zero(red[j])) piv = j;
      if (piv == n) continue;
      const auto inv = f.inv(red[piv]);
      for (auto& e : red) e = f.mul(e, inv);
      // Keep the stored rows fully reduced against the new pivot.
      auto saved = echelon;
      for (auto& e : echelon) {
        const auto c2 = e[piv];
        if (f.is_zero(c2)) continue;
        for (std::size_t j = 0; j < n; ++j) e[j] = f.sub(e[j], f.mul(c2, red[j]));
      }
      echelon.push_back(red);
      pivots.push_back(piv);
      for (std::size_t j = 0; j < n; ++j) m(row, j) = v[j];
      const bool stop = rec(row + 1);
      echelon = std::move(saved);
      pivots.pop_back();
      if (stop) return true;
    }
    return false;
  };
  return rec(0);
}

template <FiniteField F>
std::vector<Matrix<F>> gl_enumerate(const F& f, std::size_t n, const EnumerationBudget& budget = {}) {
  std::vector<Matrix<F>> out;
  gl_for_each<F>(f, n, budget, [&](const Matrix<F>& m) {
    out.push_back(m);
    return false;
  });
  return out;
}

/// First S with S⁻¹(A, B)S = (C, D): the identity if it works, otherwise the
/// first in enumeration order.
template <FiniteField F>
std::optional<Matrix<F>> brute_similar(const MatrixPair<F>& p1, const MatrixPair<F>& p2,
                                       const EnumerationBudget& budget = {}) {
  require(p1.size() == p2.size(), ErrorKind::SizeMismatch, "pairs differ in size");
  if (p1 == p2) return Matrix<F>::identity(p1.field(), p1.size());
  std::optional<Matrix<F>> found;
  gl_for_each<F>(p1.field(), p1.size(), budget, [&](const Matrix<F>& s) {
    if (p1.a * s == s * p2.a && p1.b * s == s * p2.b) found = s;
    return found.has_value();
  });
  if (found) require(verify_similarity(p1, p2, *found), ErrorKind::Internal, "oracle witness does not verify");
  return found;
}

/// First Q with Qᵀ T1 Q = T2 memberwise (the identity first, as above).
template <FiniteField F>
std::optional<Matrix<F>> brute_congruent(const MatrixTuple<F>& t1, const MatrixTuple<F>& t2,
                                         const EnumerationBudget& budget = {}) {
  require(t1.is_square() && t2.is_square(), ErrorKind::SizeMismatch, "congruence needs square members");
  require(t1.arity() == t2.arity(), ErrorKind::ArityMismatch, "tuples differ in arity");
  require(t1.rows() == t2.rows(), ErrorKind::SizeMismatch, "tuples differ in size");
  if (t1 == t2) return Matrix<F>::identity(t1.field(), t1.rows());
  std::optional<Matrix<F>> found;
  gl_for_each<F>(t1.field(), t1.rows(), budget, [&](const Matrix<F>& q) {
    const auto qt = q.transpose();
    for (std::size_t i = 0; i < t1.arity(); ++i)
      if (!(qt * t1[i] * q == t2[i])) return false;
    found = q;
    return true;
  });
  if (found) require(verify_congruence(t1, t2, *found), ErrorKind::Internal, "oracle witness does not verify");
  return found;
}

/// First (Q, Γ) with apply_substitution(apply_congruence(T1, Q), Γ) = T2.
/// Γ runs over GL_t of the tuple's field.
template <FiniteField F>
std::optional<std::pair<Matrix<F>, Matrix<F>>> brute_orbit_witness(const MatrixTuple<F>& t1, const MatrixTuple<F>& t2,
                                                                  const EnumerationBudget& budget = {}) {
  require(t1.is_square() && t2.is_square(), ErrorKind::SizeMismatch, "congruence needs square members");
  require(t1.arity() == t2.arity(), ErrorKind::ArityMismatch, "tuples differ in arity");
  require(t1.rows() == t2.rows(), ErrorKind::SizeMismatch, "tuples differ in size");
  const F& f = t1.field();
  const auto big = gl_order(f.order(), t1.rows(), budget.max_group_order);
  const auto small = gl_order(f.order(), t1.arity(), budget.max_group_order);
  require(big && small && *big * *small <= budget.max_group_order, ErrorKind::DeskScaleExceeded,
          "orbit enumeration exceeds the budget");
  const auto gammas = gl_enumerate(f, t1.arity(), budget);
  std::optional<std::pair<Matrix<F>, Matrix<F>>> found;
  gl_for_each<F>(f, t1.rows(), budget, [&](const Matrix<F>& q) {
    const auto moved = apply_congruence(t1, q);
    for (const auto& g : gammas)
      if (apply_substitution(moved, g) == t2) {
        found.emplace(q, g);
        return true;
      }
    return false;
  });
  return found;
}

template <FiniteField F>
bool brute_orbit_iso(const MatrixTuple<F>& t1, const MatrixTuple<F>& t2, const EnumerationBudget& budget = {}) {
  return brute_orbit_witness(t1, t2, budget).has_value();
}

namespace detail {

template <FiniteField F>
std::vector<std::uint64_t> tuple_key(const MatrixTuple<F>& t) {
  std::vector<std::uint64_t> key;
  for (const auto& m : t.members())
    for (const auto& e : m.entries()) key.push_back(t.field().index_of(e));
  return key;
}

}  // namespace detail

/// Partitions square tuples into orbits of the congruence action, optionally
/// combined with substitutions. Returns a class id per input, numbered by
/// first appearance. Each orbit is enumerated once, so the cost is
/// (number of classes) x (group order).
template <FiniteField F>
std::vector<std::size_t> orbit_classes(const std::vector<MatrixTuple<F>>& items, bool with_substitution,
                                       const EnumerationBudget& budget = {}) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> cls(items.size(), kUnset);
  if (items.empty()) return cls;
  const F& f = items.front().field();
  std::multimap<std::vector<std::uint64_t>, std::size_t> where;
  for (std::size_t i = 0; i < items.size(); ++i) where.emplace(detail::tuple_key(items[i]), i);
  const auto group = gl_enumerate(f, items.front().rows(), budget);
  const auto gammas = with_substitution ? gl_enumerate(f, items.front().arity(), budget)
                                        : std::vector<Matrix<F>>{Matrix<F>::identity(f, items.front().arity())};
  std::size_t next = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (cls[i] != kUnset) continue;
    const std::size_t id = next++;
    for (const auto& q : group) {
      const auto moved = apply_congruence(items[i], q);
      for (const auto& g : gammas) {
        const auto image = with_substitution ? apply_substitution(moved, g) : moved;
        const auto range = where.equal_range(detail::tuple_key(image));
        for (auto it = range.first; it != range.second; ++it) {
          require(cls[it->second] == kUnset || cls[it->second] == id, ErrorKind::Internal, "orbits overlap");
          cls[it->second] = id;
        }
      }
    }
  }
  return cls;
}

}  // namespace congru
