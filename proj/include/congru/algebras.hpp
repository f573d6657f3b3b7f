#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "congru/linalg.hpp"
#include "congru/mobius.hpp"
#include "congru/skew_pencil.hpp"
#include "congru/tuples.hpp"

namespace congru {

/// Bilinear multiplication on F^n: table[i][j] holds the coordinates of e_i e_j.
template <Field F>
class StructureConstants {
 public:
  using Element = typename F::Element;
  using Vector = std::vector<Element>;

  StructureConstants() = default;
  StructureConstants(F field, std::size_t dim)
      : field_(std::move(field)), dim_(dim), table_(dim, std::vector<Vector>(dim, Vector(dim, field_.zero()))) {}
  StructureConstants(F field, std::vector<std::vector<Vector>> table)
      : field_(std::move(field)), dim_(table.size()), table_(std::move(table)) {
    for (const auto& row : table_) {
      require(row.size() == dim_, ErrorKind::MalformedInput, "structure table must be n x n");
      for (const auto& v : row) require(v.size() == dim_, ErrorKind::MalformedInput, "products must have n coordinates");
    }
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vector& operator()(std::size_t i, std::size_t j) const { return table_[i][j]; }
  Vector& operator()(std::size_t i, std::size_t j) { return table_[i][j]; }
  const std::vector<std::vector<Vector>>& table() const { return table_; }

  Vector product(const Vector& u, const Vector& v) const {
    Vector out(dim_, field_.zero());
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(u[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (field_.is_zero(v[j])) continue;
        const auto s = field_.mul(u[i], v[j]);
        for (std::size_t k = 0; k < dim_; ++k) out[k] = field_.add(out[k], field_.mul(s, table_[i][j][k]));
      }
    }
    return out;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        if (table_[i][j] != table_[j][i]) return false;
    return true;
  }

  bool is_anticommutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (!field_.is_zero(field_.add(table_[i][j][k], table_[j][i][k]))) return false;
    return true;
  }

  /// The same multiplication written in the basis given by the columns of b.
  StructureConstants in_basis(const Matrix<F>& b) const {
    require(b.is_square() && b.rows() == dim_, ErrorKind::SizeMismatch, "basis change must be n x n");
    const auto inv = try_inverse(b);
    require(inv.has_value(), ErrorKind::Singular, "basis change is singular");
    std::vector<Vector> cols(dim_, Vector(dim_));
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) cols[j][i] = b(i, j);
    StructureConstants out(field_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        const auto p = product(cols[i], cols[j]);
        for (std::size_t k = 0; k < dim_; ++k) {
          auto acc = field_.zero();
          for (std::size_t l = 0; l < dim_; ++l) acc = field_.add(acc, field_.mul((*inv)(k, l), p[l]));
          out.table_[i][j][k] = acc;
        }
      }
    return out;
  }

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
    return a.dim_ == b.dim_ && a.table_ == b.table_;
  }

 private:
  F field_;
  std::size_t dim_ = 0;
  std::vector<std::vector<Vector>> table_;
};

template <Field F>
struct SemialgebraReport {
  bool cube_zero;
  std::size_t square_dim;
  bool commutative;
  bool anticommutative;
};

namespace detail {

/// All products e_i e_j as rows.
template <Field F>
Matrix<F> product_rows(const StructureConstants<F>& r) {
  const std::size_t n = r.dim();
  Matrix<F> m(r.field(), n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(i * n + j, k) = r(i, j)[k];
  return m;
}

template <Field F>
std::vector<typename F::Element> unit(const F& f, std::size_t n, std::size_t i) {
  std::vector<typename F::Element> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <Field F>
bool cube_zero(const StructureConstants<F>& r) {
  const F& f = r.field();
  const std::size_t n = r.dim();
  auto zero = [&](const std::vector<typename F::Element>& v) {
    return std::all_of(v.begin(), v.end(), [&](const auto& e) { return f.is_zero(e); });
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto ek = unit(f, n, k);
        if (!zero(r.product(r(i, j), ek)) || !zero(r.product(ek, r(i, j)))) return false;
      }
  return true;
}

}  // namespace detail

template <Field F>
SemialgebraReport<F> check_semialgebra(const StructureConstants<F>& r) {
  return {detail::cube_zero(r), rank(detail::product_rows(r)), r.is_commutative(), r.is_anticommutative()};
}

/// Algebra on F^n, n = t + m, with e_i e_j = e_i f_j = 0 and
/// f_i f_j = sum_k (A_k)_{ij} e_k.
template <Field F>
StructureConstants<F> semialgebra_from_tuple(const MatrixTuple<F>& t) {
  require(t.is_square(), ErrorKind::SizeMismatch, "tuple members must be square");
  const F& f = t.field();
  require(linearly_independent<F>(f, t.members()), ErrorKind::LinearlyDependent, "tuple members are linearly dependent");
  const bool sym = std::all_of(t.members().begin(), t.members().end(), [](const auto& a) { return a.is_symmetric(); });
  const bool skew = std::all_of(t.members().begin(), t.members().end(), [](const auto& a) { return a.is_skew(); });
  require(sym || skew, ErrorKind::MixedSymmetryTypes, "members must be all symmetric or all skew-symmetric");
  const std::size_t k = t.arity(), m = t.rows();
  StructureConstants<F> r(f, k + m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) r(k + i, k + j)[l] = t[l](i, j);
  return r;
}

template <Field F>
struct ExtractedTuple {
  MatrixTuple<F> tuple;
  /// Columns are the new basis in old coordinates: R.in_basis(basis_change)
  /// equals semialgebra_from_tuple(tuple).
  Matrix<F> basis_change;
};

/// Picks a basis of R² (reduced echelon rows of the products), completes it
/// with standard vectors, and reads the tuple off the products of the complement.
template <Field F>
ExtractedTuple<F> tuple_from_semialgebra(const StructureConstants<F>& r) {
  const F& f = r.field();
  const std::size_t n = r.dim();
  const auto report = check_semialgebra(r);
  require(report.cube_zero, ErrorKind::RadicalCubeNonzero, "R^3 is not zero");
  require(report.commutative || report.anticommutative, ErrorKind::NotHomogeneousSymmetry,
          "multiplication is neither commutative nor anticommutative");
  const std::size_t t = report.square_dim;
  require(t >= 1, ErrorKind::ArityMismatch, "R^2 is zero, so there is no tuple");

  const auto rr = rank_rref(detail::product_rows(r));
  Matrix<F> basis(f, n, n);
  std::vector<Matrix<F>> chosen;
  for (std::size_t i = 0; i < t; ++i) chosen.push_back(rr.rref.block(i, 0, 1, n));
  for (std::size_t j = 0; j < n && chosen.size() < n; ++j) {
    Matrix<F> e(f, 1, n);
    e(0, j) = f.one();
    chosen.push_back(e);
    if (!linearly_independent<F>(f, chosen)) chosen.pop_back();
  }
  require(chosen.size() == n, ErrorKind::Internal, "basis completion failed");
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) basis(i, c) = chosen[c](0, i);

  const auto moved = r.in_basis(basis);
  const std::size_t m = n - t;
  std::vector<Matrix<F>> members(t, Matrix<F>(f, m, m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto& v = moved(t + i, t + j);
      for (std::size_t k = t; k < n; ++k) require(f.is_zero(v[k]), ErrorKind::Internal, "product left R^2");
      for (std::size_t k = 0; k < t; ++k) members[k](i, j) = v[k];
    }
  MatrixTuple<F> tuple(std::move(members));
  require(semialgebra_from_tuple(tuple) == moved, ErrorKind::Internal, "extracted tuple does not reproduce the algebra");
  return {std::move(tuple), std::move(basis)};
}

/// Λ = F·1 ⊕ R with 1 as basis vector 0.
template <Field F>
StructureConstants<F> adjoin_identity(const StructureConstants<F>& r) {
  require(r.is_commutative(), ErrorKind::NotCommutative, "identity adjunction needs a commutative algebra");
  require(detail::cube_zero(r), ErrorKind::RadicalCubeNonzero, "R^3 is not zero");
  const F& f = r.field();
  const std::size_t n = r.dim();
  StructureConstants<F> out(f, n + 1);
  out(0, 0)[0] = f.one();
  for (std::size_t i = 0; i < n; ++i) {
    out(0, i + 1)[i + 1] = f.one();
    out(i + 1, 0)[i + 1] = f.one();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out(i + 1, j + 1)[k + 1] = r(i, j)[k];
  }
  return out;
}

/// (b_i b_j) b_k = b_i (b_j b_k) over all basis triples.
template <Field F>
bool is_associative(const StructureConstants<F>& r) {
  const std::size_t n = r.dim();
  const F& f = r.field();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto ek = detail::unit(f, n, k), ei = detail::unit(f, n, i);
        if (r.product(r(i, j), ek) != r.product(ei, r(j, k))) return false;
      }
  return true;
}

/// Isomorphism class of a Lie algebra with central commutator of dimension 1 or 2.
template <Field F>
struct LieLabel {
  std::size_t t = 0;
  std::size_t dim = 0;
  /// t = 1: p + 2q = dim.
  std::size_t p = 0, q = 0;
  /// t = 2.
  std::vector<std::size_t> minimal;
  PointConfiguration<F> points;
  bool split = true;

  friend bool operator==(const LieLabel&, const LieLabel&) = default;
};

template <Field F>
void require_lie(const StructureConstants<F>& l) {
  require(l.is_anticommutative(), ErrorKind::NotLie, "multiplication is not anticommutative");
  require(detail::cube_zero(l), ErrorKind::NotLie, "L^3 is not zero");
}

template <Field F>
LieLabel<F> lie_classify(const StructureConstants<F>& l) {
  require_lie(l);
  const F& f = l.field();
  const auto t = check_semialgebra(l).square_dim;
  require(t == 1 || t == 2, ErrorKind::WrongCommutatorDim, "commutator dimension must be 1 or 2");
  const auto ex = tuple_from_semialgebra(l);
  LieLabel<F> label;
  label.t = t;
  label.dim = l.dim();
  if (t == 1) {
    label.q = rank(ex.tuple[0]) / 2;
    label.p = l.dim() - 2 * label.q;
    return label;
  }
  const auto inv = pencil_invariants(MatrixPair<F>::from_tuple(ex.tuple));
  label.minimal = inv.minimal;
  label.split = inv.splits();
  label.points = mobius_canonicalize(f, configuration_of(f, inv)).canonical;
  return label;
}

template <Field F>
bool lie_isomorphic(const StructureConstants<F>& a, const StructureConstants<F>& b) {
  const auto la = lie_classify(a);
  const auto lb = lie_classify(b);
  return la == lb;
}

/// A Lie algebra with the given label, built from the canonical pair.
template <Field F>
StructureConstants<F> emit_canonical_algebra(const F& f, const LieLabel<F>& label) {
  if (label.t == 1) {
    require(label.p >= 1 && label.q >= 1 && label.p + 2 * label.q == label.dim, ErrorKind::UnrealizableLabel,
            "need p >= 1, q >= 1 and p + 2q = dim");
    Matrix<F> a(f, label.dim - 1, label.dim - 1);
    const std::size_t off = label.p - 1;
    for (std::size_t i = 0; i < label.q; ++i) {
      a(off + i, off + label.q + i) = f.one();
      a(off + label.q + i, off + i) = f.neg(f.one());
    }
    return semialgebra_from_tuple(MatrixTuple<F>({a}));
  }
  require(label.t == 2, ErrorKind::UnrealizableLabel, "commutator dimension must be 1 or 2");
  auto points = label.points;
  bool has_inf = false;
  for (const auto& [p, s] : points.entries()) has_inf = has_inf || p.is_infinity();
  if (has_inf) {
    // Move ∞ to 0 by x ↦ 1/(x - c) with c the smallest element outside the support.
    std::optional<typename F::Element> c;
    auto free = [&](const typename F::Element& e) {
      for (const auto& [p, s] : points.entries())
        if (p.is_point() && f.compare(p.value(), e) == 0) return false;
      return true;
    };
    if constexpr (FiniteField<F>) {
      std::vector<typename F::Element> all;
      for (std::uint64_t i = 0; i < f.order(); ++i) all.push_back(f.element_at(i));
      std::sort(all.begin(), all.end(), [&](const auto& x, const auto& y) { return f.compare(x, y) < 0; });
      for (const auto& e : all)
        if (free(e)) {
          c = e;
          break;
        }
    } else {
      // Encoding order on Q starts 0, 1, -1, 2, -2, ...
      for (long long v = 0; !c; v = v > 0 ? -v : 1 - v)
        if (free(f.from_int(v))) c = f.from_int(v);
    }
    // With every rational place occupied, the infinite blocks are emitted as is.
    if (c) points = points.mapped(Mobius<F>{f.neg(*c), f.one(), f.one(), f.zero()});
  }
  const auto pair = emit_canonical_pair(f, invariants_of(f, points, label.minimal));
  require(pair.size() + 2 == label.dim, ErrorKind::UnrealizableLabel, "label blocks do not match the dimension");
  const Matrix<F> members[] = {pair.a, pair.b};
  require(linearly_independent<F>(f, members), ErrorKind::UnrealizableLabel,
          "the pair is linearly dependent (one point, all sizes and indices 1)");
  return semialgebra_from_tuple(pair.tuple());
}

/// GAP input for the p-group of class 2 with central generators a_l and
/// generators b_i, [b_i, b_j] = prod_l a_l^{(A_l)_{ij}}.
template <Field F>
std::string pgroup_presentation(const MatrixTuple<F>& t) {
  const F& f = t.field();
  const auto spec = f.spec();
  require(spec.is_finite() && spec.k == 1, ErrorKind::NotPrimeField, "presentations need a prime field");
  require(t.is_square(), ErrorKind::SizeMismatch, "tuple members must be square");
  for (const auto& a : t.members()) require(a.is_skew(), ErrorKind::NotSkew, "members must be skew-symmetric");
  require(linearly_independent<F>(f, t.members()), ErrorKind::LinearlyDependent, "tuple members are linearly dependent");
  const std::size_t k = t.arity(), n = t.rows();
  const auto p = spec.p;
  auto a = [](std::size_t i) { return "a" + std::to_string(i + 1); };
  auto b = [](std::size_t i) { return "b" + std::to_string(i + 1); };

  std::vector<std::string> rels;
  for (std::size_t l = 0; l < k; ++l) rels.push_back(a(l) + "^" + std::to_string(p));
  for (std::size_t i = 0; i < n; ++i) rels.push_back(b(i) + "^" + std::to_string(p));
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t r = l + 1; r < k; ++r) rels.push_back("Comm(" + a(l) + "," + a(r) + ")");
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t i = 0; i < n; ++i) rels.push_back("Comm(" + a(l) + "," + b(i) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::string word;
      for (std::size_t l = 0; l < k; ++l) {
        std::uint64_t e = 0;
        if constexpr (FiniteField<F>) e = f.index_of(t[l](i, j));
        if (e == 0) continue;
        if (!word.empty()) word += "*";
        word += a(l) + "^" + std::to_string(e);
      }
      rels.push_back("Comm(" + b(i) + "," + b(j) + ")" + (word.empty() ? "" : "/(" + word + ")"));
    }

  std::ostringstream out;
  out << "F := FreeGroup(";
  for (std::size_t l = 0; l < k; ++l) out << (l ? ", " : "") << '"' << a(l) << '"';
  for (std::size_t i = 0; i < n; ++i) out << ", \"" << b(i) << '"';
  out << ");;\nAssignGeneratorVariables(F);;\nrels := [\n";
  for (std::size_t i = 0; i < rels.size(); ++i) out << "  " << rels[i] << (i + 1 < rels.size() ? ",\n" : "\n");
  out << "];;\nG := F / rels;;\n";
  return out.str();
}

}  // namespace congru
