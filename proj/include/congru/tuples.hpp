#pragma once

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <span>
#include <vector>

#include "congru/linalg.hpp"
#include "congru/matrix.hpp"

namespace congru {

/// A nonempty sequence of equally sized matrices over one field.
template <Field F>
class MatrixTuple {
 public:
  using Element = typename F::Element;

  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<Matrix<F>> members) : members_(std::move(members)) {
    require(!members_.empty(), ErrorKind::ArityMismatch, "a matrix tuple needs at least one member");
    for (const auto& m : members_)
      require(m.rows() == rows() && m.cols() == cols(), ErrorKind::SizeMismatch, "tuple members differ in size");
  }
  MatrixTuple(std::initializer_list<Matrix<F>> members) : MatrixTuple(std::vector<Matrix<F>>(members)) {}

  const F& field() const { return members_.front().field(); }
  std::size_t arity() const { return members_.size(); }
  std::size_t rows() const { return members_.front().rows(); }
  std::size_t cols() const { return members_.front().cols(); }
  bool is_square() const { return rows() == cols(); }

  const std::vector<Matrix<F>>& members() const { return members_; }
  const Matrix<F>& operator[](std::size_t i) const { return members_[i]; }

  friend bool operator==(const MatrixTuple& a, const MatrixTuple& b) { return a.members_ == b.members_; }

 private:
  std::vector<Matrix<F>> members_;
};

/// Two square matrices of the same size.
template <Field F>
struct MatrixPair {
  Matrix<F> a, b;

  MatrixPair(Matrix<F> a_, Matrix<F> b_) : a(std::move(a_)), b(std::move(b_)) {
    require(a.is_square() && b.is_square() && a.rows() == b.rows(), ErrorKind::SizeMismatch,
            "pair members must be square of equal size");
  }
  static MatrixPair from_tuple(const MatrixTuple<F>& t) {
    require(t.arity() == 2, ErrorKind::ArityMismatch, "a pair has two members");
    return MatrixPair(t[0], t[1]);
  }

  const F& field() const { return a.field(); }
  std::size_t size() const { return a.rows(); }
  MatrixTuple<F> tuple() const { return MatrixTuple<F>({a, b}); }
  friend bool operator==(const MatrixPair&, const MatrixPair&) = default;
};

/// X ↦ [[0, X], [eps Xᵀ, 0]] applied to each member.
template <Field F>
MatrixTuple<F> vee_lift(const MatrixTuple<F>& t, const typename F::Element& eps) {
  const F& f = t.field();
  const std::size_t m = t.rows(), n = t.cols();
  std::vector<Matrix<F>> out;
  for (const auto& a : t.members()) {
    Matrix<F> v(f, m + n, m + n);
    v.set_block(0, m, a);
    v.set_block(m, 0, a.transpose().scaled(eps));
    out.push_back(std::move(v));
  }
  return MatrixTuple<F>(std::move(out));
}

template <Field F>
MatrixTuple<F> direct_sum(std::span<const MatrixTuple<F>> ts) {
  require(!ts.empty(), ErrorKind::ArityMismatch, "direct sum of no tuples");
  const std::size_t t = ts.front().arity();
  for (const auto& x : ts) require(x.arity() == t, ErrorKind::ArityMismatch, "direct sum of tuples of different arity");
  std::vector<Matrix<F>> out;
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<Matrix<F>> parts;
    for (const auto& x : ts) parts.push_back(x[i]);
    out.push_back(block_diag<F>(ts.front().field(), parts));
  }
  return MatrixTuple<F>(std::move(out));
}

template <Field F>
MatrixTuple<F> direct_sum(const MatrixTuple<F>& a, const MatrixTuple<F>& b) {
  const MatrixTuple<F> parts[] = {a, b};
  return direct_sum<F>(parts);
}

/// Aᵢ ↦ Qᵀ Aᵢ Q.
template <Field F>
MatrixTuple<F> apply_congruence(const MatrixTuple<F>& t, const Matrix<F>& q) {
  require(t.is_square(), ErrorKind::SizeMismatch, "congruence needs square members");
  require(q.is_square() && q.rows() == t.rows(), ErrorKind::SizeMismatch, "congruence matrix has the wrong size");
  require(is_invertible(q), ErrorKind::Singular, "congruence matrix is singular");
  const auto qt = q.transpose();
  std::vector<Matrix<F>> out;
  for (const auto& a : t.members()) out.push_back(qt * a * q);
  return MatrixTuple<F>(std::move(out));
}

/// Aᵢ ↦ R Aᵢ S.
template <Field F>
MatrixTuple<F> apply_equivalence(const MatrixTuple<F>& t, const Matrix<F>& r, const Matrix<F>& s) {
  require(r.is_square() && r.rows() == t.rows() && s.is_square() && s.rows() == t.cols(), ErrorKind::SizeMismatch,
          "equivalence matrices have the wrong size");
  require(is_invertible(r) && is_invertible(s), ErrorKind::Singular, "equivalence matrix is singular");
  std::vector<Matrix<F>> out;
  for (const auto& a : t.members()) out.push_back(r * a * s);
  return MatrixTuple<F>(std::move(out));
}

/// Member i becomes sum_j gamma(i, j) A_j.
template <Field F>
MatrixTuple<F> apply_substitution(const MatrixTuple<F>& t, const Matrix<F>& gamma) {
  require(gamma.is_square() && gamma.rows() == t.arity(), ErrorKind::ArityMismatch,
          "substitution matrix must be t x t");
  require(t.is_square(), ErrorKind::SizeMismatch, "substitution needs square members");
  require(is_invertible(gamma), ErrorKind::Singular, "substitution matrix is singular");
  const F& f = t.field();
  std::vector<Matrix<F>> out;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    Matrix<F> acc(f, t.rows(), t.cols());
    for (std::size_t j = 0; j < t.arity(); ++j)
      if (!f.is_zero(gamma(i, j))) acc = acc + t[j].scaled(gamma(i, j));
    out.push_back(std::move(acc));
  }
  return MatrixTuple<F>(std::move(out));
}

/// Aᵢᵀ = epsᵢ Aᵢ for every member.
template <Field F>
bool check_form_types(const MatrixTuple<F>& t, std::span<const typename F::Element> eps) {
  require(eps.size() == t.arity(), ErrorKind::ArityMismatch, "one sign per member expected");
  if (!t.is_square()) return false;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (!t[i].is_symmetric_type(eps[i])) return false;
  return true;
}

enum class SplitMode { Auto, Simultaneous, Bipartite };

template <Field F>
struct SplitComponent {
  MatrixTuple<F> tuple;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Finest splitting of a tuple into a direct sum by permuting rows and columns.
/// Auto picks Simultaneous (same permutation on both sides) for square tuples.
template <Field F>
std::vector<SplitComponent<F>> permutation_split(const MatrixTuple<F>& t, SplitMode mode = SplitMode::Auto) {
  if (mode == SplitMode::Auto) mode = t.is_square() ? SplitMode::Simultaneous : SplitMode::Bipartite;
  require(mode == SplitMode::Bipartite || t.is_square(), ErrorKind::SizeMismatch,
          "simultaneous splitting needs square members");
  const F& f = t.field();
  const std::size_t m = t.rows(), n = t.cols();
  const bool simul = mode == SplitMode::Simultaneous;
  const std::size_t nodes = simul ? m : m + n;
  std::vector<std::size_t> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool nz = false;
      for (const auto& a : t.members()) nz = nz || !f.is_zero(a(i, j));
      if (!nz) continue;
      auto a = find(i), b = find(simul ? j : m + j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  // Roots are minimal node ids, so row nodes come first and sort by smallest row.
  std::vector<std::vector<std::size_t>> rows_of(nodes), cols_of(nodes);
  for (std::size_t i = 0; i < m; ++i) rows_of[find(i)].push_back(i);
  for (std::size_t j = 0; j < n; ++j) cols_of[find(simul ? j : m + j)].push_back(j);

  std::vector<SplitComponent<F>> out;
  for (std::size_t root = 0; root < nodes; ++root) {
    if (rows_of[root].empty() && cols_of[root].empty()) continue;
    const auto& rs = rows_of[root];
    const auto& cs = cols_of[root];
    std::vector<Matrix<F>> members;
    for (const auto& a : t.members()) {
      Matrix<F> b(f, rs.size(), cs.size());
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) b(i, j) = a(rs[i], cs[j]);
      members.push_back(std::move(b));
    }
    out.push_back({MatrixTuple<F>(std::move(members)), rs, cs});
  }
  return out;
}

/// Inverse of permutation_split: scatter the components back into place.
template <Field F>
MatrixTuple<F> reassemble(const std::vector<SplitComponent<F>>& parts, std::size_t rows, std::size_t cols) {
  require(!parts.empty(), ErrorKind::ArityMismatch, "nothing to reassemble");
  const F& f = parts.front().tuple.field();
  std::vector<Matrix<F>> members(parts.front().tuple.arity(), Matrix<F>(f, rows, cols));
  for (const auto& p : parts)
    for (std::size_t k = 0; k < members.size(); ++k)
      for (std::size_t i = 0; i < p.rows.size(); ++i)
        for (std::size_t j = 0; j < p.cols.size(); ++j) members[k](p.rows[i], p.cols[j]) = p.tuple[k](i, j);
  return MatrixTuple<F>(std::move(members));
}

}  // namespace congru
