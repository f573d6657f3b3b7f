#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "congru/error.hpp"
#include "congru/matrix.hpp"
#include "congru/polynomial.hpp"

namespace congru {

/// Dense matrix of univariate polynomials.
template <Field F>
class PolyMatrix {
 public:
  using Poly = Polynomial<F>;

  PolyMatrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, Poly(field_)) {}

  static PolyMatrix identity(const F& f, std::size_t n) {
    PolyMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(f, f.one());
    return m;
  }

  /// The pencil x*A + B as a polynomial matrix.
  static PolyMatrix pencil(const Matrix<F>& a, const Matrix<F>& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::SizeMismatch, "pencil members differ in shape");
    const F& f = a.field();
    PolyMatrix m(f, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Poly(f, {b(i, j), a(i, j)});
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    require(a.cols_ == b.rows_, ErrorKind::SizeMismatch, "polynomial matrix product shape");
    PolyMatrix r(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + a(i, k) * b(k, j);
      }
    return r;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row_i += q * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Poly& q) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(j, c).is_zero()) (*this)(i, c) = (*this)(i, c) + q * (*this)(j, c);
  }
  /// col_i += q * col_j
  void add_col_multiple(std::size_t i, std::size_t j, const Poly& q) {
    for (std::size_t r = 0; r < rows_; ++r)
      if (!(*this)(r, j).is_zero()) (*this)(r, i) = (*this)(r, i) + (*this)(r, j) * q;
  }
  void scale_row(std::size_t i, const typename F::Element& s) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = (*this)(i, c).scaled(s);
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Poly> data_;
};

template <Field F>
struct SmithForm {
  /// Nonzero invariant factors d_1 | d_2 | ... | d_r, all monic.
  std::vector<Polynomial<F>> invariant_factors;
  /// Unimodular transforms with left * P * right = diag(d_1, ..., d_r, 0, ...),
  /// present when requested.
  std::optional<PolyMatrix<F>> left;
  std::optional<PolyMatrix<F>> right;

  std::size_t rank() const { return invariant_factors.size(); }
};

/// Smith normal form over F[x] by Euclidean row and column reduction.
template <Field F>
SmithForm<F> smith(PolyMatrix<F> m, bool track_transforms = false) {
  using Poly = Polynomial<F>;
  const F& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::optional<PolyMatrix<F>> u, v;
  if (track_transforms) {
    u = PolyMatrix<F>::identity(f, rows);
    v = PolyMatrix<F>::identity(f, cols);
  }
  SmithForm<F> out;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      long best = -1;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (!m(i, j).is_zero() && (best < 0 || m(i, j).degree() < best)) {
            best = m(i, j).degree();
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        out.left = std::move(u);
        out.right = std::move(v);
        return out;
      }
      if (pi != k) {
        m.swap_rows(pi, k);
        if (u) u->swap_rows(pi, k);
      }
      if (pj != k) {
        m.swap_cols(pj, k);
        if (v) v->swap_cols(pj, k);
      }
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (m(i, k).is_zero()) continue;
        Poly q = -(m(i, k) / m(k, k));
        m.add_row_multiple(i, k, q);
        if (u) u->add_row_multiple(i, k, q);
        clean = clean && m(i, k).is_zero();
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (m(k, j).is_zero()) continue;
        Poly q = -(m(k, j) / m(k, k));
        m.add_col_multiple(j, k, q);
        if (v) v->add_col_multiple(j, k, q);
        clean = clean && m(k, j).is_zero();
      }
      if (!clean) continue;
      // The pivot must divide every remaining entry; otherwise fold the offending
      // row into row k and reduce again.
      std::size_t bad = rows;
      for (std::size_t i = k + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (!m(k, k).divides(m(i, j))) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      const Poly one = Poly::constant(f, f.one());
      m.add_row_multiple(k, bad, one);
      if (u) u->add_row_multiple(k, bad, one);
    }
    const auto s = f.inv(m(k, k).lead());
    m.scale_row(k, s);
    if (u) u->scale_row(k, s);
    out.invariant_factors.push_back(m(k, k));
  }
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

}  // namespace congru
