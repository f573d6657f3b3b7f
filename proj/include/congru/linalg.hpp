#pragma once

#include <optional>
#include <vector>

#include "congru/error.hpp"
#include "congru/matrix.hpp"

namespace congru {

template <Field F>
struct RrefResult {
  std::size_t rank = 0;
  Matrix<F> rref;
  /// Invertible with transform * input = rref.
  Matrix<F> transform;
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan elimination tracking the accumulated row operations.
template <Field F>
RrefResult<F> rank_rref(const Matrix<F>& m) {
  const F& f = m.field();
  Matrix<F> a = m;
  Matrix<F> t = Matrix<F>::identity(f, m.rows());
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && f.is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
      for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t(piv, j), t(row, j));
    }
    const auto inv = f.inv(a(row, col));
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = f.mul(inv, a(row, j));
    for (std::size_t j = 0; j < t.cols(); ++j) t(row, j) = f.mul(inv, t(row, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || f.is_zero(a(i, col))) continue;
      const auto c = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(c, a(row, j)));
      for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) = f.sub(t(i, j), f.mul(c, t(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {row, std::move(a), std::move(t), std::move(pivots)};
}

/// Rank without tracking the transform.
template <Field F>
std::size_t rank(Matrix<F> a) {
  const F& f = a.field();
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && f.is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    const auto inv = f.inv(a(row, col));
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (f.is_zero(a(i, col))) continue;
      const auto c = f.mul(inv, a(i, col));
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(c, a(row, j)));
    }
    ++row;
  }
  return row;
}

template <Field F>
std::optional<Matrix<F>> try_inverse(const Matrix<F>& m) {
  require(m.is_square(), ErrorKind::SizeMismatch, "inverse of a non-square matrix");
  auto r = rank_rref(m);
  if (r.rank != m.rows()) return std::nullopt;
  return std::move(r.transform);
}

template <Field F>
Matrix<F> inverse(const Matrix<F>& m) {
  auto inv = try_inverse(m);
  require(inv.has_value(), ErrorKind::Singular, "matrix is not invertible");
  return std::move(*inv);
}

template <Field F>
bool is_invertible(const Matrix<F>& m) {
  return m.is_square() && rank(m) == m.rows();
}

/// Basis of the right kernel {v : M v = 0}, one basis vector per column of the result.
template <Field F>
Matrix<F> nullspace(const Matrix<F>& m) {
  const F& f = m.field();
  auto r = rank_rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  Matrix<F> basis(f, m.cols(), m.cols() - r.rank);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = f.one();
    for (std::size_t i = 0; i < r.rank; ++i) basis(r.pivot_cols[i], k) = f.neg(r.rref(i, free));
    ++k;
  }
  return basis;
}

/// Some solution x of M x = b, if the system is consistent.
template <Field F>
std::optional<Matrix<F>> solve(const Matrix<F>& m, const Matrix<F>& b) {
  require(m.rows() == b.rows(), ErrorKind::SizeMismatch, "right-hand side height");
  const F& f = m.field();
  Matrix<F> aug(f, m.rows(), m.cols() + b.cols());
  aug.set_block(0, 0, m);
  aug.set_block(0, m.cols(), b);
  auto r = rank_rref(aug);
  Matrix<F> x(f, m.cols(), b.cols());
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t pc = r.pivot_cols[i];
    if (pc >= m.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(pc, j) = r.rref(i, m.cols() + j);
  }
  return x;
}

/// Column-stacks the entries of each matrix; row i of the result is matrix i flattened.
template <Field F>
Matrix<F> flatten_rows(const F& f, std::span<const Matrix<F>> ms) {
  const std::size_t len = ms.empty() ? 0 : ms[0].rows() * ms[0].cols();
  Matrix<F> out(f, ms.size(), len);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    require(ms[i].rows() * ms[i].cols() == len, ErrorKind::SizeMismatch, "flatten: mixed sizes");
    for (std::size_t j = 0; j < len; ++j) out(i, j) = ms[i].entries()[j];
  }
  return out;
}

/// True iff the matrices are linearly independent as vectors.
template <Field F>
bool linearly_independent(const F& f, std::span<const Matrix<F>> ms) {
  return rank(flatten_rows(f, ms)) == ms.size();
}

}  // namespace congru
