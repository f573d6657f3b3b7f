#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "congru/error.hpp"
#include "congru/field.hpp"

namespace congru {

/// Dense row-major matrix over a runtime field. Sizes 0 x m and n x 0 are legal;
/// there is exactly one matrix of each such size.
template <Field F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() = default;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(data_.size() == rows_ * cols_, ErrorKind::SizeMismatch, "entry count does not match shape");
  }

  /// Builds from small integer literals, reduced into the field.
  static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      require(row.size() == c, ErrorKind::SizeMismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix diagonal(const F& field, std::span<const Element> diag) {
    Matrix m(field, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const Element> entries() const { return data_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix scaled(const Element& s) const {
    Matrix r = *this;
    for (auto& e : r.data_) e = field_.mul(s, e);
    return r;
  }

  /// True iff M^T = eps * M.
  bool is_symmetric_type(const Element& eps) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (!field_.equal((*this)(j, i), field_.mul(eps, (*this)(i, j)))) return false;
    return true;
  }
  bool is_symmetric() const { return is_symmetric_type(field_.one()); }
  bool is_skew() const { return is_symmetric_type(field_.neg(field_.one())); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorKind::SizeMismatch, "block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, ErrorKind::SizeMismatch, "block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Element trace() const {
    Element t = field_.zero();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = field_.add(t, (*this)(i, i));
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!a.field_.equal(a.data_[i], b.data_[i])) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::SizeMismatch, "matrix sum shape");
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.field_.add(r.data_[i], b.data_[i]);
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::SizeMismatch, "matrix difference shape");
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.field_.sub(r.data_[i], b.data_[i]);
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, ErrorKind::SizeMismatch, "matrix product shape");
    const F& f = a.field_;
    Matrix r(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Element& aik = a(i, k);
        if (f.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = f.add(r(i, j), f.mul(aik, b(k, j)));
      }
    return r;
  }

  /// Lexicographic order on (rows, cols, entries) under the field's encoding order.
  friend std::strong_ordering compare(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (auto c = a.field_.compare(a.data_[i], b.data_[i]); c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + field_.to_string((*this)(i, j));
      s += "]\n";
    }
    return s;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// Block-diagonal sum. Zero-sized operands shift the following blocks, so
/// M (+) 0_{p,0} appends p zero rows and M (+) 0_{0,q} appends q zero columns.
template <Field F>
Matrix<F> block_diag(const F& field, std::span<const Matrix<F>> parts) {
  std::size_t r = 0, c = 0;
  for (const auto& m : parts) {
    r += m.rows();
    c += m.cols();
  }
  Matrix<F> out(field, r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& m : parts) {
    out.set_block(r0, c0, m);
    r0 += m.rows();
    c0 += m.cols();
  }
  return out;
}

template <Field F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
  std::vector<Matrix<F>> parts{a, b};
  return block_diag<F>(a.field(), parts);
}

/// Nilpotent Jordan-type block of size n with `lambda` on the diagonal and ones above it.
template <Field F>
Matrix<F> jordan_block(const F& field, std::size_t n, const typename F::Element& lambda) {
  Matrix<F> j(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = lambda;
    if (i + 1 < n) j(i, i + 1) = field.one();
  }
  return j;
}

}  // namespace congru
