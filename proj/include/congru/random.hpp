#pragma once

#include <cstdint>
#include <random>
#include <type_traits>

#include "congru/linalg.hpp"
#include "congru/matrix.hpp"

namespace congru {

/// Seeded generator used for every pinned random instance.
using Rng = std::mt19937_64;

/// Uniform element of a finite field; over Q a small integer in [-3, 3] or,
/// one time in four, a fraction with denominator 2 or 3.
template <Field F>
typename F::Element random_element(const F& f, Rng& rng) {
  if constexpr (FiniteField<F>) {
    std::uniform_int_distribution<std::uint64_t> d(0, f.order() - 1);
    return f.element_at(d(rng));
  } else {
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<int> kind(0, 3);
    auto v = f.from_int(num(rng));
    if (kind(rng) == 0) v = f.div(v, f.from_int(2 + static_cast<long long>(rng() % 2)));
    return v;
  }
}

template <Field F>
typename F::Element random_nonzero(const F& f, Rng& rng) {
  for (;;) {
    auto v = random_element(f, rng);
    if (!f.is_zero(v)) return v;
  }
}

template <Field F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_element(f, rng);
  return m;
}

template <Field F>
Matrix<F> random_invertible(const F& f, std::size_t n, Rng& rng) {
  for (;;) {
    auto m = random_matrix(f, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

/// Uniform skew-symmetric matrix (zero diagonal).
template <Field F>
Matrix<F> random_skew(const F& f, std::size_t n, Rng& rng) {
  Matrix<F> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = random_element(f, rng);
      m(j, i) = f.neg(m(i, j));
    }
  return m;
}

template <Field F>
Matrix<F> random_symmetric(const F& f, std::size_t n, Rng& rng) {
  Matrix<F> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = random_element(f, rng);
      m(j, i) = m(i, j);
    }
  return m;
}

}  // namespace congru
