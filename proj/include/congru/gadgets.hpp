#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "congru/linalg.hpp"
#include "congru/random.hpp"
#include "congru/tuples.hpp"

namespace congru {

/// Signs (eps1, eps2, eps3) of the gadget triple.
template <Field F>
using EpsilonSignature = std::array<typename F::Element, 3>;

/// 4n x 4n nilpotent matrix with I_n on the first block superdiagonal.
template <Field F>
Matrix<F> build_J4(const F& f, std::size_t n) {
  require(n >= 1, ErrorKind::SizeMismatch, "J4 needs n >= 1");
  Matrix<F> j(f, 4 * n, 4 * n);
  for (std::size_t b = 0; b < 3; ++b) j.set_block(b * n, (b + 1) * n, Matrix<F>::identity(f, n));
  return j;
}

/// diag(I_n, A, B, 0_n).
template <Field F>
Matrix<F> build_D(const Matrix<F>& a, const Matrix<F>& b) {
  require(a.is_square() && b.is_square() && a.rows() == b.rows(), ErrorKind::SizeMismatch,
          "D(A, B) needs square A, B of equal size");
  const F& f = a.field();
  const std::size_t n = a.rows();
  const Matrix<F> parts[] = {Matrix<F>::identity(f, n), a, b, Matrix<F>(f, n, n)};
  return block_diag<F>(f, parts);
}

/// The triple (I_4n, J4(0_n), D(A, B)), before lifting.
template <Field F>
MatrixTuple<F> build_G(const MatrixPair<F>& p) {
  const F& f = p.field();
  return MatrixTuple<F>({Matrix<F>::identity(f, 4 * p.size()), build_J4(f, p.size()), build_D(p.a, p.b)});
}

/// T_eps(A, B): each member of build_G lifted with its own sign.
template <Field F>
MatrixTuple<F> build_T(const MatrixPair<F>& p, const EpsilonSignature<F>& eps) {
  const F& f = p.field();
  require(!f.is_zero(eps[0]) && !f.is_zero(eps[1]), ErrorKind::InvalidEpsilon, "eps1 and eps2 must be nonzero");
  const auto g = build_G(p);
  std::vector<Matrix<F>> out;
  for (std::size_t i = 0; i < 3; ++i) out.push_back(vee_lift(MatrixTuple<F>({g[i]}), eps[i])[0]);
  return MatrixTuple<F>(std::move(out));
}

/// R = diag(S^-T x4, S x4). The signs do not enter R.
template <Field F>
Matrix<F> witness_from_similarity(const Matrix<F>& s) {
  require(s.is_square(), ErrorKind::SizeMismatch, "similarity witness must be square");
  const auto inv = try_inverse(s);
  require(inv.has_value(), ErrorKind::Singular, "similarity witness is singular");
  const auto u = inv->transpose();
  std::vector<Matrix<F>> parts{u, u, u, u, s, s, s, s};
  return block_diag<F>(s.field(), parts);
}

template <Field F>
bool verify_similarity(const MatrixPair<F>& p1, const MatrixPair<F>& p2, const Matrix<F>& s) {
  if (s.rows() != p1.size() || !s.is_square() || p1.size() != p2.size()) return false;
  const auto inv = try_inverse(s);
  if (!inv) return false;
  return *inv * p1.a * s == p2.a && *inv * p1.b * s == p2.b;
}

/// Rᵀ T1 R = T2 memberwise.
template <Field F>
bool verify_congruence(const MatrixTuple<F>& t1, const MatrixTuple<F>& t2, const Matrix<F>& r) {
  if (t1.arity() != t2.arity() || !t1.is_square() || t1.rows() != t2.rows() || t2.rows() != t2.cols()) return false;
  if (!r.is_square() || r.rows() != t1.rows() || !is_invertible(r)) return false;
  return apply_congruence(t1, r) == t2;
}

namespace detail {

/// Basis of {X : X A = C X, X B = D X} as n x n matrices.
template <Field F>
std::vector<Matrix<F>> intertwiners(const MatrixPair<F>& p1, const MatrixPair<F>& p2) {
  const F& f = p1.field();
  const std::size_t n = p1.size();
  // Unknown x_{ij} sits at column i*n + j.
  Matrix<F> sys(f, 2 * n * n, n * n);
  const std::pair<const Matrix<F>*, const Matrix<F>*> eqs[] = {{&p1.a, &p2.a}, {&p1.b, &p2.b}};
  std::size_t row = 0;
  for (const auto& [left, right] : eqs)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++row) {
        // (XA)_{ij} - (CX)_{ij} = sum_k x_{ik} A_{kj} - C_{ik} x_{kj}
        for (std::size_t k = 0; k < n; ++k) {
          sys(row, i * n + k) = f.add(sys(row, i * n + k), (*left)(k, j));
          sys(row, k * n + j) = f.sub(sys(row, k * n + j), (*right)(i, k));
        }
      }
  const auto ker = nullspace(sys);
  std::vector<Matrix<F>> basis;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    Matrix<F> x(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) = ker(i * n + j, c);
    basis.push_back(std::move(x));
  }
  return basis;
}

template <Field F>
Matrix<F> combine(const std::vector<Matrix<F>>& basis, const std::vector<typename F::Element>& coef, std::size_t n) {
  const F& f = basis.front().field();
  Matrix<F> x(f, n, n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!f.is_zero(coef[i])) x = x + basis[i].scaled(coef[i]);
  return x;
}

}  // namespace detail

/// Default cap on exhaustive coefficient searches.
inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

/// Decides whether S⁻¹(A, B)S = (C, D) for some invertible S and returns such S.
/// Searches the intertwiner space: deterministic samples first, then a
/// coefficient grid that is large enough to be a proof of absence.
template <Field F>
std::optional<Matrix<F>> intertwiner_similarity(const MatrixPair<F>& p1, const MatrixPair<F>& p2,
                                                std::uint64_t budget = kDefaultSearchBudget) {
  require(p1.size() == p2.size(), ErrorKind::SizeMismatch, "pairs differ in size");
  require(p1.field() == p2.field(), ErrorKind::InvalidField, "pairs over different fields");
  const F& f = p1.field();
  const std::size_t n = p1.size();
  if (n == 0) return Matrix<F>(f, 0, 0);

  const auto hom = detail::intertwiners(p1, p2);
  const std::size_t d = hom.size();
  if (d == 0) return std::nullopt;
  // Similar pairs have isomorphic Hom and End spaces.
  if (detail::intertwiners(p1, p1).size() != d || detail::intertwiners(p2, p2).size() != d) return std::nullopt;

  auto accept = [&](const Matrix<F>& x) -> std::optional<Matrix<F>> {
    auto s = try_inverse(x);
    if (!s) return std::nullopt;
    require(verify_similarity(p1, p2, *s), ErrorKind::Internal, "intertwiner does not verify");
    return s;
  };

  for (const auto& x : hom)
    if (auto s = accept(x)) return s;
  Rng rng(0x5eed);
  for (int trial = 0; trial < 32; ++trial) {
    std::vector<typename F::Element> c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(random_element(f, rng));
    if (auto s = accept(detail::combine(hom, c, n))) return s;
  }

  // det(sum c_i X_i) has degree <= n in each c_i, so if it is a nonzero
  // function it is nonzero somewhere on S^d for any |S| = n + 1. Over a field
  // with at most n elements S is the whole field.
  std::vector<typename F::Element> grid;
  if constexpr (FiniteField<F>) {
    for (std::uint64_t i = 0; i < f.order() && i <= n; ++i) grid.push_back(f.element_at(i));
  } else {
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(f.from_int(static_cast<long long>(i)));
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total *= grid.size();
    if (total > budget) fail(ErrorKind::DeskScaleExceeded, "intertwiner search space exceeds the budget");
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<typename F::Element> c(d, grid.front());
  for (std::uint64_t step = 0; step < total; ++step) {
    for (std::size_t i = 0; i < d; ++i) c[i] = grid[idx[i]];
    if (auto s = accept(detail::combine(hom, c, n))) return s;
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < grid.size()) break;
      idx[i] = 0;
    }
  }
  return std::nullopt;
}

/// (I_100,0,0)^▽ ⊕ (0,I_50,0)^▽ ⊕ (0,0,I_20)^▽ ⊕ (I_1,I_1,I_1)^▽ ⊕ G(A,B)^▽,
/// all lifted with the same sign.
template <Field F>
MatrixTuple<F> build_T_lemma42(const MatrixPair<F>& p, const typename F::Element& eps) {
  const F& f = p.field();
  auto unit = [&](std::size_t size, std::size_t slot) {
    std::vector<Matrix<F>> m(3, Matrix<F>(f, size, size));
    m[slot] = Matrix<F>::identity(f, size);
    return MatrixTuple<F>(std::move(m));
  };
  const auto one = Matrix<F>::identity(f, 1);
  const MatrixTuple<F> parts[] = {
      vee_lift(unit(100, 0), eps), vee_lift(unit(50, 1), eps),   vee_lift(unit(20, 2), eps),
      vee_lift(MatrixTuple<F>({one, one, one}), eps), vee_lift(build_G(p), eps),
  };
  return direct_sum<F>(parts);
}

}  // namespace congru
