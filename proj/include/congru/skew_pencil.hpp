#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "congru/factor.hpp"
#include "congru/linalg.hpp"
#include "congru/smith.hpp"
#include "congru/tuples.hpp"

namespace congru {

/// Congruence invariants of a pair of skew-symmetric matrices.
///
/// finite: (q, m) with q monic irreducible, one block (I, C(q^m))^▽ each, or
///   (I_m, J_m(λ))^▽ when q = x - λ.
/// infinite: m per block (J_m(0), I_m)^▽.
/// minimal: r per block (F_r, G_r)^▽.
template <Field F>
struct SkewPencilInvariants {
  std::vector<std::pair<Polynomial<F>, std::size_t>> finite;
  std::vector<std::size_t> infinite;
  std::vector<std::size_t> minimal;

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& [q, m] : finite) n += 2 * static_cast<std::size_t>(q.degree()) * m;
    for (auto m : infinite) n += 2 * m;
    for (auto r : minimal) n += 2 * r - 1;
    return n;
  }

  bool splits() const {
    return std::all_of(finite.begin(), finite.end(), [](const auto& d) { return d.first.degree() == 1; });
  }

  void normalize() {
    detail::sort_factors(finite);
    std::sort(infinite.begin(), infinite.end());
    std::sort(minimal.begin(), minimal.end());
  }

  friend bool operator==(const SkewPencilInvariants&, const SkewPencilInvariants&) = default;
};

/// F_m, G_m: (m-1) x m with ones at (i, i) and (i, i+1) respectively.
template <Field F>
std::pair<Matrix<F>, Matrix<F>> build_FG(const F& f, std::size_t m) {
  require(m >= 1, ErrorKind::SizeMismatch, "F_m, G_m need m >= 1");
  Matrix<F> a(f, m - 1, m), b(f, m - 1, m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    a(i, i) = f.one();
    b(i, i + 1) = f.one();
  }
  return {a, b};
}

template <Field F>
MatrixPair<F> emit_canonical_pair(const F& f, SkewPencilInvariants<F> inv) {
  inv.normalize();
  const auto minus = f.neg(f.one());
  std::vector<MatrixTuple<F>> blocks;
  auto lift = [&](Matrix<F> a, Matrix<F> b) { blocks.push_back(vee_lift(MatrixTuple<F>({a, b}), minus)); };
  for (const auto& [q, m] : inv.finite) {
    require(q.degree() >= 1 && q.is_monic(), ErrorKind::MalformedInput, "finite divisors must be monic of degree >= 1");
    require(m >= 1, ErrorKind::MalformedInput, "block sizes must be positive");
    if (q.degree() == 1) {
      lift(Matrix<F>::identity(f, m), jordan_block(f, m, f.neg(q.coeff(0))));
    } else {
      const auto c = companion(pow(q, m));
      lift(Matrix<F>::identity(f, c.rows()), c);
    }
  }
  for (auto m : inv.infinite) {
    require(m >= 1, ErrorKind::MalformedInput, "block sizes must be positive");
    lift(jordan_block(f, m, f.zero()), Matrix<F>::identity(f, m));
  }
  for (auto r : inv.minimal) {
    require(r >= 1, ErrorKind::MalformedInput, "minimal indices are reported as r >= 1");
    auto [a, b] = build_FG(f, r);
    lift(a, b);
  }
  if (blocks.empty()) return MatrixPair<F>(Matrix<F>(f, 0, 0), Matrix<F>(f, 0, 0));
  const auto sum = direct_sum<F>(blocks);
  return MatrixPair<F>(sum[0], sum[1]);
}

namespace detail {

/// Elementary divisors of a polynomial matrix: each prime power occurring in
/// an invariant factor, with the number of invariant factors it occurs in.
template <Field F>
std::vector<std::pair<std::pair<Polynomial<F>, std::size_t>, std::size_t>> elementary_divisors(const PolyMatrix<F>& p) {
  Factorization<F> all;
  for (const auto& d : smith(p).invariant_factors)
    for (auto& fe : factor(d)) all.push_back(std::move(fe));
  sort_factors(all);
  std::vector<std::pair<std::pair<Polynomial<F>, std::size_t>, std::size_t>> out;
  for (auto& fe : all) {
    if (!out.empty() && out.back().first == fe)
      ++out.back().second;
    else
      out.emplace_back(std::move(fe), 1);
  }
  return out;
}

/// Halves a multiplicity that must be even for a skew pencil.
inline std::size_t half(std::size_t count, const char* what) {
  require(count % 2 == 0, ErrorKind::Internal, std::string("odd multiplicity of ") + what + " in a skew pencil");
  return count / 2;
}

/// Column minimal indices of the pencil x*A - B via kernels of the stacked
/// coefficient systems for polynomial kernel vectors of degree <= k.
template <Field F>
std::vector<std::size_t> column_minimal_indices(const Matrix<F>& a, const Matrix<F>& b, std::size_t count) {
  const F& f = a.field();
  const std::size_t n = a.rows();
  std::vector<std::size_t> out;
  const auto mb = b.scaled(f.neg(f.one()));
  std::vector<long> kernel_dims;  // N_k
  auto leq = [&](std::size_t k) -> long {  // #indices <= k
    const long nk = kernel_dims[k];
    return k == 0 ? nk : nk - kernel_dims[k - 1];
  };
  for (std::size_t k = 0; out.size() < count; ++k) {
    require(k <= n, ErrorKind::Internal, "minimal index search did not terminate");
    Matrix<F> t(f, n * (k + 2), n * (k + 1));
    for (std::size_t i = 0; i <= k; ++i) {
      t.set_block(i * n, i * n, mb);
      t.set_block((i + 1) * n, i * n, a);
    }
    kernel_dims.push_back(static_cast<long>(t.cols() - rank(t)));
    const long exactly = leq(k) - (k == 0 ? 0 : leq(k - 1));
    require(exactly >= 0, ErrorKind::Internal, "negative minimal index count");
    for (long c = 0; c < exactly; ++c) out.push_back(k);
  }
  require(out.size() == count, ErrorKind::Internal, "minimal index count mismatch");
  return out;
}

}  // namespace detail

/// Invariants of the skew pair through the pencil x*A - B.
template <Field F>
SkewPencilInvariants<F> pencil_invariants(const MatrixPair<F>& p) {
  require(p.a.is_skew() && p.b.is_skew(), ErrorKind::NotSkew, "pair members must be skew-symmetric");
  const F& f = p.field();
  const std::size_t n = p.size();
  SkewPencilInvariants<F> inv;
  if (n == 0) return inv;
  const auto minus_b = p.b.scaled(f.neg(f.one()));

  const auto pencil = PolyMatrix<F>::pencil(p.a, minus_b);
  const auto normal_rank = smith(pencil).rank();
  for (const auto& [key, count] : detail::elementary_divisors(pencil))
    for (std::size_t i = 0; i < detail::half(count, "a finite elementary divisor"); ++i) inv.finite.push_back(key);

  // A - yB: its divisors y^m are the divisors at infinity of x*A - B.
  const auto y = Polynomial<F>::x(f);
  for (const auto& [key, count] : detail::elementary_divisors(PolyMatrix<F>::pencil(minus_b, p.a)))
    if (key.first == y)
      for (std::size_t i = 0; i < detail::half(count, "an infinite elementary divisor"); ++i) inv.infinite.push_back(key.second);

  for (auto eps : detail::column_minimal_indices(p.a, p.b, n - normal_rank)) inv.minimal.push_back(eps + 1);
  inv.normalize();
  require(inv.total_size() == n, ErrorKind::Internal, "pencil invariants do not account for the full size");
  return inv;
}

template <Field F>
bool pairs_congruent(const MatrixPair<F>& p1, const MatrixPair<F>& p2) {
  require(p1.size() == p2.size(), ErrorKind::SizeMismatch, "pairs differ in size");
  return pencil_invariants(p1) == pencil_invariants(p2);
}

/// The substitution (A, B) ↦ (αA + βB, γA + δB), acting on eigenvalues by
/// λ ↦ (γ + δλ)/(α + βλ).
template <Field F>
struct Mobius {
  typename F::Element alpha, beta, gamma, delta;

  Matrix<F> matrix(const F& f) const {
    Matrix<F> g(f, 2, 2);
    g(0, 0) = alpha;
    g(0, 1) = beta;
    g(1, 0) = gamma;
    g(1, 1) = delta;
    return g;
  }
  static Mobius identity(const F& f) { return {f.one(), f.zero(), f.zero(), f.one()}; }
  static Mobius from_matrix(const Matrix<F>& g) {
    require(g.rows() == 2 && g.cols() == 2, ErrorKind::SizeMismatch, "substitution must be 2 x 2");
    return {g(0, 0), g(0, 1), g(1, 0), g(1, 1)};
  }
  bool is_singular(const F& f) const { return f.is_zero(f.sub(f.mul(alpha, delta), f.mul(beta, gamma))); }
  /// The map applied after `first`.
  Mobius after(const F& f, const Mobius& first) const { return from_matrix(matrix(f) * first.matrix(f)); }
};

/// Monic q̃ whose roots are the images of the roots of q.
template <Field F>
Polynomial<F> mobius_image(const F& f, const Mobius<F>& g, const Polynomial<F>& q) {
  using P = Polynomial<F>;
  const long d = q.degree();
  const P num(f, {f.neg(g.gamma), g.alpha});   // αμ - γ
  const P den(f, {g.delta, f.neg(g.beta)});    // δ - βμ
  P acc(f);
  for (long i = 0; i <= d; ++i)
    acc = acc + (pow(num, static_cast<std::size_t>(i)) * pow(den, static_cast<std::size_t>(d - i))).scaled(q.coeff(i));
  require(acc.degree() == d, ErrorKind::Internal, "image of an irreducible factor lost degree");
  return acc.monic();
}

template <Field F>
SkewPencilInvariants<F> substitution_action_on_invariants(const F& f, SkewPencilInvariants<F> inv, const Mobius<F>& g) {
  require(!g.is_singular(f), ErrorKind::SingularMobius, "alpha*delta - beta*gamma must be nonzero");
  SkewPencilInvariants<F> out;
  out.minimal = inv.minimal;
  for (const auto& [q, m] : inv.finite) {
    if (q.degree() == 1) {
      const auto lambda = f.neg(q.coeff(0));
      const auto den = f.add(g.alpha, f.mul(g.beta, lambda));
      if (f.is_zero(den)) {
        out.infinite.push_back(m);
      } else {
        const auto image = f.div(f.add(g.gamma, f.mul(g.delta, lambda)), den);
        out.finite.emplace_back(Polynomial<F>::linear(f, image), m);
      }
    } else {
      out.finite.emplace_back(mobius_image(f, g, q), m);
    }
  }
  for (auto m : inv.infinite) {
    if (f.is_zero(g.beta))
      out.infinite.push_back(m);
    else
      out.finite.emplace_back(Polynomial<F>::linear(f, f.div(g.delta, g.beta)), m);
  }
  out.normalize();
  return out;
}

}  // namespace congru
