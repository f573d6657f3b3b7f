#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <type_traits>
#include <utility>
#include <vector>

#include "congru/error.hpp"
#include "congru/matrix.hpp"
#include "congru/polynomial.hpp"

namespace congru {

template <Field F>
using Factorization = std::vector<std::pair<Polynomial<F>, std::size_t>>;

/// det(xI - M) by reduction to upper Hessenberg form.
template <Field F>
Polynomial<F> charpoly(const Matrix<F>& m) {
  require(m.is_square(), ErrorKind::SizeMismatch, "characteristic polynomial of a non-square matrix");
  const F& f = m.field();
  const std::size_t n = m.rows();
  Matrix<F> h = m;
  for (std::size_t col = 0; col + 2 < n; ++col) {
    const std::size_t m1 = col + 1;
    std::size_t piv = m1;
    while (piv < n && f.is_zero(h(piv, col))) ++piv;
    if (piv == n) continue;
    if (piv != m1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(m1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, m1));
    }
    const auto inv = f.inv(h(m1, col));
    for (std::size_t j = m1 + 1; j < n; ++j) {
      if (f.is_zero(h(j, col))) continue;
      const auto u = f.mul(h(j, col), inv);
      for (std::size_t c = 0; c < n; ++c) h(j, c) = f.sub(h(j, c), f.mul(u, h(m1, c)));
      for (std::size_t r = 0; r < n; ++r) h(r, m1) = f.add(h(r, m1), f.mul(u, h(r, j)));
    }
  }
  std::vector<Polynomial<F>> p;
  p.push_back(Polynomial<F>::constant(f, f.one()));
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial<F> pk = Polynomial<F>::linear(f, h(k - 1, k - 1)) * p[k - 1];
    auto t = f.one();
    for (std::size_t i = 1; i < k; ++i) {
      t = f.mul(t, h(k - i, k - i - 1));
      const auto coef = f.mul(t, h(k - i - 1, k - 1));
      pk = pk - p[k - i - 1].scaled(coef);
    }
    p.push_back(std::move(pk));
  }
  return p[n];
}

namespace detail {

template <Field F>
void sort_factors(Factorization<F>& fs) {
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) {
    if (auto c = compare(a.first, b.first); c != 0) return c < 0;
    return a.second < b.second;
  });
}

/// Merges equal irreducibles by adding exponents.
template <Field F>
Factorization<F> merge_factors(Factorization<F> fs) {
  sort_factors(fs);
  Factorization<F> out;
  for (auto& [p, e] : fs) {
    if (!out.empty() && out.back().first == p)
      out.back().second += e;
    else
      out.emplace_back(std::move(p), e);
  }
  return out;
}

template <Field F>
Polynomial<F> poly_pth_root(const Polynomial<F>& a) {
  const F& f = a.field();
  const std::size_t p = f.characteristic();
  std::vector<typename F::Element> c;
  for (std::size_t i = 0; i < a.coeffs().size(); i += p) c.push_back(f.pth_root(a.coeffs()[i]));
  return Polynomial<F>(f, std::move(c));
}

}  // namespace detail

/// Square-free decomposition of a monic polynomial: pairwise coprime square-free
/// parts with multiplicities. Handles p-th powers in positive characteristic.
template <Field F>
Factorization<F> squarefree(const Polynomial<F>& poly) {
  const F& f = poly.field();
  Factorization<F> out;
  if (poly.degree() <= 0) return out;
  const Polynomial<F> a = poly.monic();
  const Polynomial<F> d = a.derivative();
  if (d.is_zero()) {
    if constexpr (std::is_same_v<F, GaloisField>) {
      for (auto& [q, e] : squarefree(detail::poly_pth_root(a))) out.emplace_back(q, e * f.characteristic());
      return out;
    } else {
      fail(ErrorKind::Internal, "zero derivative in characteristic zero");
    }
  }
  Polynomial<F> c = gcd(a, d);
  Polynomial<F> w = a / c;
  std::size_t i = 1;
  while (!w.is_one()) {
    Polynomial<F> y = gcd(w, c);
    Polynomial<F> fac = w / y;
    if (!fac.is_one()) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    if constexpr (std::is_same_v<F, GaloisField>) {
      for (auto& [q, e] : squarefree(detail::poly_pth_root(c.monic()))) out.emplace_back(q, e * f.characteristic());
    } else {
      fail(ErrorKind::Internal, "leftover cofactor in characteristic zero");
    }
  }
  return out;
}

namespace detail {

// Distinct-degree factorization of a square-free monic polynomial over GF(q).
inline std::vector<std::pair<Polynomial<GaloisField>, std::size_t>> distinct_degree(Polynomial<GaloisField> a) {
  const GaloisField& f = a.field();
  using P = Polynomial<GaloisField>;
  std::vector<std::pair<P, std::size_t>> out;
  const P x = P::x(f);
  P h = x;
  for (std::size_t i = 1; a.degree() >= static_cast<long>(2 * i); ++i) {
    h = powmod(h, mpz_class(f.order()), a);
    P g = gcd(a, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      a = a / g;
      h = h % a;
    }
  }
  if (a.degree() > 0) {
    const auto deg = static_cast<std::size_t>(a.degree());
    out.emplace_back(a.monic(), deg);
  }
  return out;
}

// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree d.
inline void equal_degree(const Polynomial<GaloisField>& a, std::size_t d, std::mt19937_64& rng,
                         std::vector<Polynomial<GaloisField>>& out) {
  using P = Polynomial<GaloisField>;
  const GaloisField& f = a.field();
  if (a.degree() == static_cast<long>(d)) {
    out.push_back(a.monic());
    return;
  }
  mpz_class qd = 1;
  for (std::size_t i = 0; i < d; ++i) qd *= f.order();
  const mpz_class e = (qd - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
  for (;;) {
    std::vector<GfElem> c(static_cast<std::size_t>(a.degree()));
    for (auto& v : c) v = f.element_at(pick(rng));
    P r(f, std::move(c));
    if (r.degree() <= 0) continue;
    P g = gcd(a, r);
    if (g.is_one()) g = gcd(a, powmod(r, e, a) - P::constant(f, f.one()));
    if (!g.is_one() && g.degree() < a.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree((a / g).monic(), d, rng, out);
      return;
    }
  }
}

inline Factorization<GaloisField> factor_finite(const Polynomial<GaloisField>& poly) {
  Factorization<GaloisField> out;
  std::mt19937_64 rng(0x5eed'f1e1'd000ull);
  for (const auto& [part, mult] : squarefree(poly))
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Polynomial<GaloisField>> irr;
      equal_degree(block, d, rng, irr);
      for (auto& q : irr) out.emplace_back(std::move(q), mult);
    }
  return merge_factors(std::move(out));
}

// ---- rational polynomials -------------------------------------------------

using QPoly = Polynomial<Rationals>;

/// Primitive integer polynomial proportional to a (positive leading coefficient).
inline std::vector<mpz_class> primitive_part(const QPoly& a) {
  mpz_class den = 1;
  for (const auto& c : a.coeffs()) den = lcm(den, mpz_class(c.get_den()));
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& c : a.coeffs()) {
    mpq_class s = c * den;
    z.push_back(s.get_num());
    g = gcd(g, z.back());
  }
  if (g == 0) return z;
  if (z.back() < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

constexpr std::uint64_t kTrialDivisionLimit = 2'000'000;

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> primes;
  std::uint64_t steps = 0;
  for (mpz_class d = 2; d * d <= n; ++d) {
    require(++steps < kTrialDivisionLimit, ErrorKind::DeskScaleExceeded, "integer too large to factor by trial division");
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) primes.emplace_back(d, e);
  }
  if (n > 1) primes.emplace_back(n, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [pr, e] : primes) {
    const std::size_t base = divs.size();
    mpz_class pw = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pw *= pr;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline QPoly to_qpoly(const std::vector<mpz_class>& z) {
  std::vector<mpq_class> c;
  for (const auto& v : z) c.emplace_back(v);
  return QPoly(Rationals{}, std::move(c));
}

/// Lagrange interpolation through (xs[i], ys[i]).
inline QPoly interpolate(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& ys) {
  const Rationals q;
  QPoly acc(q);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    QPoly term = QPoly::constant(q, ys[i]);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      term = term * QPoly::linear(q, xs[j]).scaled(1 / (xs[i] - xs[j]));
    }
    acc = acc + term;
  }
  return acc;
}

constexpr std::uint64_t kKroneckerBudget = 200'000;

// Searches for a factor of degree d of a square-free polynomial with no rational roots.
inline std::optional<QPoly> kronecker_factor(const QPoly& a, std::size_t d) {
  const auto z = primitive_part(a);
  const QPoly g = to_qpoly(z);
  std::vector<std::pair<mpz_class, long>> samples;
  for (long t = -12; t <= 12; ++t) {
    mpq_class v = g.eval(mpq_class(t));
    samples.emplace_back(abs(v.get_num()), t);
  }
  std::sort(samples.begin(), samples.end());
  samples.resize(d + 1);
  std::vector<mpq_class> xs;
  std::vector<std::vector<mpz_class>> choices;
  std::uint64_t combos = 1;
  for (const auto& [val, t] : samples) {
    xs.emplace_back(t);
    auto divs = positive_divisors(val);
    std::vector<mpz_class> signed_divs;
    for (const auto& dv : divs) {
      signed_divs.push_back(dv);
      if (!choices.empty()) signed_divs.push_back(-dv);
    }
    combos *= signed_divs.size();
    if (combos > kKroneckerBudget) return std::nullopt;
    choices.push_back(std::move(signed_divs));
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    std::vector<mpq_class> ys;
    for (std::size_t i = 0; i < idx.size(); ++i) ys.emplace_back(choices[i][idx[i]]);
    QPoly h = interpolate(xs, ys);
    if (h.degree() == static_cast<long>(d)) {
      bool integral = true;
      for (const auto& c : h.coeffs()) integral = integral && c.get_den() == 1;
      if (integral && h.divides(g)) return h.monic();
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == idx.size()) return std::nullopt;
  }
}

inline void split_rational(const QPoly& a, std::size_t mult, Factorization<Rationals>& out) {
  const Rationals q;
  QPoly rest = a.monic();
  if (rest.degree() <= 0) return;
  if (q.is_zero(rest.coeff(0))) {
    out.emplace_back(QPoly::x(q), mult);
    rest = rest / QPoly::x(q);
  }
  if (rest.degree() >= 1) {
    const auto z = primitive_part(rest);
    const auto num_divs = positive_divisors(z.front());
    const auto den_divs = positive_divisors(z.back());
    for (const auto& nd : num_divs)
      for (const auto& dd : den_divs)
        for (int sign : {1, -1}) {
          mpq_class r(nd * sign, dd);
          r.canonicalize();
          if (rest.degree() >= 1 && q.is_zero(rest.eval(r))) {
            out.emplace_back(QPoly::linear(q, r), mult);
            rest = rest / QPoly::linear(q, r);
          }
        }
  }
  if (rest.degree() <= 0) return;
  for (std::size_t d = 2; 2 * d <= static_cast<std::size_t>(rest.degree()); ++d) {
    if (auto h = kronecker_factor(rest, d)) {
      split_rational(*h, mult, out);
      split_rational(rest / *h, mult, out);
      return;
    }
  }
  out.emplace_back(rest, mult);
}

inline Factorization<Rationals> factor_rational(const QPoly& poly) {
  Factorization<Rationals> out;
  for (const auto& [part, mult] : squarefree(poly)) split_rational(part, mult, out);
  return merge_factors(std::move(out));
}

}  // namespace detail

/// Monic irreducible factorization in deterministic order (degree, then
/// coefficient list, then exponent). Over Q, factors of degree >= 4 are split by
/// Kronecker's method within a fixed search budget.
template <Field F>
Factorization<F> factor(const Polynomial<F>& poly) {
  if (poly.degree() <= 0) return {};
  if constexpr (std::is_same_v<F, GaloisField>)
    return detail::factor_finite(poly);
  else
    return detail::factor_rational(poly);
}

template <Field F>
Factorization<F> charpoly_factor(const Matrix<F>& m) {
  return factor(charpoly(m));
}

/// Product of q^e over a factorization.
template <Field F>
Polynomial<F> expand(const F& f, const Factorization<F>& fs) {
  Polynomial<F> acc = Polynomial<F>::constant(f, f.one());
  for (const auto& [q, e] : fs) acc = acc * pow(q, e);
  return acc;
}

/// Companion matrix of a monic polynomial: ones below the diagonal, negated
/// coefficients in the last column.
template <Field F>
Matrix<F> companion(const Polynomial<F>& poly) {
  const F& f = poly.field();
  const auto n = static_cast<std::size_t>(poly.degree());
  Matrix<F> c(f, n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = f.one();
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = f.neg(poly.coeff(i));
  return c;
}

}  // namespace congru
