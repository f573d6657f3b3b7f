#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "congru/error.hpp"
#include "congru/field.hpp"

namespace congru {

/// Univariate polynomial, coefficients low to high, always trimmed.
template <Field F>
class Polynomial {
 public:
  using Element = typename F::Element;

  /// Degree reported for the zero polynomial.
  static constexpr long kZeroDegree = -1;

  Polynomial() = default;
  explicit Polynomial(F field) : field_(std::move(field)) {}
  Polynomial(F field, std::vector<Element> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const F& f, const Element& a) { return Polynomial(f, {a}); }
  static Polynomial x(const F& f) { return Polynomial(f, {f.zero(), f.one()}); }
  /// x - a
  static Polynomial linear(const F& f, const Element& a) { return Polynomial(f, {f.neg(a), f.one()}); }
  static Polynomial monomial(const F& f, std::size_t deg, const Element& a) {
    std::vector<Element> c(deg + 1, f.zero());
    c[deg] = a;
    return Polynomial(f, std::move(c));
  }
  static Polynomial from_ints(const F& f, std::initializer_list<long long> coeffs) {
    std::vector<Element> c;
    for (auto v : coeffs) c.push_back(f.from_int(v));
    return Polynomial(f, std::move(c));
  }

  const F& field() const { return field_; }
  const std::vector<Element>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Element coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  Element lead() const { return c_.empty() ? field_.zero() : c_.back(); }
  bool is_one() const { return c_.size() == 1 && field_.equal(c_[0], field_.one()); }
  bool is_monic() const { return !c_.empty() && field_.equal(c_.back(), field_.one()); }

  Polynomial monic() const {
    if (c_.empty()) return *this;
    return scaled(field_.inv(c_.back()));
  }

  Polynomial scaled(const Element& s) const {
    std::vector<Element> c = c_;
    for (auto& e : c) e = field_.mul(s, e);
    return Polynomial(field_, std::move(c));
  }

  Element eval(const Element& a) const {
    Element r = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = field_.add(field_.mul(r, a), c_[i]);
    return r;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial(field_);
    std::vector<Element> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = field_.mul(field_.from_int(static_cast<long long>(i)), c_[i]);
    return Polynomial(field_, std::move(c));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!a.field_.equal(a.c_[i], b.c_[i])) return false;
    return true;
  }

  /// Deterministic order: degree first, then the coefficient list lexicographically.
  friend std::strong_ordering compare(const Polynomial& a, const Polynomial& b) {
    if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (auto c = a.field_.compare(a.c_[i], b.c_[i]); c != 0) return c;
    return std::strong_ordering::equal;
  }
  friend bool operator<(const Polynomial& a, const Polynomial& b) { return compare(a, b) < 0; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const F& f = a.field_;
    std::vector<Element> c(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
    return Polynomial(f, std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    const F& f = a.field_;
    std::vector<Element> c(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
    return Polynomial(f, std::move(c));
  }

  Polynomial operator-() const { return Polynomial(field_) - *this; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    const F& f = a.field_;
    if (a.is_zero() || b.is_zero()) return Polynomial(f);
    std::vector<Element> c(a.c_.size() + b.c_.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (f.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return Polynomial(f, std::move(c));
  }

  /// Euclidean division: returns (quotient, remainder).
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    require(!b.is_zero(), ErrorKind::Singular, "polynomial division by zero");
    const F& f = a.field_;
    if (a.degree() < b.degree()) return {Polynomial(f), a};
    std::vector<Element> r = a.c_;
    std::vector<Element> q(a.c_.size() - b.c_.size() + 1, f.zero());
    const Element lead_inv = f.inv(b.c_.back());
    for (std::size_t k = q.size(); k-- > 0;) {
      const Element coef = f.mul(r[k + b.c_.size() - 1], lead_inv);
      q[k] = coef;
      if (f.is_zero(coef)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] = f.sub(r[k + j], f.mul(coef, b.c_[j]));
    }
    return {Polynomial(f, std::move(q)), Polynomial(f, std::move(r))};
  }

  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  bool divides(const Polynomial& other) const { return (other % *this).is_zero(); }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (field_.is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + field_.to_string(c_[i]) + ")";
      if (i > 0) s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
  }

  F field_{};
  std::vector<Element> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <Field F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
  while (!b.is_zero()) {
    a = a % b;
    std::swap(a, b);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s a + t b = g monic.
template <Field F>
std::tuple<Polynomial<F>, Polynomial<F>, Polynomial<F>> xgcd(const Polynomial<F>& a, const Polynomial<F>& b) {
  const F& f = a.field();
  Polynomial<F> r0 = a, r1 = b;
  Polynomial<F> s0 = Polynomial<F>::constant(f, f.one()), s1(f);
  Polynomial<F> t0(f), t1 = Polynomial<F>::constant(f, f.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const auto li = f.inv(r0.lead());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

template <Field F>
Polynomial<F> pow(Polynomial<F> base, std::size_t e) {
  Polynomial<F> acc = Polynomial<F>::constant(base.field(), base.field().one());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

template <Field F>
Polynomial<F> powmod(Polynomial<F> base, mpz_class e, const Polynomial<F>& mod) {
  const F& f = base.field();
  Polynomial<F> acc = Polynomial<F>::constant(f, f.one()) % mod;
  base = base % mod;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = (acc * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return acc;
}

}  // namespace congru
