#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congru/error.hpp"

namespace congru {

/// Runtime description of the coefficient field: either Q or GF(p^k) with an
/// explicit irreducible modulus over GF(p), coefficients listed low to high.
struct FieldSpec {
  enum class Kind { Rationals, FiniteField };

  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;
  unsigned k = 0;
  std::vector<std::uint32_t> modulus;

  bool operator==(const FieldSpec&) const = default;

  static FieldSpec rationals() { return {}; }

  static FieldSpec finite(std::uint32_t p, unsigned k = 1, std::vector<std::uint32_t> modulus = {}) {
    FieldSpec s;
    s.kind = Kind::FiniteField;
    s.p = p;
    s.k = k;
    s.modulus = modulus.empty() && k == 1 ? std::vector<std::uint32_t>{0, 1} : std::move(modulus);
    return s;
  }

  bool is_finite() const { return kind == Kind::FiniteField; }
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over GF(p) as coefficient vectors (low to high), used only to
// validate and run the extension-field modulus.
using ModPoly = std::vector<std::uint64_t>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::pair{nt, t - q * nt};
    std::tie(r, nr) = std::pair{nr, r - q * nr};
  }
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

inline ModPoly mod_rem(ModPoly a, const ModPoly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    std::uint64_t c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

inline ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod_rem(std::move(r), m, p);
}

inline ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = mod_rem(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Ben-Or test: gcd(x^(p^i) - x, m) = 1 for every i <= deg(m) / 2.
inline bool modulus_is_irreducible(const ModPoly& m, std::uint64_t p) {
  const std::size_t k = m.size() - 1;
  if (k <= 1) return k == 1;
  ModPoly x{0, 1};
  ModPoly h = x;
  for (std::size_t i = 1; i <= k / 2; ++i) {
    ModPoly acc{1};
    ModPoly base = h;
    for (std::uint64_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = mod_mul(acc, base, m, p);
      base = mod_mul(base, base, m, p);
    }
    h = acc;
    ModPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    ModPoly g = mod_gcd(diff, m, p);
    if (g.size() != 1) return false;
  }
  return true;
}

struct GfTables {
  std::uint32_t p = 0;
  unsigned k = 0;
  std::uint32_t q = 0;
  ModPoly modulus;
  // Zech-style log tables, populated for extension fields of moderate size.
  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;
};

}  // namespace detail

/// The field of rationals, elements are GMP rationals kept in lowest terms.
class Rationals {
 public:
  using Element = mpq_class;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long n) const { return mpq_class(static_cast<long>(n)); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    require(sgn(a) != 0, ErrorKind::Singular, "inverse of zero");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  /// Deterministic total order on elements: numeric order.
  /// Encoding order (not numeric): by denominator, then |numerator|, then
  /// positive before negative. So 0 < 1 < -1 < 2 < -2 < ... < 1/2 < -1/2 < ...
  std::strong_ordering compare(const Element& a, const Element& b) const {
    int c = cmp(a.get_den(), b.get_den());
    if (c == 0) c = mpz_cmpabs(a.get_num_mpz_t(), b.get_num_mpz_t());
    if (c == 0) c = sgn(b) - sgn(a);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  std::uint32_t characteristic() const { return 0; }
  std::optional<std::uint64_t> cardinality() const { return std::nullopt; }
  FieldSpec spec() const { return FieldSpec::rationals(); }

  std::string to_string(const Element& a) const { return a.get_str(); }

  bool operator==(const Rationals&) const { return true; }
};

/// Element of GF(p^k): base-p digits of the coefficient vector in the
/// polynomial basis 1, t, ..., t^(k-1).
struct GfElem {
  std::uint32_t code = 0;
  auto operator<=>(const GfElem&) const = default;
};

/// GF(p^k) with p an odd prime and a caller-supplied irreducible modulus.
class GaloisField {
 public:
  using Element = GfElem;

  static constexpr std::uint32_t kTableLimit = 1u << 20;

  GaloisField() : GaloisField(FieldSpec::finite(3)) {}

  explicit GaloisField(std::uint32_t p) : GaloisField(FieldSpec::finite(p)) {}

  explicit GaloisField(const FieldSpec& spec) {
    require(spec.is_finite(), ErrorKind::InvalidField, "finite field spec expected");
    require(detail::is_prime(spec.p), ErrorKind::InvalidField, "p must be prime");
    require(spec.p != 2, ErrorKind::InvalidField, "characteristic 2 is not supported");
    require(spec.k >= 1, ErrorKind::InvalidField, "extension degree must be >= 1");
    require(spec.modulus.size() == spec.k + 1, ErrorKind::InvalidField, "modulus must have k+1 coefficients");
    auto t = std::make_shared<detail::GfTables>();
    t->p = spec.p;
    t->k = spec.k;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < spec.k; ++i) {
      q *= spec.p;
      require(q < (1ull << 31), ErrorKind::DeskScaleExceeded, "field order must stay below 2^31");
    }
    t->q = static_cast<std::uint32_t>(q);
    for (auto c : spec.modulus) t->modulus.push_back(c % spec.p);
    require(t->modulus.back() != 0, ErrorKind::InvalidField, "modulus leading coefficient vanishes mod p");
    const std::uint64_t lead_inv = detail::inv_mod(t->modulus.back(), spec.p);
    for (auto& c : t->modulus) c = c * lead_inv % spec.p;
    require(detail::modulus_is_irreducible(t->modulus, spec.p), ErrorKind::InvalidField,
            "modulus is reducible over GF(p)");
    tables_ = t;
    if (spec.k > 1 && t->q <= kTableLimit) build_log_tables(*t);
  }

  Element zero() const { return {0}; }
  Element one() const { return {1}; }
  Element from_int(long long n) const {
    long long p = tables_->p;
    long long r = n % p;
    return {static_cast<std::uint32_t>(r < 0 ? r + p : r)};
  }

  Element add(Element a, Element b) const {
    const auto p = tables_->p;
    if (tables_->k == 1) return {static_cast<std::uint32_t>((std::uint64_t{a.code} + b.code) % p)};
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < tables_->k; ++i) {
      r += ((a.code % p + b.code % p) % p) * scale;
      a.code /= p;
      b.code /= p;
      scale *= p;
    }
    return {r};
  }

  Element neg(Element a) const {
    const auto p = tables_->p;
    if (tables_->k == 1) return {a.code == 0 ? 0 : p - a.code};
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < tables_->k; ++i) {
      r += ((p - a.code % p) % p) * scale;
      a.code /= p;
      scale *= p;
    }
    return {r};
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (a.code == 0 || b.code == 0) return {0};
    if (tables_->k == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % tables_->p)};
    if (!tables_->log.empty()) {
      std::uint64_t e = std::uint64_t{tables_->log[a.code]} + tables_->log[b.code];
      return {tables_->exp[e % (tables_->q - 1)]};
    }
    return encode(detail::mod_mul(decode(a), decode(b), tables_->modulus, tables_->p));
  }

  Element pow(Element a, mpz_class e) const {
    Element acc = one();
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1;
    }
    return acc;
  }

  Element inv(Element a) const {
    require(a.code != 0, ErrorKind::Singular, "inverse of zero");
    if (tables_->k == 1) return {static_cast<std::uint32_t>(detail::inv_mod(a.code, tables_->p))};
    if (!tables_->log.empty()) return {tables_->exp[(tables_->q - 1 - tables_->log[a.code]) % (tables_->q - 1)]};
    return pow(a, mpz_class(tables_->q - 2));
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  bool is_zero(Element a) const { return a.code == 0; }
  bool equal(Element a, Element b) const { return a.code == b.code; }
  std::strong_ordering compare(Element a, Element b) const { return a.code <=> b.code; }

  std::uint32_t characteristic() const { return tables_->p; }
  unsigned degree() const { return tables_->k; }
  std::uint32_t order() const { return tables_->q; }
  std::optional<std::uint64_t> cardinality() const { return tables_->q; }
  Element element_at(std::uint64_t index) const { return {static_cast<std::uint32_t>(index)}; }
  std::uint64_t index_of(Element a) const { return a.code; }

  /// Unique p-th root (Frobenius is bijective on a finite field).
  Element pth_root(Element a) const {
    mpz_class e = 1;
    for (unsigned i = 1; i < tables_->k; ++i) e *= tables_->p;
    return pow(a, e);
  }

  std::vector<std::uint32_t> coefficients(Element a) const {
    std::vector<std::uint32_t> c(tables_->k);
    for (unsigned i = 0; i < tables_->k; ++i) {
      c[i] = a.code % tables_->p;
      a.code /= tables_->p;
    }
    return c;
  }

  Element from_coefficients(const std::vector<long long>& c) const {
    require(c.size() <= tables_->k, ErrorKind::MalformedInput, "too many coefficients for GF(p^k) element");
    std::uint32_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * tables_->p + from_int(c[i]).code;
    return {code};
  }

  FieldSpec spec() const {
    FieldSpec s = FieldSpec::finite(tables_->p, tables_->k);
    s.modulus.assign(tables_->modulus.begin(), tables_->modulus.end());
    return s;
  }

  std::string to_string(Element a) const {
    if (tables_->k == 1) return std::to_string(a.code);
    std::string s = "[";
    auto c = coefficients(a);
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
  }

  bool operator==(const GaloisField& other) const {
    return tables_ == other.tables_ || (tables_->p == other.tables_->p && tables_->k == other.tables_->k &&
                                        tables_->modulus == other.tables_->modulus);
  }

 private:
  detail::ModPoly decode(Element a) const {
    detail::ModPoly c(tables_->k);
    for (unsigned i = 0; i < tables_->k; ++i) {
      c[i] = a.code % tables_->p;
      a.code /= tables_->p;
    }
    detail::trim(c);
    return c;
  }

  Element encode(const detail::ModPoly& c) const {
    std::uint32_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * tables_->p + static_cast<std::uint32_t>(c[i]);
    return {code};
  }

  void build_log_tables(detail::GfTables& t) {
    const std::uint32_t q = t.q;
    for (std::uint32_t g = 2; g < q; ++g) {
      std::vector<std::uint32_t> exp(q - 1);
      std::vector<std::uint32_t> log(q, 0);
      detail::ModPoly gen = decode({g});
      detail::ModPoly cur{1};
      bool primitive = true;
      for (std::uint32_t i = 0; i < q - 1; ++i) {
        Element e = encode(cur);
        if (i > 0 && e.code == 1) {
          primitive = false;
          break;
        }
        exp[i] = e.code;
        log[e.code] = i;
        cur = detail::mod_mul(cur, gen, t.modulus, t.p);
      }
      if (primitive) {
        t.exp = std::move(exp);
        t.log = std::move(log);
        return;
      }
    }
    fail(ErrorKind::Internal, "no primitive element found");
  }

  std::shared_ptr<const detail::GfTables> tables_;
};

/// Operations every coefficient field provides to the generic algorithms.
template <class F>
concept Field = requires(const F& f, const typename F::Element& a) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.add(a, a) } -> std::same_as<typename F::Element>;
  { f.mul(a, a) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.compare(a, a) } -> std::same_as<std::strong_ordering>;
  { f.spec() } -> std::same_as<FieldSpec>;
};

template <class F>
concept FiniteField = Field<F> && requires(const F& f, std::uint64_t i) {
  { f.element_at(i) } -> std::same_as<typename F::Element>;
  { f.order() } -> std::convertible_to<std::uint64_t>;
};

/// Calls fn with the concrete field object described by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_finite()) return std::forward<Fn>(fn)(GaloisField(spec));
  return std::forward<Fn>(fn)(Rationals{});
}

template <Field F>
typename F::Element power(const F& f, typename F::Element a, std::uint64_t e) {
  auto acc = f.one();
  while (e > 0) {
    if (e & 1) acc = f.mul(acc, a);
    a = f.mul(a, a);
    e >>= 1;
  }
  return acc;
}

}  // namespace congru
