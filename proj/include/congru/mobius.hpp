#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "congru/skew_pencil.hpp"

namespace congru {

/// A place of the projective line over F: a rational point λ, the point ∞, or
/// a closed point given by a monic irreducible polynomial of degree >= 2.
template <Field F>
class Place {
 public:
  using Element = typename F::Element;
  enum class Kind { Point, Closed, Infinity };

  static Place point(const F& f, const Element& lambda) { return Place(Kind::Point, Polynomial<F>::linear(f, lambda)); }
  static Place infinity(const F& f) { return Place(Kind::Infinity, Polynomial<F>(f)); }
  static Place closed(const Polynomial<F>& q) {
    require(q.degree() >= 2 && q.is_monic(), ErrorKind::MalformedInput, "closed places need a monic polynomial of degree >= 2");
    return Place(Kind::Closed, q);
  }
  /// The place of a monic irreducible factor.
  static Place of_factor(const Polynomial<F>& q) {
    return q.degree() == 1 ? point(q.field(), q.field().neg(q.coeff(0))) : closed(q);
  }

  Kind kind() const { return kind_; }
  bool is_point() const { return kind_ == Kind::Point; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  Element value() const { return poly_.field().neg(poly_.coeff(0)); }
  /// x - λ for points, the irreducible itself for closed places.
  const Polynomial<F>& poly() const { return poly_; }

  /// Homogeneous coordinates [a : b] with λ = b / a; points and ∞ only.
  std::pair<Element, Element> coords() const {
    const F& f = poly_.field();
    return is_infinity() ? std::pair{f.zero(), f.one()} : std::pair{f.one(), value()};
  }
  static Place from_coords(const F& f, const Element& a, const Element& b) {
    return f.is_zero(a) ? infinity(f) : point(f, f.div(b, a));
  }

  Place mapped(const Mobius<F>& g) const {
    const F& f = poly_.field();
    if (kind_ == Kind::Closed) return closed(mobius_image(f, g, poly_));
    auto [a, b] = coords();
    return from_coords(f, f.add(f.mul(g.alpha, a), f.mul(g.beta, b)), f.add(f.mul(g.gamma, a), f.mul(g.delta, b)));
  }

  /// Points by field encoding, then closed places by (degree, coefficients), then ∞.
  friend std::strong_ordering operator<=>(const Place& x, const Place& y) {
    if (x.kind_ != y.kind_) return static_cast<int>(x.kind_) <=> static_cast<int>(y.kind_);
    if (x.kind_ == Kind::Point) return x.poly_.field().compare(x.value(), y.value());
    if (x.kind_ == Kind::Closed) return compare(x.poly_, y.poly_);
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Place& x, const Place& y) { return (x <=> y) == 0; }

 private:
  Place(Kind k, Polynomial<F> p) : kind_(k), poly_(std::move(p)) {}
  Kind kind_;
  Polynomial<F> poly_;
};

/// Places with their multisets of block sizes.
template <Field F>
class PointConfiguration {
 public:
  using Entry = std::pair<Place<F>, std::vector<std::size_t>>;

  PointConfiguration() = default;
  explicit PointConfiguration(std::vector<Entry> entries) : entries_(std::move(entries)) {
    for (auto& [place, sizes] : entries_) {
      require(!sizes.empty(), ErrorKind::MalformedInput, "size bundles must be nonempty");
      std::sort(sizes.begin(), sizes.end(), std::greater<>());
    }
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
      require(!(entries_[i - 1].first == entries_[i].first), ErrorKind::MalformedInput, "places must be distinct");
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool has_closed() const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const Entry& e) { return e.first.kind() == Place<F>::Kind::Closed; });
  }

  PointConfiguration mapped(const Mobius<F>& g) const {
    std::vector<Entry> out;
    for (const auto& [p, s] : entries_) out.emplace_back(p.mapped(g), s);
    return PointConfiguration(std::move(out));
  }

  /// Lexicographic over (place, bundle) entries.
  friend std::strong_ordering operator<=>(const PointConfiguration& x, const PointConfiguration& y) {
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
      if (auto c = x.entries_[i].first <=> y.entries_[i].first; c != 0) return c;
      if (auto c = x.entries_[i].second <=> y.entries_[i].second; c != 0) return c;
    }
    return x.size() <=> y.size();
  }
  friend bool operator==(const PointConfiguration& x, const PointConfiguration& y) { return (x <=> y) == 0; }

 private:
  std::vector<Entry> entries_;
};

/// Eigenvalue configuration of skew-pencil invariants: finite divisors at
/// their places, infinite divisors at ∞. Minimal indices are not included.
template <Field F>
PointConfiguration<F> configuration_of(const F& f, const SkewPencilInvariants<F>& inv) {
  std::vector<std::pair<Place<F>, std::vector<std::size_t>>> entries;
  auto add = [&](const Place<F>& p, std::size_t m) {
    for (auto& e : entries)
      if (e.first == p) {
        e.second.push_back(m);
        return;
      }
    entries.emplace_back(p, std::vector<std::size_t>{m});
  };
  for (const auto& [q, m] : inv.finite) add(Place<F>::of_factor(q), m);
  for (auto m : inv.infinite) add(Place<F>::infinity(f), m);
  return PointConfiguration<F>(std::move(entries));
}

/// Inverse of configuration_of, with the given minimal indices attached.
template <Field F>
SkewPencilInvariants<F> invariants_of(const F& f, const PointConfiguration<F>& c, std::vector<std::size_t> minimal) {
  SkewPencilInvariants<F> inv;
  for (const auto& [p, sizes] : c.entries())
    for (auto m : sizes) {
      if (p.is_infinity())
        inv.infinite.push_back(m);
      else
        inv.finite.emplace_back(p.poly(), m);
    }
  inv.minimal = std::move(minimal);
  inv.normalize();
  return inv;
}

namespace detail {

/// The map sending the distinct places with coordinates v1, v2, v3 to 0, 1, ∞.
template <Field F>
Mobius<F> to_anchors(const F& f, const std::pair<typename F::Element, typename F::Element>& v1,
                     const std::pair<typename F::Element, typename F::Element>& v2,
                     const std::pair<typename F::Element, typename F::Element>& v3) {
  // Solve c1 v1 + c3 v3 = v2, then invert N = [c1 v1 | c3 v3].
  Matrix<F> m(f, 2, 2);
  m(0, 0) = v1.first;
  m(1, 0) = v1.second;
  m(0, 1) = v3.first;
  m(1, 1) = v3.second;
  Matrix<F> rhs(f, 2, 1);
  rhs(0, 0) = v2.first;
  rhs(1, 0) = v2.second;
  const auto c = solve(m, rhs);
  require(c.has_value(), ErrorKind::Internal, "anchor points are not distinct");
  Matrix<F> n(f, 2, 2);
  n(0, 0) = f.mul((*c)(0, 0), v1.first);
  n(1, 0) = f.mul((*c)(0, 0), v1.second);
  n(0, 1) = f.mul((*c)(1, 0), v3.first);
  n(1, 1) = f.mul((*c)(1, 0), v3.second);
  return Mobius<F>::from_matrix(inverse(n));
}

}  // namespace detail

/// Largest PGL_2 order enumerated for configurations without three rational places.
inline constexpr std::uint64_t kMaxProjectiveGroup = 1'000'000;

template <Field F>
struct CanonicalConfiguration {
  PointConfiguration<F> canonical;
  Mobius<F> witness;
};

/// Orbit representative under λ ↦ (γ + δλ)/(α + βλ). The candidates are the
/// images that put rational places on the anchors 0, 1, ∞ (as many as there
/// are, up to three); the encoding-smallest candidate wins.
template <Field F>
CanonicalConfiguration<F> mobius_canonicalize(const F& f, const PointConfiguration<F>& c) {
  using Coords = std::pair<typename F::Element, typename F::Element>;
  std::vector<Coords> rational;
  for (const auto& [p, s] : c.entries())
    if (p.kind() != Place<F>::Kind::Closed) rational.push_back(p.coords());

  std::optional<CanonicalConfiguration<F>> best;
  auto consider = [&](const Mobius<F>& g) {
    auto image = c.mapped(g);
    if (!best || image < best->canonical) best = CanonicalConfiguration<F>{std::move(image), g};
  };

  const std::size_t k = rational.size();
  if (k >= 3 || !c.has_closed()) {
    // Auxiliary points stand in for missing anchors; they lie outside the
    // configuration so any choice yields the same image.
    std::vector<Coords> aux_pool = {{f.one(), f.zero()}, {f.zero(), f.one()}, {f.one(), f.one()}};
    auto same = [&](const Coords& a, const Coords& b) {
      return f.is_zero(f.sub(f.mul(a.first, b.second), f.mul(a.second, b.first)));
    };
    const std::size_t used = std::min<std::size_t>(k, 3);
    std::vector<std::size_t> pick(used);
    std::vector<bool> taken(k, false);
    auto rec = [&](auto&& self, std::size_t depth) -> void {
      if (depth == used) {
        std::vector<Coords> pts;
        for (auto i : pick) pts.push_back(rational[i]);
        for (const auto& a : aux_pool) {
          if (pts.size() == 3) break;
          bool clash = false;
          for (const auto& r : rational) clash = clash || same(a, r);
          for (const auto& pt : pts) clash = clash || same(a, pt);
          if (!clash) pts.push_back(a);
        }
        require(pts.size() == 3, ErrorKind::Internal, "not enough auxiliary points");
        consider(detail::to_anchors(f, pts[0], pts[1], pts[2]));
        return;
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (taken[i]) continue;
        taken[i] = true;
        pick[depth] = i;
        self(self, depth + 1);
        taken[i] = false;
      }
    };
    rec(rec, 0);
  } else if constexpr (FiniteField<F>) {
    const std::uint64_t q = f.order();
    require(q * q * q - q <= kMaxProjectiveGroup, ErrorKind::DeskScaleExceeded,
            "projective group too large for exhaustive canonicalization");
    // Every g sending the rational places onto the first k anchors.
    const Place<F> anchors[] = {Place<F>::point(f, f.zero()), Place<F>::point(f, f.one()), Place<F>::infinity(f)};
    // One representative per scalar class: first row (1, b) or (0, 1).
    for (std::uint64_t row = 0; row <= q; ++row)
      for (std::uint64_t cc = 0; cc < q; ++cc)
        for (std::uint64_t d = 0; d < q; ++d) {
          const auto a = row < q ? f.one() : f.zero();
          const auto b = row < q ? f.element_at(row) : f.one();
          Mobius<F> g{a, b, f.element_at(cc), f.element_at(d)};
          if (g.is_singular(f)) continue;
          bool ok = true;
          for (const auto& [p, s] : c.entries()) {
            if (p.kind() == Place<F>::Kind::Closed) continue;
            const auto img = p.mapped(g);
            bool on_anchor = false;
            for (std::size_t i = 0; i < k; ++i) on_anchor = on_anchor || img == anchors[i];
            ok = ok && on_anchor;
          }
          if (ok) consider(g);
        }
  } else {
    fail(ErrorKind::DeskScaleExceeded, "canonicalizing closed places needs three rational places over an infinite field");
  }
  require(best.has_value(), ErrorKind::Internal, "no canonical candidate");
  if (best->canonical == c) best->witness = Mobius<F>::identity(f);
  return std::move(*best);
}

}  // namespace congru
