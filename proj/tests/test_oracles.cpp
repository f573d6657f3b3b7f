#include <catch_amalgamated.hpp>

#include <set>

#include "congru/oracles.hpp"
#include "congru/random.hpp"

using namespace congru;

namespace {

using FM = Matrix<GaloisField>;

// GF(2) is outside the supported fields; the enumeration is generic, so a
// minimal stand-in is enough to count GL_2(F_2).
struct Gf2 {
  using Element = int;
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element add(Element a, Element b) const { return a ^ b; }
  Element sub(Element a, Element b) const { return a ^ b; }
  Element neg(Element a) const { return a; }
  Element mul(Element a, Element b) const { return a & b; }
  Element inv(Element a) const { return a; }
  Element div(Element a, Element) const { return a; }
  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }
  std::strong_ordering compare(Element a, Element b) const { return a <=> b; }
  Element from_int(long long v) const { return static_cast<int>(v & 1); }
  FieldSpec spec() const { return FieldSpec::finite(2); }
  Element element_at(std::uint64_t i) const { return static_cast<int>(i); }
  std::uint64_t order() const { return 2; }
  bool operator==(const Gf2&) const { return true; }
};

std::uint64_t product_formula(std::uint64_t q, std::size_t n) {
  std::uint64_t qn = 1, total = 1, qi = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= q;
  for (std::size_t i = 0; i < n; ++i, qi *= q) total *= qn - qi;
  return total;
}

}  // namespace

TEST_CASE("gl_enumerate counts") {
  CHECK(gl_enumerate(GaloisField(3), 1).size() == 2);
  CHECK(gl_enumerate(Gf2{}, 2).size() == 6);
  CHECK(gl_enumerate(GaloisField(3), 2).size() == 48);
  CHECK(gl_enumerate(Gf2{}, 3).size() == product_formula(2, 3));
  CHECK(gl_enumerate(GaloisField(5), 2).size() == product_formula(5, 2));
  GaloisField f9(FieldSpec::finite(3, 2, {1, 0, 1}));
  CHECK(gl_enumerate(f9, 2).size() == product_formula(9, 2));
}

TEST_CASE("gl_enumerate yields distinct invertible matrices deterministically") {
  GaloisField f(3);
  auto all = gl_enumerate(f, 3);
  REQUIRE(all.size() == 11232);
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& m : all) {
    REQUIRE(is_invertible(m));
    std::vector<std::uint32_t> key;
    for (const auto& e : m.entries()) key.push_back(e.code);
    REQUIRE(seen.insert(key).second);
  }
  REQUIRE(gl_enumerate(f, 3) == all);
  // Row-major order with the first entry most significant.
  for (std::size_t i = 1; i < all.size(); ++i) REQUIRE(compare(all[i - 1], all[i]) < 0);
}

TEST_CASE("gl_enumerate refuses groups over the budget") {
  try {
    gl_enumerate(GaloisField(7), 4);
    FAIL("expected DeskScaleExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DeskScaleExceeded);
  }
  try {
    gl_enumerate(GaloisField(3), 3, EnumerationBudget{1000, 0});
    FAIL("expected DeskScaleExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DeskScaleExceeded);
  }
}

TEST_CASE("brute_similar examples") {
  GaloisField f(3);
  Rng rng(1);
  auto a = random_matrix(f, 2, 2, rng), b = random_matrix(f, 2, 2, rng);
  MatrixPair<GaloisField> p(a, b);
  auto w = brute_similar(p, p);
  REQUIRE(w.has_value());
  CHECK(*w == FM::identity(f, 2));
  MatrixPair<GaloisField> z(FM(f, 1, 1), FM(f, 1, 1)), o(FM::identity(f, 1), FM(f, 1, 1));
  CHECK_FALSE(brute_similar(z, o).has_value());
}

TEST_CASE("brute_congruent examples") {
  GaloisField f(3);
  auto t = MatrixTuple<GaloisField>({FM::from_ints(f, {{0, 1}, {-1, 0}})});
  auto w = brute_congruent(t, t);
  REQUIRE(w.has_value());
  CHECK(*w == FM::identity(f, 2));
  CHECK_FALSE(brute_congruent(MatrixTuple<GaloisField>({FM(f, 1, 1)}), MatrixTuple<GaloisField>({FM::identity(f, 1)}))
                  .has_value());
  // 1 and 2 = -1 are not congruent as 1x1 forms over F3 (2 is a non-square).
  CHECK_FALSE(brute_congruent(MatrixTuple<GaloisField>({FM::identity(f, 1)}),
                              MatrixTuple<GaloisField>({FM::from_ints(f, {{2}})}))
                  .has_value());
}

TEST_CASE("brute_orbit_iso examples") {
  GaloisField f(3);
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    auto t = MatrixTuple<GaloisField>({random_skew(f, 3, rng), random_skew(f, 3, rng)});
    auto moved = apply_substitution(apply_congruence(t, random_invertible(f, 3, rng)), random_invertible(f, 2, rng));
    auto w = brute_orbit_witness(t, moved);
    REQUIRE(w.has_value());
    REQUIRE(apply_substitution(apply_congruence(t, w->first), w->second) == moved);
  }
  auto k = FM::from_ints(f, {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
  auto l = FM::from_ints(f, {{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}});
  // Span dimension 1 against span dimension 2.
  CHECK_FALSE(brute_orbit_iso(MatrixTuple<GaloisField>({k, k}), MatrixTuple<GaloisField>({k, l})));
}
