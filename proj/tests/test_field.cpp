#include <catch_amalgamated.hpp>

#include "congru/field.hpp"
#include "congru/random.hpp"

using namespace congru;

namespace {

template <FiniteField F>
void check_axioms_exhaustively(const F& f) {
  const auto q = f.order();
  for (std::uint64_t i = 0; i < q; ++i) {
    const auto a = f.element_at(i);
    REQUIRE(f.equal(f.add(a, f.neg(a)), f.zero()));
    if (!f.is_zero(a)) REQUIRE(f.equal(f.mul(a, f.inv(a)), f.one()));
    for (std::uint64_t j = 0; j < q; ++j) {
      const auto b = f.element_at(j);
      REQUIRE(f.equal(f.add(a, b), f.add(b, a)));
      REQUIRE(f.equal(f.mul(a, b), f.mul(b, a)));
      for (std::uint64_t k = 0; k < q; ++k) {
        const auto c = f.element_at(k);
        REQUIRE(f.equal(f.add(f.add(a, b), c), f.add(a, f.add(b, c))));
        REQUIRE(f.equal(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
        REQUIRE(f.equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
      }
    }
  }
}

}  // namespace

TEST_CASE("prime field axioms hold exhaustively over GF(3)") { check_axioms_exhaustively(GaloisField(3)); }

TEST_CASE("extension field GF(9) = GF(3)[t]/(t^2+1) satisfies the axioms") {
  GaloisField f9(FieldSpec::finite(3, 2, {1, 0, 1}));
  REQUIRE(f9.order() == 9);
  check_axioms_exhaustively(f9);
  // t^2 = -1
  const auto t = f9.from_coefficients({0, 1});
  REQUIRE(f9.equal(f9.mul(t, t), f9.from_int(-1)));
}

TEST_CASE("extension arithmetic by polynomial reduction (no log tables)") {
  // GF(3^13) is above the table limit. Search for an irreducible trinomial modulus.
  std::optional<GaloisField> big;
  for (std::uint32_t b = 1; b < 3 && !big; ++b)
    for (std::uint32_t c = 1; c < 3 && !big; ++c) {
      std::vector<std::uint32_t> mod(14, 0);
      mod[0] = c;
      mod[1] = b;
      mod[13] = 1;
      try {
        big.emplace(FieldSpec::finite(3, 13, mod));
      } catch (const Error&) {
      }
    }
  REQUIRE(big.has_value());
  REQUIRE(big->order() > GaloisField::kTableLimit);
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    auto a = random_element(*big, rng), b = random_nonzero(*big, rng);
    REQUIRE(big->equal(big->div(big->mul(a, b), b), a));
    REQUIRE(big->equal(big->pow(a, mpz_class(big->order())), a));
  }
}

TEST_CASE("GF(49) log-table arithmetic satisfies Fermat") {
  GaloisField f49(FieldSpec::finite(7, 2, {3, 1, 1}));
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    auto a = random_element(f49, rng), b = random_nonzero(f49, rng);
    REQUIRE(f49.equal(f49.div(f49.mul(a, b), b), a));
    REQUIRE(f49.equal(f49.pow(a, mpz_class(49)), a));
  }
}

TEST_CASE("field specs are validated at construction") {
  auto kind_of = [](const FieldSpec& s) {
    try {
      GaloisField f(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(kind_of(FieldSpec::finite(2)) == ErrorKind::InvalidField);
  CHECK(kind_of(FieldSpec::finite(9)) == ErrorKind::InvalidField);
  // x^2 + 1 = (x + 2)(x + 3) over GF(5)
  CHECK(kind_of(FieldSpec::finite(5, 2, {1, 0, 1})) == ErrorKind::InvalidField);
  CHECK(kind_of(FieldSpec::finite(3, 2, {1, 0})) == ErrorKind::InvalidField);
  CHECK_NOTHROW(GaloisField(FieldSpec::finite(3, 2, {1, 0, 1})));
}

TEST_CASE("non-monic moduli are normalized") {
  GaloisField a(FieldSpec::finite(3, 2, {2, 0, 2}));
  GaloisField b(FieldSpec::finite(3, 2, {1, 0, 1}));
  REQUIRE(a == b);
}

TEST_CASE("rational arithmetic is exact and sampled axioms hold") {
  Rationals q;
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    auto a = random_element(q, rng), b = random_element(q, rng), c = random_element(q, rng);
    REQUIRE(q.mul(q.add(a, b), c) == q.add(q.mul(a, c), q.mul(b, c)));
    REQUIRE(q.mul(q.mul(a, b), c) == q.mul(a, q.mul(b, c)));
    if (!q.is_zero(a)) REQUIRE(q.mul(a, q.inv(a)) == q.one());
  }
  mpq_class half(1, 2);
  REQUIRE(q.to_string(q.add(half, half)) == "1");
  REQUIRE(q.compare(q.from_int(-1), half) == std::strong_ordering::less);
  REQUIRE(q.compare(q.from_int(-1), q.from_int(2)) == std::strong_ordering::less);
  REQUIRE(q.compare(q.from_int(1), q.from_int(-1)) == std::strong_ordering::less);
}

TEST_CASE("with_field dispatches on the runtime spec") {
  auto name = [](const auto& f) -> std::string {
    if constexpr (FiniteField<std::decay_t<decltype(f)>>)
      return "GF(" + std::to_string(f.order()) + ")";
    else
      return "Q";
  };
  REQUIRE(with_field(FieldSpec::rationals(), name) == "Q");
  REQUIRE(with_field(FieldSpec::finite(5), name) == "GF(5)");
}
